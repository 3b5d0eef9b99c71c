from ellft.core import EllFT
from ellft.catalog import Catalog, expand_named, expand_restriction, load_catalog, validate_tables
from ellft.cyclo import CycNum, format_coeff, parse_coeff
from ellft.groups import FinGroup
from ellft.report import VerificationReport

__all__ = ['EllFT', 'Catalog', 'CycNum', 'FinGroup', 'VerificationReport', 'expand_named',
           'expand_restriction', 'format_coeff', 'load_catalog', 'parse_coeff', 'validate_tables']
