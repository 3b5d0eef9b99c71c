from typing import Optional

from ...catalog import validate_tables
from ...report import VerificationReport
from ..base_check import BaseCheck


class Check(BaseCheck):
    """Pair counts and structural claims of the tables of elliptic pairs."""

    check_id = 'counts'

    def __init__(self, catalog, config=None):
        super().__init__(catalog, config)
        self._log_info("Counts check initialized")

    def run(self, group: Optional[str] = None, unipotent: Optional[str] = None, **kwargs) -> VerificationReport:
        report = validate_tables(self.catalog, group, unipotent)
        self._log_summary(report)
        return report
