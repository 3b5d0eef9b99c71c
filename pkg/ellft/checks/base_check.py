from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Union

from ..catalog import Catalog
from ..report import VerificationReport
from ..utils.config import Config, global_config
from ..utils.logger import logger


def check_specific(func):
    func._check_specific = True
    return func


class BaseCheck(ABC):
    """
    A verification over the loaded catalog.

    Concrete checks live in ``checks/<name>/check.py`` as a class named ``Check`` and
    report through a :class:`VerificationReport`; a failing identity is a report entry,
    never an exception.
    """

    check_id: str = ''

    def __init__(self, catalog: Catalog, config: Optional[Union[Config, Dict[str, Any]]] = None):
        self.catalog = catalog
        if config is None:
            config = global_config
        self.config = config if isinstance(config, Config) else Config(config)

    @abstractmethod
    def run(self, group: Optional[str] = None, unipotent: Optional[str] = None, **kwargs) -> VerificationReport:
        """Run the check on the records selected by ``group`` and ``unipotent``."""
        pass

    @classmethod
    def get_check_specific_methods(cls) -> List[str]:
        return [name for name, method in cls.__dict__.items() if getattr(method, '_check_specific', False)]

    def _log_debug(self, message: str):
        """Log a debug message"""
        logger.debug(message)

    def _log_info(self, message: str):
        """Log an info message"""
        logger.info(message)

    def _log_warning(self, message: str):
        logger.warning(message)

    def _log_error(self, message: str):
        """Log an error message"""
        logger.error(message)

    def _log_summary(self, report: VerificationReport) -> None:
        s = report.summary
        self._log_info(f"{self.check_id}: {len(report)} entries, "
                       f"pass={s['pass']} fail={s['fail']} partial={s['partial']}")
