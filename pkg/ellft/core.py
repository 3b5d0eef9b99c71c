import importlib
import os
from typing import Any, Callable, Dict, Iterable, List, Optional, Union

from .catalog import Catalog, load_catalog
from .chartab import CharTable
from .checks.base_check import BaseCheck
from .families import Family, fourier_matrix_json, fourier_matrix_text
from .report import CHECK_ORDER, VerificationReport, merge_reports
from .utils.config import DEFAULT_CONFIG, Config, global_config
from .utils.error_handler import CheckConfigError
from .utils.logger import Logger, logger

# Options read by the group and character-table code through the global config.
ALGORITHM_KEYS = ('group_order_cap', 'dixon_seed', 'max_split_attempts')


class EllFT:
    """
    A single entry point to the verification toolkit.

    The façade owns the configuration, the loaded catalog and one instance of each check
    that has been requested. Checks are discovered under ``ellft/checks``: each check is a
    subpackage with a ``check.py`` module exposing a ``Check`` class.

    Attributes:
        config (Config): Defaults overlaid with the environment and the options passed in.
        catalog (Catalog): The loaded catalog.

    Example:
        >>> ft = EllFT(config={"debug": False})
        >>> report = ft.verify(["main", "zeta"], group="E7", unipotent="A4+A1")
        >>> report.exit_status()
        0
    """

    def __init__(self, catalog_path: Optional[str] = None, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the EllFT instance.

        Args:
            catalog_path (Optional[str]): Catalog file; overrides ``catalog_path`` of the config.
            config (Optional[Dict[str, Any]]): Options overlaying ``DEFAULT_CONFIG`` and the
                ``ELLFT_*`` environment.

        Raises:
            CatalogError: If the catalog cannot be loaded.
        """
        self.config = Config(DEFAULT_CONFIG)
        self.config.load_from_env()
        self.config.update(config or {})
        if catalog_path:
            self.config.set('catalog_path', catalog_path)
        Logger.set_debug_mode(self.config.get('debug', False))
        global_config.update({key: self.config.get(key) for key in ALGORITHM_KEYS})
        self.catalog: Catalog = load_catalog(self.config.get('catalog_path'))
        self._checks: Dict[str, BaseCheck] = {}

    def _initialize_check(self, name: str) -> BaseCheck:
        """Import ``checks/<name>/check.py`` and instantiate its ``Check`` class."""
        if name in self._checks:
            return self._checks[name]
        try:
            module = importlib.import_module(f'.checks.{name}.check', package=__package__)
            check_class = getattr(module, 'Check')
        except (ImportError, AttributeError) as e:
            raise CheckConfigError(f"Unknown or incorrectly implemented check: {name}. Error: {str(e)}",
                                   error_code="UNKNOWN_CHECK")
        check = check_class(self.catalog, self.config)
        self._checks[name] = check
        self._register_check_specific_methods(check)
        return check

    def _register_check_specific_methods(self, check: BaseCheck):
        """Expose methods marked with ``check_specific`` as attributes of the façade."""
        for method_name in check.get_check_specific_methods():
            setattr(self, method_name, self._create_proxy_method(check, method_name))

    @staticmethod
    def _create_proxy_method(check: BaseCheck, method_name: str) -> Callable:
        def proxy_method(*args, **kwargs):
            return getattr(check, method_name)(*args, **kwargs)

        return proxy_method

    def get_check(self, name: str) -> BaseCheck:
        return self._initialize_check(name)

    def run_check(self, name: str, **filters) -> VerificationReport:
        """
        Run one check.

        Args:
            name (str): ``counts``, ``main``, ``zeta`` or ``selfdual``.
            **filters: ``group``, ``unipotent`` and check-specific options such as ``names``.

        Returns:
            VerificationReport: The entries produced by the check.

        Raises:
            CheckConfigError: If the check does not exist.
            CatalogError: If a filter names an unknown group or unipotent class.
        """
        logger.debug(f"Running check {name} with {filters}")
        return self._initialize_check(name).run(**filters)

    def verify(self, checks: Union[str, Iterable[str], None] = None, **filters) -> VerificationReport:
        """
        Run several checks and merge their reports in the canonical order.

        Args:
            checks (Union[str, Iterable[str], None]): Check names, ``"all"`` or None for all.
            **filters: Passed to every check.

        Returns:
            VerificationReport: The merged, order-normalized report.
        """
        if checks is None or checks == 'all':
            names = list(CHECK_ORDER)
        elif isinstance(checks, str):
            names = [checks]
        else:
            names = list(checks)
        report = merge_reports(self.run_check(name, **filters) for name in names).normalized()
        s = report.summary
        logger.info(f"Verified {', '.join(names)}: pass={s['pass']} fail={s['fail']} partial={s['partial']}")
        return report

    def character_table(self, name: str) -> CharTable:
        """
        The labelled character table of a registry group.

        Args:
            name (str): A group of the catalog registry such as ``S4`` or ``C2xC4``.

        Returns:
            CharTable: The table with the catalog's character names.
        """
        return self.catalog.labelled_table(name)

    def fourier_matrix(self, gamma: str, twisted: bool = False, as_json: bool = False) -> Union[str, Dict]:
        """
        The Fourier matrix of the family built on ``gamma``.

        Args:
            gamma (str): Registry group of the family, e.g. ``S3``.
            twisted (bool): Use the Delta twist (C2 only).
            as_json (bool): Return the JSON form instead of text.
        """
        family: Family = self.catalog.prototype(gamma, twisted)
        return fourier_matrix_json(family) if as_json else fourier_matrix_text(family)

    def elliptic_pairs(self, group: str, unipotent: str) -> List[Dict[str, Any]]:
        """
        The elliptic pairs of a unipotent class with their virtual combinations.

        Returns:
            List[Dict[str, Any]]: One dictionary per pair, in catalog order.
        """
        rec = self.catalog.unipotent(group, unipotent)
        combos = {pair.label: str(vc) for pair, vc in self.catalog.virtual_combinations(rec)}
        out = []
        for pair in rec.pairs:
            out.append({
                'pair': pair.label,
                'dual': f"({pair.dual[0]},{pair.dual[1]})",
                'a_su': pair.a_su,
                'split': pair.split,
                'counted': pair.counted,
                'restriction': pair.key is not None and self.catalog.restriction(rec, pair.key) is not None,
                'combination': combos.get(pair.label),
            })
        return out

    @staticmethod
    def list_checks() -> List[str]:
        """
        List all available checks.

        Returns:
            List[str]: Check names in the canonical report order.
        """
        checks_dir = os.path.join(os.path.dirname(__file__), 'checks')
        found = [
            d for d in os.listdir(checks_dir)
            if os.path.isdir(os.path.join(checks_dir, d))
               and os.path.exists(os.path.join(checks_dir, d, 'check.py'))
        ]
        rank = {name: i for i, name in enumerate(CHECK_ORDER)}
        return sorted(found, key=lambda n: (rank.get(n, len(rank)), n))

    def set_debug_mode(self, debug: bool) -> None:
        """
        Set the debug mode for logging.

        Args:
            debug (bool): Whether to enable debug mode.
        """
        Logger.set_debug_mode(debug)
        self.config.set('debug', debug)
