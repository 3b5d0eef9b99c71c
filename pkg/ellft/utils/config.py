import json
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv


class Config:
    """
    Configuration store for the verification toolkit.

    Supports dictionary-style access and JSON file I/O. Values not set
    explicitly fall back to the defaults the instance was created with.

    Example:
        >>> config = Config({"debug": True, "group_order_cap": 500})
        >>> config.get("group_order_cap")
        500
        >>> config["debug"] = False
        >>> config.as_dict
        {'debug': False, 'group_order_cap': 500}
    """

    def __init__(self, initial_config: Optional[Dict[str, Any]] = None):
        """
        Initialize a new Config instance.

        Args:
            initial_config (Optional[Dict[str, Any]]): Initial configuration dictionary. Defaults to None.
        """
        self._config: Dict[str, Any] = dict(initial_config or {})

    def get(self, key: str, default: Any = None) -> Any:
        """
        Retrieve a configuration value.

        Args:
            key (str): The configuration key to retrieve.
            default (Any): Returned when the key is not set.

        Returns:
            Any: The stored value or ``default``.
        """
        return self._config.get(key, default)

    def set(self, key: str, value: Any) -> None:
        self._config[key] = value

    def update(self, new_config: Dict[str, Any]) -> None:
        self._config.update(new_config)

    def __getitem__(self, key: str) -> Any:
        return self._config[key]

    def __setitem__(self, key: str, value: Any) -> None:
        self._config[key] = value

    def __contains__(self, key: str) -> bool:
        return key in self._config

    def __repr__(self) -> str:
        return f"Config({self._config})"

    @property
    def as_dict(self) -> Dict[str, Any]:
        """
        Return a copy of the configuration as a dictionary.

        Returns:
            Dict[str, Any]: A copy of the internal configuration dictionary.
        """
        return self._config.copy()

    def load_from_file(self, file_path: str) -> None:
        """
        Load configuration from a JSON file.

        Args:
            file_path (str): The path to the JSON file to load.

        Raises:
            json.JSONDecodeError: If the file contains invalid JSON.
            IOError: If there's an error reading the file.
        """
        with open(file_path, 'r') as f:
            self._config.update(json.load(f))

    def load_from_env(self) -> None:
        """
        Apply ``ELLFT_*`` environment overrides, reading a ``.env`` file first if present.

        ``ELLFT_CATALOG`` sets ``catalog_path``; ``ELLFT_DEBUG`` ("1", "true", "yes") sets ``debug``;
        ``ELLFT_ALLOW_PARTIAL`` sets ``allow_partial`` the same way.
        """
        load_dotenv()
        catalog = os.environ.get('ELLFT_CATALOG')
        if catalog:
            self._config['catalog_path'] = catalog
        debug = os.environ.get('ELLFT_DEBUG')
        if debug is not None:
            self._config['debug'] = debug.strip().lower() in ('1', 'true', 'yes')
        allow_partial = os.environ.get('ELLFT_ALLOW_PARTIAL')
        if allow_partial is not None:
            self._config['allow_partial'] = allow_partial.strip().lower() in ('1', 'true', 'yes')


DEFAULT_CONFIG: Dict[str, Any] = {
    'debug': False,
    'group_order_cap': 10000,
    'dixon_seed': 20240601,
    'max_split_attempts': 16,
    'allow_partial': True,
    'catalog_path': None,
}

global_config: Config = Config(DEFAULT_CONFIG)
