import json
from typing import Any, Dict, List, Optional


class EllFTError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, error_code: Optional[str] = None,
                 details: Optional[Dict[str, Any]] = None):
        """
        Initialize an EllFTError.

        Args:
            message (str): The error message.
            error_code (Optional[str]): A code identifying the error type.
            details (Optional[Dict[str, Any]]): Additional details about the error.
        """
        self.message: str = message
        self.error_code: Optional[str] = error_code
        self.details: Dict[str, Any] = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        """
        Return a string representation of the error.

        Returns:
            str: A formatted string containing error details.
        """
        error_parts: List[str] = [f"Error {self.error_code}: {self.message}" if self.error_code else self.message]
        if self.details:
            error_parts.append(f"Details: {self.details}")
        return " | ".join(error_parts)


class CycloError(EllFTError):
    """Raised for invalid cyclotomic arithmetic (bad root order, inverting zero)."""
    pass


class CoeffParseError(CycloError):
    """Raised when a coefficient expression does not conform to the grammar."""

    def __init__(self, message: str, expr: str = "", position: int = 0, **kwargs: Any):
        """
        Initialize a CoeffParseError.

        Args:
            message (str): The error message.
            expr (str): The expression being parsed.
            position (int): Zero-based offset of the offending character.
            **kwargs: Additional keyword arguments to pass to the parent constructor.
        """
        kwargs.setdefault('error_code', 'COEFF_SYNTAX')
        super().__init__(message, **kwargs)
        self.expr: str = expr
        self.position: int = position

    def __str__(self) -> str:
        base_str: str = super().__str__()
        return f"{base_str} | at position {self.position} in {self.expr!r}"


class GroupError(EllFTError):
    """Raised for invalid group data: foreign elements, unknown or ambiguous labels."""
    pass


class GroupCapError(GroupError):
    """Raised when a generated group exceeds the configured order cap."""
    pass


class CharacterTableError(EllFTError):
    """Raised when a character table cannot be built or a fingerprint does not match exactly one row."""
    pass


class FamilyError(EllFTError):
    """Raised for invalid family construction or mixing vectors of different families."""
    pass


class EllipticError(EllFTError):
    """Raised for invalid torus actions."""
    pass


class CatalogError(EllFTError):
    """Raised when the catalog violates the schema or holds an unresolved reference."""

    def __init__(self, message: str, path: str = "", reason: str = "", **kwargs: Any):
        kwargs.setdefault('error_code', 'CATALOG')
        super().__init__(message, **kwargs)
        self.path: str = path
        self.reason: str = reason or message

    def __str__(self) -> str:
        base_str: str = super().__str__()
        if self.path:
            return f"{base_str} | Path: {self.path}"
        return base_str


class CheckConfigError(EllFTError):
    """Raised when a check name or check option is not recognised."""
    pass


def handle_error(error: Exception, path: str = "") -> EllFTError:
    """
    Convert foreign exceptions raised while reading catalog data into EllFTError types.

    Args:
        error (Exception): The original exception.
        path (str): The catalog location being processed, if known.

    Returns:
        EllFTError: An instance of a custom EllFTError subclass.
    """
    if isinstance(error, EllFTError):
        return error
    error_message: str = str(error)
    if isinstance(error, json.JSONDecodeError):
        return CatalogError(f"Invalid JSON: {error_message}", path=path,
                            reason="json", error_code="CATALOG_JSON")
    if isinstance(error, OSError):
        return CatalogError(f"Cannot read catalog: {error_message}", path=path,
                            reason="io", error_code="CATALOG_IO")
    if isinstance(error, (KeyError, TypeError, ValueError)):
        return CatalogError(f"Schema violation: {error_message}", path=path,
                            reason="schema", error_code="CATALOG_SCHEMA")
    return EllFTError(f"Unexpected error: {error_message}", error_code="UNKNOWN_ERROR")
