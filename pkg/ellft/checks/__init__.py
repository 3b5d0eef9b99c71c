from .base_check import BaseCheck, check_specific

__all__ = ['BaseCheck', 'check_specific']
