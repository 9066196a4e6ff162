"""
Utility modules for the Weil zeta toolkit.

This package contains common utilities used across the toolkit modules.
"""

from .config import Config, get_config, validate_config
from .logging import get_logger, log_enumeration, get_enumeration_summary, reset_enumeration_usage
from .exceptions import ZetaToolError, InputError, SizeExceeded, as_tool_error
from .rationals import ExactRational

__all__ = [
    "Config",
    "get_config",
    "validate_config",
    "get_logger",
    "log_enumeration",
    "get_enumeration_summary",
    "reset_enumeration_usage",
    "ZetaToolError",
    "InputError",
    "SizeExceeded",
    "as_tool_error",
    "ExactRational",
]
