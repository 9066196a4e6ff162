"""
Logging utilities for the Weil zeta toolkit.

This module provides centralized structlog configuration and a small
enumeration monitor: point counting is the dominant cost of every run, so the
number of points walked per stage is tracked and can be summarized.
"""

import logging
import sys
from collections import defaultdict
from datetime import datetime
from typing import Any, Dict

import structlog

from utils.config import get_config

_configured = False

# Global enumeration usage tracker
_enumeration_usage: Dict[str, Any] = {
    "total_points": 0,
    "stage_usage": defaultdict(int),
    "session_start": datetime.now().isoformat(),
}


def _configure() -> None:
    global _configured
    config = get_config()
    level = logging.getLevelName(config.log_level)
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        # resolved per call so a redirected stderr is honoured
        logger_factory=lambda *args: structlog.PrintLogger(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
    _configured = True


def get_logger(name: str) -> structlog.typing.FilteringBoundLogger:
    """
    Get a configured logger for the given name.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Bound structlog logger; output goes to stderr so reports on stdout stay clean
    """
    if not _configured:
        _configure()
    return structlog.get_logger(name).bind(logger=name)


def set_log_level(level: str) -> None:
    """Reconfigure the level filter, e.g. for ``--verbose``."""
    get_config().log_level = level.upper()
    _configure()


def log_enumeration(stage: str, points: int) -> None:
    """
    Record enumerated points for cost monitoring.

    Args:
        stage: Name of the enumerating operation
        points: Number of points walked
    """
    if not get_config().enable_enumeration_monitoring:
        return
    _enumeration_usage["total_points"] += points
    _enumeration_usage["stage_usage"][stage] += points


def get_enumeration_summary() -> Dict[str, Any]:
    """
    Get current enumeration usage summary.

    Returns:
        Dictionary with enumeration statistics
    """
    return {
        "total_points": _enumeration_usage["total_points"],
        "stage_usage": dict(sorted(_enumeration_usage["stage_usage"].items())),
        "session_start": _enumeration_usage["session_start"],
    }


def reset_enumeration_usage() -> None:
    """Reset enumeration usage tracking."""
    global _enumeration_usage
    _enumeration_usage = {
        "total_points": 0,
        "stage_usage": defaultdict(int),
        "session_start": datetime.now().isoformat(),
    }
