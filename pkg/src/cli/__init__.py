"""
CLI package.

Input documents, pipeline orchestration and versioned reports.
"""

from .input_parser import InputDocument, parse_input, parse_variety
from .orchestrator import ZetaOrchestrator, execute_pipeline, run_abgrp
from .reports import REPORT_VERSION, Report, emit_json, load_json

__all__ = [
    "InputDocument",
    "REPORT_VERSION",
    "Report",
    "ZetaOrchestrator",
    "emit_json",
    "execute_pipeline",
    "load_json",
    "parse_input",
    "parse_variety",
    "run_abgrp",
]
