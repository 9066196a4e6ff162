#!/usr/bin/env python3
"""
Weil Zeta Toolkit - Main Execution Script

Entry point for the command-line pipeline: point counts, zeta functions,
special values and their verification, plus abelian-group utilities.

Examples:
  python run_pipeline.py zeta --input pipeline_test/inputs/elliptic_f5.zeta
  python run_pipeline.py verify --input pipeline_test/inputs/p2_f2.zeta --r 1 --json
  python run_pipeline.py abgrp selftest --seed 7
"""

import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent / "src"))

from cli.command_line import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
