#!/usr/bin/env python3
"""
Nilsoliton Checker - exact soliton tests for nilpotent Lie algebras
Main CLI entry point
"""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from nilsoliton_checker.cli import main


if __name__ == "__main__":
    sys.exit(main())
