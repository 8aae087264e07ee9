#!/usr/bin/env python
"""
Main entry point for the Ignatiev frame toolkit.

Usage:
    python run.py eval "D1 T"
    python run.py entails "D0 D0 T" "D0 T"
    python run.py sigma 1 ";1"
    python run.py verify --suite glb --progress
"""

import sys
from pathlib import Path

from dotenv import load_dotenv

# Add the repository root to path
sys.path.insert(0, str(Path(__file__).parent))

# Load environment variables before settings are read
load_dotenv()

from ignatiev_frame.src.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
