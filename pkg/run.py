#!/usr/bin/env python3
"""
bandrec - Simple Runner
python run.py <subcommand> --config <file.json> [--out DIR] [--seed N] [--quiet]
"""
import sys

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
