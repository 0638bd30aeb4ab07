#!/usr/bin/env python3
"""Runner for the scones command-line tool.

Usage:
    python scripts/scones.py --help
    python scripts/scones.py baseline --genotypes toy/genotypes.tsv \\
        --phenotype toy/phenotype.tsv --map toy/map.tsv
"""
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from scones_cli.main import main


if __name__ == "__main__":
    sys.exit(main())
