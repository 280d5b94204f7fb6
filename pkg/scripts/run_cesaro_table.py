#!/usr/bin/env python3
"""Produce the Cesaro-mean L1 growth table (cesaro.csv + cesaro_report.json).

Usage: python3 scripts/run_cesaro_table.py [--q 2] [--delta 0,1,2] [--n 8:128:x2]
"""

import sys

from csphere.cli import main

if __name__ == "__main__":
    sys.exit(main(["cesaro"] + sys.argv[1:]))
