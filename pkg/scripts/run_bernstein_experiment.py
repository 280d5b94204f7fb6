#!/usr/bin/env python3
"""Run the empirical multiplier inequality experiment and the cutoff-kernel
norm table (bernstein.csv, km_norm.csv and JSON reports).

Usage: python3 scripts/run_bernstein_experiment.py [--q 2] [--gamma 2] [--r 2,inf]
"""

import sys

from csphere.cli import main

if __name__ == "__main__":
    sys.exit(main(["bernstein"] + sys.argv[1:]))
