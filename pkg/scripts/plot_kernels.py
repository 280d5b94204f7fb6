#!/usr/bin/env python3
"""Dump kernel values on a (theta, phi) grid as CSV on stdout, for plotting.

Examples:
    python3 scripts/plot_kernels.py --name cesaro --q 2 --n 16 --delta 1 --grid 64x64
    python3 scripts/plot_kernels.py --name h --q 3 --l 5 --theta 0.4 --phi 1.2
"""

import sys

from csphere.cli import main

if __name__ == "__main__":
    sys.exit(main(["kernel"] + sys.argv[1:]))
