#!/usr/bin/env python3
"""Run the kernel identity suite and write verify_report.json.

Usage: python3 scripts/run_identity_checks.py [--q 2,3,4] [--lmax 20] [--out-dir DIR]
"""

import sys

from csphere.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify"] + sys.argv[1:]))
