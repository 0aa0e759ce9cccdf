"""Regenerate the golden reports and their index.

Usage: python3 scripts/regen_golden.py [case-id ...]
"""

import sys

from pretorsion.golden import regenerate

if __name__ == "__main__":
    for case in regenerate(ids=set(sys.argv[1:]) or None):
        print(f"{case.id:22s} {case.digest[:16]}  {' '.join(case.argv)}")
