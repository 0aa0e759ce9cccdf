"""Count torsion classes of kA_n by closure search and compare with Catalan numbers.

Usage: python3 scripts/catalan_closure.py [max_n]
"""

import sys
import time
from math import comb

from pretorsion.typea import torsion_classes_by_closure

if __name__ == "__main__":
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    for n in range(1, top + 1):
        t0 = time.perf_counter()
        count = len(torsion_classes_by_closure(n))
        catalan = comb(2 * n + 2, n + 1) // (n + 2)
        print(f"n={n}: {count} torsion classes (Catalan {catalan}) in {time.perf_counter() - t0:.2f} s")
