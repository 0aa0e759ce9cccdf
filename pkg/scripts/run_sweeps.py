"""Run the verification sweeps and print one line per sweep.

Usage: python3 scripts/run_sweeps.py [enumeration comparable serre stable stability invariants]
"""

import sys

from pretorsion import sweeps

ORDER = ["enumeration", "comparable", "serre", "stable", "stability", "invariants"]


def main(names):
    built = []
    ok = True
    for name in names:
        if name == "stable":
            res = sweeps.sweep_stable(theories=built or None)
        else:
            res = getattr(sweeps, f"sweep_{name}")()
            built.extend(res.theories)
        print(res.line(), flush=True)
        for f in res.failures[:10]:
            print("   ", f)
        ok &= res.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:] or ORDER))
