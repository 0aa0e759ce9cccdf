"""Exhaustive machine checks for torsion and pretorsion theories.

Backends (all over finite data, so every statement is checked by enumeration):

* :mod:`pretorsion.typea`: modules over the linearly oriented A_n quiver;
* :mod:`pretorsion.abgrp`: finite abelian groups of bounded order;
* :mod:`pretorsion.chaincx`: bounded chain complexes over GF(p).
"""

__version__ = "0.1.0"

from .abcat import ZERO, AbelianCategory, BoundExceeded, Morphism, Obj, TheoremViolation
from .torsion import ClassSpec, TorsionPair

__all__ = [
    "ZERO",
    "AbelianCategory",
    "BoundExceeded",
    "ClassSpec",
    "Morphism",
    "Obj",
    "TheoremViolation",
    "TorsionPair",
    "__version__",
]
