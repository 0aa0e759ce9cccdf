"""Bounded chain complexes over GF(p).

A complex ``X_hi -> ... -> X_lo`` with differentials ``d_k: X_k -> X_{k-1}``
is a representation of the linear quiver on ``hi - lo + 1`` vertices in
which every path of length two acts as zero.  Degree ``d`` sits at vertex
position ``hi - d + 1``, so arrow ``v`` (0-based) carries ``d_{hi - v}``.
The indecomposables are the stalks ``S^k`` (one copy of the field in degree
k) and the discs ``D^k`` (identity ``X_k -> X_{k-1}``).

Classes, for a degree n in the window:

* ``T_n``: complexes with ``X_k = 0`` for all ``k <= n``;
* ``F'_n``: complexes with support in degrees ``<= n+1`` and ``d_{n+1}``
  injective.  This is the class that pairs with ``T_n`` as a torsion pair;
* the literal class ``F_n``: support ``<= n`` with ``d_n`` injective, which
  equals ``F'_{n-1}``.  ``(T_n, F_n)`` is *not* a torsion pair (the disc
  ``D^{n+1}`` lies in neither class and has no torsion subobject whose
  quotient lies in ``F_n``); reports carry both labelings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .abcat import BoundExceeded, Morphism, Obj, TheoremViolation
from .exactla import PrimeField
from .linrep import LinearQuiverCategory, QuiverRep
from .pretor import ZExactSeq
from .torsion import ClassSpec, is_torsion_pair

MAX_WINDOW = 8
MAX_DIM = 4


class CxInd(NamedTuple):
    """Indecomposable complex: kind ``"S"`` (stalk) or ``"D"`` (disc), top degree k."""

    kind: str
    k: int

    def __str__(self) -> str:
        return f"{self.kind}^{self.k}"


# ------------------------------------------------------------------ complexes
@dataclass(frozen=True, eq=False)
class Complex:
    """``dims[i]`` is dim X_{lo+i}; ``diffs[k]`` is d_k for lo < k <= hi."""

    lo: int
    hi: int
    dims: tuple[int, ...]
    diffs: dict
    p: int = 2

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("empty degree window")
        if len(self.dims) != self.hi - self.lo + 1:
            raise ValueError("dims must cover the window")
        F = PrimeField(self.p)
        for k in range(self.lo + 1, self.hi + 1):
            d = np.asarray(self.diffs.get(k, np.zeros((self.dim(k - 1), self.dim(k)))), dtype=np.int64) % self.p
            if d.shape != (self.dim(k - 1), self.dim(k)):
                raise ValueError(f"d_{k} has shape {d.shape}, expected {(self.dim(k - 1), self.dim(k))}")
            self.diffs[k] = d
        for k in range(self.lo + 2, self.hi + 1):
            if np.any(F.matmul(self.diffs[k - 1], self.diffs[k])):
                raise ValueError(f"d_{k - 1} d_{k} != 0")

    def dim(self, k: int) -> int:
        return self.dims[k - self.lo] if self.lo <= k <= self.hi else 0

    def d(self, k: int) -> np.ndarray:
        """d_k, with zero matrices at the window edges."""
        if self.lo < k <= self.hi:
            return self.diffs[k]
        return np.zeros((self.dim(k - 1), self.dim(k)), dtype=np.int64)

    @property
    def support(self) -> list[int]:
        return [k for k in range(self.lo, self.hi + 1) if self.dim(k)]

    def to_rep(self) -> QuiverRep:
        dims = tuple(self.dim(self.hi - v) for v in range(self.hi - self.lo + 1))
        maps = tuple(self.diffs[self.hi - v] for v in range(self.hi - self.lo))
        return QuiverRep(dims, maps)

    @classmethod
    def from_rep(cls, rep: QuiverRep, lo: int, hi: int, p: int = 2) -> "Complex":
        dims = tuple(rep.dims[hi - k] for k in range(lo, hi + 1))
        diffs = {hi - v: rep.maps[v] for v in range(hi - lo)}
        return cls(lo, hi, dims, diffs, p)

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "dims": list(self.dims),
            "diffs": [self.diffs[k].tolist() for k in range(self.lo + 1, self.hi + 1)],
        }

    @classmethod
    def from_json(cls, d: dict, p: int = 2) -> "Complex":
        lo, hi = int(d["lo"]), int(d["hi"])
        dims = tuple(int(x) for x in d["dims"])
        raw = d.get("diffs", [])
        diffs = {}
        for i, k in enumerate(range(lo + 1, hi + 1)):
            shape = (dims[k - 1 - lo], dims[k - lo])
            m = raw[i] if i < len(raw) else []
            diffs[k] = np.array(m, dtype=np.int64).reshape(shape)
        return cls(lo, hi, dims, diffs, p)


def _check_degree(X: Complex, n: int) -> None:
    if not X.lo <= n <= X.hi:
        raise ValueError(f"degree {n} outside the window [{X.lo}, {X.hi}]")


def in_Tn(n: int, X: Complex) -> bool:
    """X_k = 0 for every k <= n."""
    _check_degree(X, n)
    return all(X.dim(k) == 0 for k in range(X.lo, n + 1))


def in_Fmono(n: int, X: Complex) -> bool:
    """The literal torsion-free condition: X_k = 0 for k > n and d_n injective."""
    _check_degree(X, n)
    if any(X.dim(k) for k in range(n + 1, X.hi + 1)):
        return False
    d = X.d(n)
    return d.shape[1] == 0 or PrimeField(X.p).rank(d) == d.shape[1]


def torsion_part(n: int, X: Complex) -> tuple[Complex, dict]:
    """Largest subcomplex in T_n: (..., X_{n+2}, ker d_{n+1}, 0, ...).

    Returns the subcomplex and its inclusion as a dict degree -> matrix.
    """
    _check_degree(X, n)
    F = PrimeField(X.p)
    bases = {}
    for k in range(X.lo, X.hi + 1):
        if k >= n + 2:
            bases[k] = np.eye(X.dim(k), dtype=np.int64)
        elif k == n + 1:
            bases[k] = F.nullspace(X.d(k)).basis.T.copy() if X.dim(k) else np.zeros((0, 0), dtype=np.int64)
        else:
            bases[k] = np.zeros((X.dim(k), 0), dtype=np.int64)
    dims = tuple(bases[k].shape[1] for k in range(X.lo, X.hi + 1))
    diffs = {}
    for k in range(X.lo + 1, X.hi + 1):
        src, tgt = bases[k], bases[k - 1]
        if src.shape[1] == 0 or tgt.shape[1] == 0:
            diffs[k] = np.zeros((tgt.shape[1], src.shape[1]), dtype=np.int64)
            continue
        sol = F.solve(tgt, F.matmul(X.d(k), src))
        if sol is None:
            raise TheoremViolation("torsion part is not a subcomplex")
        diffs[k] = sol
    return Complex(X.lo, X.hi, dims, diffs, X.p), bases


# --------------------------------------------------------------------- backend
class ChainComplexes(LinearQuiverCategory):
    """Complexes in degrees [lo, hi] over GF(p), as an abelian category backend.

    The universe is the zero complex, the indecomposables, and ``samples``
    random complexes (each degree of dimension at most ``dim_cap``) drawn
    with a fixed seed and identified with their decomposition.
    """

    name = "chaincx"

    def __init__(self, lo: int = 0, hi: int = 5, p: int = 2, dim_cap: int = 3, samples: int = 200, seed: int = 0):
        if hi - lo > MAX_WINDOW:
            raise BoundExceeded(f"degree window of width {hi - lo} exceeds {MAX_WINDOW}")
        if hi - lo < 1:
            raise ValueError("window needs at least two degrees")
        if not 0 <= dim_cap <= MAX_DIM:
            raise BoundExceeded(f"dimension cap {dim_cap} exceeds {MAX_DIM}")
        self.lo, self.hi = lo, hi
        self.dim_cap = dim_cap
        self.samples = samples
        self.seed = seed
        super().__init__(hi - lo + 1, p, max_len=2)

    # ------------------------------------------------------ id <-> interval
    def interval(self, ind) -> tuple[int, int]:
        a = self.hi - ind.k + 1
        return (a, a) if ind.kind == "S" else (a, a + 1)

    def from_interval(self, a: int, b: int) -> CxInd:
        k = self.hi - a + 1
        return CxInd("S" if a == b else "D", k)

    def label(self, ind) -> str:
        return str(CxInd(*ind))

    def config(self) -> dict:
        return {
            "backend": self.name,
            "window": [self.lo, self.hi],
            "field": f"GF({self.p})",
            "dim_cap": self.dim_cap,
            "samples": self.samples,
            "seed": self.seed,
        }

    # -------------------------------------------------------------- objects
    def complex_of(self, X: Obj) -> Complex:
        return Complex.from_rep(self.to_rep(X), self.lo, self.hi, self.p)

    def obj_of(self, C: Complex) -> Obj:
        if (C.lo, C.hi) != (self.lo, self.hi) or C.p != self.p:
            raise ValueError("complex lives in a different window or field")
        return self.iso_type(C.to_rep())

    def random_complex(self, rng: np.random.Generator) -> Complex:
        """d_k = B R with B a basis of ker d_{k-1}, so d d = 0 by construction."""
        F = self.F
        dims = tuple(int(x) for x in rng.integers(0, self.dim_cap + 1, size=self.hi - self.lo + 1))
        diffs = {}
        prev = None
        for k in range(self.lo + 1, self.hi + 1):
            dk, dk1 = dims[k - self.lo], dims[k - 1 - self.lo]
            if prev is None or dk1 == 0:
                B = np.eye(dk1, dtype=np.int64)
            else:
                B = F.nullspace(prev).basis.T.copy()
            r = B.shape[1]
            R = F.random_matrix(rng, r, dk)
            diffs[k] = F.matmul(B, R) if r and dk else np.zeros((dk1, dk), dtype=np.int64)
            prev = diffs[k]
        return Complex(self.lo, self.hi, dims, diffs, self.p)

    def samples_list(self) -> list[Complex]:
        key = ("samples",)
        if key not in self._memo:
            rng = np.random.default_rng(self.seed)
            self._memo[key] = [self.random_complex(rng) for _ in range(self.samples)]
        return list(self._memo[key])

    def universe(self) -> list[Obj]:
        key = ("universe",)
        if key not in self._memo:
            objs = {Obj()}
            objs.update(Obj.of(i) for i in self._inds)
            objs.update(self.obj_of(c) for c in self.samples_list())
            self._memo[key] = sorted(objs, key=lambda X: (len(X), X.summands))
        return list(self._memo[key])

    # -------------------------------------------------------------- classes
    def _degrees(self, n: int) -> None:
        if not self.lo <= n <= self.hi:
            raise ValueError(f"degree {n} outside the window [{self.lo}, {self.hi}]")

    def T(self, n: int) -> ClassSpec:
        """T_n: X_k = 0 for k <= n."""
        self._degrees(n)
        return ClassSpec(frozenset(i for i in self._inds if self._bottom(i) >= n + 1))

    def F_mono(self, n: int) -> ClassSpec:
        """F'_n: support <= n+1 and d_{n+1} injective (pairs with T_n)."""
        self._degrees(n)
        return ClassSpec(
            frozenset(i for i in self._inds if (i.kind == "S" and i.k <= n) or (i.kind == "D" and i.k <= n + 1))
        )

    def F_literal(self, n: int) -> ClassSpec:
        """The literal class: support <= n and d_n injective."""
        self._degrees(n)
        return ClassSpec(
            frozenset(i for i in self._inds if (i.kind == "S" and i.k <= n - 1) or (i.kind == "D" and i.k <= n))
        )

    def gap_class(self, m: int, n: int) -> ClassSpec:
        """T_m intersected with F'_n: support in [m+1, n+1] with d_{n+1} injective."""
        return self.T(m) & self.F_mono(n)

    @staticmethod
    def _bottom(ind: CxInd) -> int:
        return ind.k if ind.kind == "S" else ind.k - 1

    # ------------------------------------------------------------ sequences
    def torsion_morphism(self, n: int, X: Obj) -> tuple[Obj, Morphism]:
        """The T_n-torsion subobject of X as a morphism into X."""
        return self.trace(X, sorted(self.T(n).members))

    def pretorsion_seq(self, m: int, n: int, X: Obj) -> ZExactSeq:
        """T_m-torsion part of X followed by the quotient of X by its T_n-torsion part."""
        if m > n:
            raise ValueError(f"need m <= n, got m={m}, n={n}")
        _, eps = self.torsion_morphism(m, X)
        _, sub_n = self.torsion_morphism(n, X)
        _, eta = self.cokernel(sub_n)
        return ZExactSeq(eps, eta)


def index_convention_report(cat: ChainComplexes, n: int) -> dict:
    """Checker verdicts for the implemented and the literal pairing at degree n."""
    U = cat.universe()
    impl = is_torsion_pair(cat, cat.T(n), cat.F_mono(n), U)
    lit = is_torsion_pair(cat, cat.T(n), cat.F_literal(n), U, stop_early=True)
    witness = None
    if lit.sequence_failures:
        X, A, Q = lit.sequence_failures[0]
        witness = {"X": cat.obj_label(X), "torsion_part": cat.obj_label(A), "quotient": cat.obj_label(Q)}
    return {
        "n": n,
        "implemented": {"T": cat.T(n).labels(cat), "F": cat.F_mono(n).labels(cat), "torsion_pair": impl.ok},
        "literal": {
            "T": cat.T(n).labels(cat),
            "F": cat.F_literal(n).labels(cat),
            "torsion_pair": lit.ok,
            "first_failure": witness,
        },
    }


def seq_complexes(cat: ChainComplexes, seq: ZExactSeq) -> dict:
    return {
        "TX": cat.complex_of(seq.TX).to_json(),
        "X": cat.complex_of(seq.X).to_json(),
        "FX": cat.complex_of(seq.FX).to_json(),
    }


def members_as_complexes(cat: ChainComplexes, C: ClassSpec) -> list[Complex]:
    return [cat.complex_of(Obj.of(i)) for i in sorted(C.members)]
