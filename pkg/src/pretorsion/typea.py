"""mod(kA_n) for the linear quiver 1 -> 2 -> ... -> n.

Indecomposables are interval modules ``[a, b]`` with top ``a`` and socle
``b`` (the stack ``a, a+1, ..., b`` when drawn top to bottom).  The closed-form
interval calculus below (hom, ext, subobjects, quotients, traces) is the fast
path; the :class:`~pretorsion.linrep.LinearQuiverCategory` machinery it sits
on recomputes the same quantities from matrices and serves as the oracle.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .abcat import Obj
from .linrep import LinearQuiverCategory
from .torsion import ClassSpec


class Interval(NamedTuple):
    a: int
    b: int

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"

    @property
    def stack(self) -> str:
        """Digit-stack label, e.g. ``12`` for [1,2] (unambiguous for n <= 9)."""
        return "".join(str(k) for k in range(self.a, self.b + 1))

    @property
    def length(self) -> int:
        return self.b - self.a + 1


_IV_RE = re.compile(r"^\[\s*(\d+)\s*,\s*(\d+)\s*\]$")
_DOTS_RE = re.compile(r"^(\d+)\.\.(\d+)$")


def parse_interval(text: str, n: int | None = None) -> Interval:
    """Parse ``[a,b]``, ``a..b`` or a digit stack such as ``12`` / ``2``."""
    t = text.strip()
    m = _IV_RE.match(t) or _DOTS_RE.match(t)
    if m:
        iv = Interval(int(m.group(1)), int(m.group(2)))
    elif t.isdigit():
        digits = [int(ch) for ch in t]
        if any(y != x + 1 for x, y in zip(digits, digits[1:])):
            raise ValueError(f"{text!r} is not a consecutive digit stack")
        iv = Interval(digits[0], digits[-1])
    else:
        raise ValueError(f"cannot parse interval {text!r}")
    if not 1 <= iv.a <= iv.b or (n is not None and iv.b > n):
        raise ValueError(f"interval {iv} out of range for n={n}")
    return iv


# ------------------------------------------------------------ interval calculus
def interval_hom_dim(i1: Interval, i2: Interval) -> int:
    (a, b), (c, d) = i1, i2
    return 1 if c <= a <= d <= b else 0


def interval_image(i1: Interval, i2: Interval) -> Interval | None:
    """Image of the nonzero map ``i1 -> i2`` (``None`` when Hom vanishes)."""
    if not interval_hom_dim(i1, i2):
        return None
    return Interval(i1.a, i2.b)


def interval_ext_dim(i1: Interval, i2: Interval) -> int:
    """dim Ext^1(i1, i2), extensions ``0 -> i2 -> E -> i1 -> 0``.

    With i1 = [a,b] and i2 = [c,d] this is 1 iff ``a < c <= b+1 <= d``
    (Auslander-Reiten formula with ``tau [a,b] = [a+1,b+1]``).
    """
    (a, b), (c, d) = i1, i2
    return 1 if a + 1 <= c <= b + 1 <= d else 0


def ext_middle(i1: Interval, i2: Interval) -> tuple[Interval, ...]:
    """Summands of the nonsplit middle term ``[a,d] (+) [c,b]``."""
    if not interval_ext_dim(i1, i2):
        raise ValueError(f"Ext({i1}, {i2}) = 0")
    (a, b), (c, d) = i1, i2
    out = [Interval(a, d)]
    if c <= b:
        out.append(Interval(c, b))
    return tuple(sorted(out))


def interval_subs(iv: Interval) -> list[Interval | None]:
    """Subobjects of [a,b]: 0 and [c,b] for a <= c <= b (``None`` is 0)."""
    return [None] + [Interval(c, iv.b) for c in range(iv.b, iv.a - 1, -1)]


def interval_quots(iv: Interval) -> list[Interval | None]:
    """Quotients of [a,b]: 0 and [a,d] for a <= d <= b."""
    return [None] + [Interval(iv.a, d) for d in range(iv.a, iv.b + 1)]


def interval_trace(iv: Interval, members: Iterable[Interval]) -> Interval | None:
    """Sum of images of all maps from members into ``iv``.

    Images in [a,b] form the chain [c,b]; the sum is the largest one.
    """
    tops = [t.a for t in members if interval_hom_dim(t, iv)]
    return Interval(min(tops), iv.b) if tops else None


def interval_reject(iv: Interval, members: Iterable[Interval]) -> Interval | None:
    """Quotient of ``iv`` by the intersection of kernels of maps to members."""
    socles = [f.b for f in members if interval_hom_dim(iv, f)]
    return Interval(iv.a, max(socles)) if socles else None


def intervals(n: int) -> list[Interval]:
    return [Interval(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]


def ar_order(n: int) -> list[Interval]:
    """Intervals left to right in the AR quiver, bottom row first in each column."""
    return sorted(intervals(n), key=lambda iv: (-(iv.a + iv.b), iv.length))


def projectives(n: int) -> list[Interval]:
    return [Interval(i, n) for i in range(1, n + 1)]


def injectives(n: int) -> list[Interval]:
    return [Interval(1, j) for j in range(1, n + 1)]


def simples(n: int) -> list[Interval]:
    return [Interval(i, i) for i in range(1, n + 1)]


def supported_in(vertices: Iterable[int], n: int) -> list[Interval]:
    """Intervals all of whose composition factors lie over ``vertices``."""
    vs = set(vertices)
    return [iv for iv in intervals(n) if all(k in vs for k in range(iv.a, iv.b + 1))]


def serre_classes(n: int) -> list[tuple[tuple[int, ...], ClassSpec]]:
    """The 2^n Serre subcategories, one per set of simples, keyed by that set."""
    out = []
    for k in range(n + 1):
        for vs in itertools.combinations(range(1, n + 1), k):
            out.append((vs, ClassSpec(frozenset(supported_in(vs, n)))))
    return out


def torsion_closure(members: Iterable[Interval]) -> frozenset:
    """Smallest set of intervals containing ``members`` that is closed under
    quotients and under summands of nonsplit extension middles."""
    cur = set(members)
    while True:
        new = set(cur)
        for iv in cur:
            new.update(q for q in interval_quots(iv) if q is not None)
        for x in cur:
            for y in cur:
                if interval_ext_dim(x, y):
                    new.update(ext_middle(x, y))
        if new == cur:
            return frozenset(cur)
        cur = new


def torsion_classes_by_closure(n: int) -> list[frozenset]:
    """All candidate torsion classes, reached from 0 by adding one interval
    at a time and closing.  Any torsion class T' containing T contains the
    closure of T + {x} for x in T' minus T, so the search reaches every
    class; the caller verifies each result with a torsion-pair checker."""
    start = frozenset()
    seen = {start}
    frontier = [start]
    ivs = intervals(n)
    while frontier:
        nxt = []
        for T in frontier:
            for x in ivs:
                if x in T:
                    continue
                C = torsion_closure(T | {x})
                if C not in seen:
                    seen.add(C)
                    nxt.append(C)
        frontier = nxt
    return sorted(seen, key=lambda T: (len(T), sorted(T)))


# ------------------------------------------------------------------ AR quiver
@dataclass
class ARQuiver:
    n: int
    vertices: list[Interval]
    arrows: list[tuple[Interval, Interval, str]] = field(default_factory=list)

    def successors(self, v: Interval) -> list[Interval]:
        return [t for s, t, _ in self.arrows if s == v]

    def rows(self) -> list[list[Interval]]:
        """Vertices grouped by length; row 0 is the bottom row (simples)."""
        return [[v for v in self.vertices if v.length == k] for k in range(1, self.n + 1)]

    def to_dot(self, stack_labels: bool = False) -> str:
        def lab(v):
            return v.stack if stack_labels else str(v)

        lines = [f"digraph AR_A{self.n} {{", "  rankdir=LR;"]
        for v in self.vertices:
            lines.append(f'  "{lab(v)}";')
        for s, t, kind in self.arrows:
            lines.append(f'  "{lab(s)}" -> "{lab(t)}" [label="{kind}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def ar_quiver(n: int) -> ARQuiver:
    """Irreducible maps: [a,b] -> [a-1,b] (mono) and [a,b] -> [a,b-1] (epi)."""
    if n < 1:
        raise ValueError("n must be positive")
    q = ARQuiver(n, intervals(n))
    for a, b in q.vertices:
        if a >= 2:
            q.arrows.append((Interval(a, b), Interval(a - 1, b), "mono"))
        if b >= a + 1:
            q.arrows.append((Interval(a, b), Interval(a, b - 1), "epi"))
    return q


# ------------------------------------------------------------------- backend
class TypeA(LinearQuiverCategory):
    """mod(kA_n) over GF(p).

    The universe is every multiplicity-free direct sum of indecomposables,
    optionally capped at ``max_summands`` summands (the default cap is 2 for
    n >= 4, where the full power set of 10 intervals would be needlessly
    large for additive statements).
    """

    name = "typea"

    def __init__(self, n: int, p: int = 2, max_summands: int | None = None):
        if max_summands is None and n >= 4:
            max_summands = 2
        super().__init__(n, p, max_len=None, max_summands=max_summands)

    def from_interval(self, a: int, b: int) -> Interval:
        return Interval(a, b)

    def label(self, ind) -> str:
        return str(Interval(*ind))

    def stack_label(self, X: Obj) -> str:
        if X.is_zero:
            return "0"
        return " + ".join(Interval(*s).stack for s in X)

    def parse_ind(self, text: str) -> Interval:
        return parse_interval(text, self.n)

    def parse_obj(self, texts: Sequence[str]) -> Obj:
        return Obj(tuple(self.parse_ind(t) for t in texts))

    def ind_json(self) -> list[dict]:
        out = []
        for iv in self.indecomposables():
            tags = []
            if iv.b == self.n:
                tags.append("projective")
            if iv.a == 1:
                tags.append("injective")
            if iv.a == iv.b:
                tags.append("simple")
            out.append({"label": str(iv), "stack": iv.stack, "a": iv.a, "b": iv.b, "tags": tags})
        return out

    # fast paths agreeing with the matrix computations in the base class
    def interval_hom_dim(self, s, t) -> int:
        return interval_hom_dim(Interval(*s), Interval(*t))

    def combinatorial_trace_type(self, X: Obj, members: Sequence) -> tuple[Obj, Obj]:
        ms = [Interval(*t) for t in members]
        sub, quot = [], []
        for s in X:
            iv = Interval(*s)
            t = interval_trace(iv, ms)
            if t is None:
                quot.append(iv)
            else:
                sub.append(t)
                if t.a > iv.a:
                    quot.append(Interval(iv.a, t.a - 1))
        return Obj(tuple(sub)), Obj(tuple(quot))
