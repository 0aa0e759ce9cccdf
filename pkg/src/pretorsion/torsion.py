"""Torsion pairs over any backend of :mod:`pretorsion.abcat`.

Classes of objects are given by their indecomposable members and stand for
their additive closure.  Statements "for every object" are checked over the
backend's bounded universe (multiplicity-free sums, all small groups, sampled
complexes), which is what the reports quote.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .abcat import SES, AbelianCategory, Obj, TheoremViolation


@dataclass(frozen=True)
class ClassSpec:
    """Additive closure of a set of indecomposables."""

    members: frozenset = frozenset()

    @classmethod
    def of(cls, *members) -> "ClassSpec":
        return cls(frozenset(members))

    def __contains__(self, ind) -> bool:
        return ind in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def holds(self, X: Obj) -> bool:
        """X lies in the additive closure."""
        return all(s in self.members for s in X)

    def __and__(self, other: "ClassSpec") -> "ClassSpec":
        return ClassSpec(self.members & other.members)

    def __or__(self, other: "ClassSpec") -> "ClassSpec":
        return ClassSpec(self.members | other.members)

    def __le__(self, other: "ClassSpec") -> bool:
        return self.members <= other.members

    def labels(self, cat: AbelianCategory) -> list[str]:
        return [cat.label(m) for m in sorted(self.members)]

    def to_json(self, cat: AbelianCategory) -> dict:
        return {"backend": cat.name, "members": self.labels(cat)}

    @classmethod
    def from_json(cls, cat: AbelianCategory, d: dict) -> "ClassSpec":
        if d.get("backend", cat.name) != cat.name:
            raise ValueError(f"class belongs to backend {d['backend']!r}, not {cat.name!r}")
        return cls(frozenset(cat.parse_ind(t) for t in d["members"]))


def everything(cat: AbelianCategory) -> ClassSpec:
    return ClassSpec(frozenset(cat.indecomposables()))


def nothing() -> ClassSpec:
    return ClassSpec()


@dataclass(frozen=True)
class TorsionPair:
    T: ClassSpec
    F: ClassSpec

    def to_json(self, cat: AbelianCategory) -> dict:
        return {"T": self.T.labels(cat), "F": self.F.labels(cat)}


def in_add(X: Obj, C: ClassSpec) -> bool:
    return C.holds(X)


def class_objects(cat: AbelianCategory, C: ClassSpec, universe: Iterable[Obj] | None = None) -> frozenset:
    U = cat.universe() if universe is None else universe
    return frozenset(X for X in U if C.holds(X))


def members_of(cat: AbelianCategory, objs: Iterable[Obj]) -> ClassSpec:
    """Indecomposables whose singleton object lies in ``objs``."""
    objs = set(objs)
    return ClassSpec(frozenset(i for i in cat.indecomposables() if Obj.of(i) in objs))


# ------------------------------------------------------------------ closure
@dataclass
class ClosureReport:
    under_quotients: bool
    under_subobjects: bool
    under_extensions: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def all(self) -> bool:
        return self.under_quotients and self.under_subobjects and self.under_extensions


def closure_checks(cat: AbelianCategory, C: ClassSpec, universe: Iterable[Obj] | None = None) -> ClosureReport:
    """Closure of add(C) under quotients, subobjects and extensions.

    Quotients and subobjects are enumerated for every universe object in the
    class; extension closure asks, for every universe object X, whether some
    subobject A with A and X/A in the class exists while X is not.
    """
    U = cat.universe() if universe is None else list(universe)
    rep = ClosureReport(True, True, True)
    for X in U:
        types = cat.ses_types(X)
        if C.holds(X):
            for A, Q in sorted(types):
                if rep.under_quotients and not C.holds(Q):
                    rep.under_quotients = False
                    rep.witnesses["quotient"] = (X, Q)
                if rep.under_subobjects and not C.holds(A):
                    rep.under_subobjects = False
                    rep.witnesses["subobject"] = (X, A)
        elif rep.under_extensions:
            for A, Q in sorted(types):
                if C.holds(A) and C.holds(Q):
                    rep.under_extensions = False
                    rep.witnesses["extension"] = (A, X, Q)
                    break
    return rep


# ------------------------------------------------------------ torsion pairs
def right_perp(cat: AbelianCategory, T: ClassSpec) -> ClassSpec:
    """{Y indecomposable : Hom(t, Y) = 0 for every member t}."""
    return ClassSpec(
        frozenset(
            y for y in cat.indecomposables() if all(not cat.hom_basis(Obj.of(t), Obj.of(y)) for t in T.members)
        )
    )


def left_perp(cat: AbelianCategory, F: ClassSpec) -> ClassSpec:
    return ClassSpec(
        frozenset(
            x for x in cat.indecomposables() if all(not cat.hom_basis(Obj.of(x), Obj.of(f)) for f in F.members)
        )
    )


@dataclass
class TorsionPairReport:
    ok: bool
    hom_failures: list = field(default_factory=list)
    sequence_failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _trace_type_fn(cat: AbelianCategory, method: str) -> Callable:
    if method == "oracle":
        return cat.trace_type
    if method == "combinatorial":
        fn = getattr(cat, "combinatorial_trace_type", None)
        if fn is None:
            raise ValueError(f"backend {cat.name} has no combinatorial trace")
        return fn
    raise ValueError(f"unknown method {method!r}")


def is_torsion_pair(
    cat: AbelianCategory,
    T: ClassSpec,
    F: ClassSpec,
    universe: Iterable[Obj] | None = None,
    method: str = "oracle",
    stop_early: bool = False,
) -> TorsionPairReport:
    """Hom(T, F) = 0 on members and every universe object splits as trace then F-quotient."""
    rep = TorsionPairReport(True)
    for t in sorted(T.members):
        for f in sorted(F.members):
            if cat.hom_basis(Obj.of(t), Obj.of(f)):
                rep.ok = False
                rep.hom_failures.append((t, f))
                if stop_early:
                    return rep
    trace_type = _trace_type_fn(cat, method)
    U = cat.universe() if universe is None else list(universe)
    # indecomposables first so that failures surface quickly
    order = [Obj.of(i) for i in cat.indecomposables()] + [X for X in U if len(X) != 1]
    for X in order:
        A, Q = trace_type(X, sorted(T.members))
        if not (T.holds(A) and F.holds(Q)):
            rep.ok = False
            rep.sequence_failures.append((X, A, Q))
            if stop_early:
                return rep
    return rep


def trace(cat: AbelianCategory, X: Obj, C: ClassSpec):
    return cat.trace(X, sorted(C.members))


def reject(cat: AbelianCategory, X: Obj, C: ClassSpec):
    return cat.reject(X, sorted(C.members))


def canonical_ses(cat: AbelianCategory, X: Obj, tp: TorsionPair) -> SES:
    """Torsion subobject followed by the torsion-free quotient."""
    A, m = trace(cat, X, tp.T)
    Q, q = cat.cokernel(m)
    if not tp.T.holds(A) or not tp.F.holds(Q):
        raise ValueError(f"{cat.obj_label(X)}: ({cat.obj_label(A)}, {cat.obj_label(Q)}) does not split along the pair")
    ses = SES(m, q)
    problems = ses.validate()
    if problems:
        raise TheoremViolation(f"canonical sequence invalid: {problems}")
    return ses


def enumerate_torsion_pairs(
    cat: AbelianCategory, method: str = "oracle", universe: Iterable[Obj] | None = None
) -> list[TorsionPair]:
    """All torsion pairs, by filtering every subset of indecomposables."""
    inds = cat.indecomposables()
    U = cat.universe() if universe is None else list(universe)
    out = []
    for r in range(len(inds) + 1):
        for combo in itertools.combinations(inds, r):
            T = ClassSpec(frozenset(combo))
            F = right_perp(cat, T)
            if is_torsion_pair(cat, T, F, U, method=method, stop_early=True):
                out.append(TorsionPair(T, F))
    out.sort(key=lambda tp: (len(tp.T), sorted(tp.T.members)))
    return out


# ------------------------------------------------------- extension products
def ext_product_member(cat: AbelianCategory, X: Obj, A: ClassSpec, B: ClassSpec) -> bool:
    """Some subobject A' of X has A' in add(A) and X/A' in add(B)."""
    return any(A.holds(S) and B.holds(Q) for S, Q in cat.ses_types(X))


def ext_product(
    cat: AbelianCategory, A: ClassSpec, B: ClassSpec, universe: Iterable[Obj] | None = None
) -> frozenset:
    """Universe objects lying in A * B."""
    U = cat.universe() if universe is None else universe
    return frozenset(X for X in U if ext_product_member(cat, X, A, B))


def ext_product_class(cat: AbelianCategory, A: ClassSpec, B: ClassSpec, universe=None) -> ClassSpec:
    """Indecomposable members of A * B, checked to generate it over the universe."""
    objs = ext_product(cat, A, B, universe)
    C = members_of(cat, objs)
    U = cat.universe() if universe is None else universe
    bad = [X for X in U if (X in objs) != C.holds(X)]
    if bad:
        raise ValueError(
            f"A * B is not the additive closure of its indecomposables (e.g. {cat.obj_label(bad[0])})"
        )
    return C


# --------------------------------------------------------------- Serre calculus
def is_serre(cat: AbelianCategory, S: ClassSpec, universe=None) -> bool:
    return closure_checks(cat, S, universe).all


def s_coreflection(cat: AbelianCategory, X: Obj, S: ClassSpec):
    """Largest subobject of X lying in S (the S-kernel of the identity)."""
    return trace(cat, X, S)


def s_reflection(cat: AbelianCategory, X: Obj, S: ClassSpec):
    """Largest quotient of X lying in S (the S-cokernel of the identity)."""
    return reject(cat, X, S)


def verify_s_coreflection(cat: AbelianCategory, X: Obj, S: ClassSpec, sub, mono) -> bool:
    """sub is in S and every map from an S-member into X factors through ``mono``."""
    if not S.holds(sub) or not cat.is_mono(mono):
        return False
    for s in sorted(S.members):
        W = Obj.of(s)
        via = [mono @ b for b in cat.hom_basis(W, sub)]
        if not cat.span_subset(cat.hom_basis(W, X), via):
            return False
    return True


def verify_s_reflection(cat: AbelianCategory, X: Obj, S: ClassSpec, quot, epi) -> bool:
    if not S.holds(quot) or not cat.is_epi(epi):
        return False
    for s in sorted(S.members):
        W = Obj.of(s)
        via = [b @ epi for b in cat.hom_basis(quot, W)]
        if not cat.span_subset(cat.hom_basis(X, W), via):
            return False
    return True


# ---------------------------------------------------------------- stability
@dataclass(frozen=True)
class StabilityFunction:
    """Slope ``theta . dim / ell . dim`` on dimension vectors (ell > 0)."""

    theta: tuple[int, ...]
    ell: tuple[int, ...]

    def __post_init__(self):
        if len(self.theta) != len(self.ell):
            raise ValueError("theta and ell must have the same length")
        if any(w <= 0 for w in self.ell):
            raise ValueError("ell weights must be strictly positive")

    def value(self, dims: Sequence[int]) -> Fraction:
        den = sum(w * d for w, d in zip(self.ell, dims))
        if den == 0:
            raise ValueError("stability function is undefined on the zero object")
        return Fraction(sum(t * d for t, d in zip(self.theta, dims)), den)

    def __call__(self, cat, X: Obj) -> Fraction:
        return self.value(cat.dim_vector(X))

    def to_json(self) -> dict:
        return {"theta": list(self.theta), "ell": list(self.ell)}


def stability_classes(
    cat, phi: StabilityFunction, p: Fraction, strict: bool = False, universe=None
) -> tuple[ClassSpec, ClassSpec]:
    """T_{>=p} and F_{<p} (or T_{>p} and F_{<=p} when ``strict``).

    Membership is decided for every universe object by quantifying over its
    nonzero quotients resp. subobjects; the returned member sets are checked
    to generate those universe classes additively.
    """
    p = Fraction(p)

    def t_ok(v):
        return v > p if strict else v >= p

    def f_ok(v):
        return v <= p if strict else v < p

    U = cat.universe() if universe is None else list(universe)
    t_objs, f_objs = set(), set()
    for X in U:
        types = cat.ses_types(X)
        if all(t_ok(phi(cat, Q)) for _, Q in types if not Q.is_zero):
            t_objs.add(X)
        if all(f_ok(phi(cat, A)) for A, _ in types if not A.is_zero):
            f_objs.add(X)
    T, F = members_of(cat, t_objs), members_of(cat, f_objs)
    for X in U:
        if (X in t_objs) != T.holds(X) or (X in f_objs) != F.holds(X):
            raise TheoremViolation(f"stability class not additive at {cat.obj_label(X)}")
    return T, F


@dataclass
class SeesawReport:
    ok: bool
    checked: int
    failures: list = field(default_factory=list)


def seesaw_check(cat, phi: StabilityFunction, universe=None) -> SeesawReport:
    """For every SES 0 -> A -> X -> Q -> 0 with A, Q nonzero, exactly one of
    phi(A) < phi(X) < phi(Q), all equal, phi(A) > phi(X) > phi(Q) holds."""
    U = cat.universe() if universe is None else list(universe)
    rep = SeesawReport(True, 0)
    for X in U:
        if X.is_zero:
            continue
        x = phi(cat, X)
        for A, Q in sorted(cat.ses_types(X)):
            if A.is_zero or Q.is_zero:
                continue
            a, q = phi(cat, A), phi(cat, Q)
            cases = [a < x < q, a == x == q, a > x > q]
            rep.checked += 1
            if sum(cases) != 1:
                rep.ok = False
                rep.failures.append((A, X, Q))
    return rep


def random_stability(rng, n: int, max_weight: int = 5) -> StabilityFunction:
    theta = tuple(int(v) for v in rng.integers(-max_weight, max_weight + 1, size=n))
    ell = tuple(int(v) for v in rng.integers(1, max_weight + 1, size=n))
    return StabilityFunction(theta, ell)


def phase_values(cat, phi: StabilityFunction) -> list[Fraction]:
    """Distinct values of phi on indecomposables, sorted."""
    return sorted({phi(cat, Obj.of(i)) for i in cat.indecomposables()})
