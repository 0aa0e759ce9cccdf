"""The additive quotient C/Z and the induced torsion pair.

Hom_{C/Z}(X, Y) = Hom(X, Y) / Triv(X, Y).  The quotient is usually not
abelian, so kernels and cokernels in it are never constructed; instead the
candidate sequence coming from a pretorsion theory is checked against the
kernel and cokernel universal properties directly, with the coset
arithmetic done through :func:`pretorsion.pretor.triv_basis`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import log
from typing import Iterable

from .abcat import AbelianCategory, Morphism, Obj, TheoremViolation
from .pretor import PretorsionTheory, ZExactSeq, triv_basis
from .torsion import ClassSpec


class QuotientCategory:
    """C/Z with lazily built hom tables."""

    def __init__(self, cat: AbelianCategory, Z: ClassSpec):
        bad = [z for z in Z.members if z not in set(cat.indecomposables())]
        if bad:
            raise ValueError(f"Z has members outside the backend: {bad}")
        self.cat = cat
        self.Z = Z
        self._table: dict = {}

    # ---------------------------------------------------------- hom tables
    def triv(self, X: Obj, Y: Obj) -> list[Morphism]:
        return triv_basis(self.cat, X, Y, self.Z)

    def transversal(self, X: Obj, Y: Obj) -> list[Morphism]:
        """Hom-basis elements whose classes generate Hom_{C/Z}(X, Y) minimally."""
        key = (X, Y)
        if key not in self._table:
            kept = list(self.triv(X, Y))
            out = []
            for b in self.cat.hom_basis(X, Y):
                if self.cat.span_contains(b, kept) is None:
                    out.append(b)
                    kept.append(b)
            self._table[key] = out
        return list(self._table[key])

    def hom_sizes(self, X: Obj, Y: Obj) -> tuple[int, int, int]:
        """(|Hom|, |Triv|, |Hom_{C/Z}|) as group orders."""
        cat = self.cat
        h = cat.span_size(cat.hom_basis(X, Y), X, Y)
        t = cat.span_size(self.triv(X, Y), X, Y)
        if h % t:
            raise TheoremViolation("Triv is not a subgroup of Hom")
        return h, t, h // t

    def hom_dims(self, X: Obj, Y: Obj) -> tuple[int, int, int]:
        """Dimensions over GF(p) (linear backends only)."""
        p = getattr(self.cat, "p", None)
        if p is None:
            raise TypeError("hom dimensions need a linear backend")
        return tuple(round(log(s, p)) for s in self.hom_sizes(X, Y))

    def is_zero_object(self, X: Obj) -> bool:
        return self.sigma(self.cat.identity(X)).is_zero

    # ----------------------------------------------------------- morphisms
    def sigma(self, f: Morphism) -> "QuotMorphism":
        return QuotMorphism(self, f)

    def equal(self, f: Morphism, g: Morphism) -> bool:
        return self.cat.span_contains(f - g, self.triv(f.source, f.target)) is not None

    # ------------------------------------------------------------- checks
    def check_ideal(self, X: Obj, Y: Obj, testers: Iterable[Obj]) -> bool:
        """Composites of trivial generators with arbitrary maps stay trivial."""
        cat = self.cat
        for t in self.triv(X, Y):
            for W in testers:
                for g in cat.hom_basis(W, X):
                    if cat.span_contains(t @ g, self.triv(W, Y)) is None:
                        return False
                for h in cat.hom_basis(Y, W):
                    if cat.span_contains(h @ t, self.triv(X, W)) is None:
                        return False
        return True

    def hom_table_json(self, objects: Iterable[Obj], label=None) -> list[dict]:
        lab = label or self.cat.obj_label
        out = []
        linear = hasattr(self.cat, "p")
        for X in objects:
            for Y in objects:
                if linear:
                    h, t, q = self.hom_dims(X, Y)
                    out.append({"X": lab(X), "Y": lab(Y), "hom": h, "triv": t, "quotient": q})
                else:
                    h, t, q = self.hom_sizes(X, Y)
                    out.append({"X": lab(X), "Y": lab(Y), "hom_order": h, "triv_order": t, "quotient_order": q})
        return out


class QuotMorphism:
    """The class of a morphism modulo Triv."""

    __slots__ = ("Q", "rep")

    def __init__(self, Q: QuotientCategory, rep: Morphism):
        self.Q = Q
        self.rep = rep

    @property
    def source(self) -> Obj:
        return self.rep.source

    @property
    def target(self) -> Obj:
        return self.rep.target

    @property
    def is_zero(self) -> bool:
        return self.Q.cat.span_contains(self.rep, self.Q.triv(self.source, self.target)) is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.Q.equal(self.rep, other.rep)

    __hash__ = None

    def __add__(self, other: "QuotMorphism") -> "QuotMorphism":
        return QuotMorphism(self.Q, self.rep + other.rep)

    def __neg__(self) -> "QuotMorphism":
        return QuotMorphism(self.Q, -self.rep)

    def __matmul__(self, other: "QuotMorphism") -> "QuotMorphism":
        return QuotMorphism(self.Q, self.rep @ other.rep)


def build_quotient(cat: AbelianCategory, Z: ClassSpec) -> QuotientCategory:
    Q = QuotientCategory(cat, Z)
    for z in sorted(Z.members):
        if not Q.is_zero_object(Obj.of(z)):
            raise TheoremViolation(f"identity of the trivial object {cat.label(z)} survives in C/Z")
    return Q


def sigma(Q: QuotientCategory, f: Morphism) -> QuotMorphism:
    return Q.sigma(f)


# ----------------------------------------------------- quotient torsion pair
@dataclass
class QuotientTorsionReport:
    ok: bool
    T: ClassSpec
    F: ClassSpec
    failures: list = field(default_factory=list)
    checked_objects: int = 0


def _kernel_in_quotient(Q: QuotientCategory, seq: ZExactSeq, W: Obj) -> bool:
    """[eps] is a kernel of [eta] against maps out of W."""
    cat = Q.cat
    X, TX = seq.X, seq.TX
    killed = cat.span_preimage(W, X, lambda l: seq.eta @ l, Q.triv(W, seq.FX))
    reach = [seq.eps @ b for b in cat.hom_basis(W, TX)] + Q.triv(W, X)
    if not cat.span_subset(killed, reach):
        return False
    vanish = cat.span_preimage(W, TX, lambda m: seq.eps @ m, Q.triv(W, X))
    return cat.span_subset(vanish, Q.triv(W, TX))


def _cokernel_in_quotient(Q: QuotientCategory, seq: ZExactSeq, W: Obj) -> bool:
    cat = Q.cat
    X, FX = seq.X, seq.FX
    killed = cat.span_preimage(X, W, lambda l: l @ seq.eps, Q.triv(seq.TX, W))
    reach = [b @ seq.eta for b in cat.hom_basis(FX, W)] + Q.triv(X, W)
    if not cat.span_subset(killed, reach):
        return False
    vanish = cat.span_preimage(FX, W, lambda m: m @ seq.eta, Q.triv(X, W))
    return cat.span_subset(vanish, Q.triv(FX, W))


def verify_quotient_torsion(
    Q: QuotientCategory, pt: PretorsionTheory, objects: Iterable[Obj] | None = None, testers=None
) -> QuotientTorsionReport:
    """(Sigma T, Sigma F) is a torsion pair in C/Z.

    For each object with a sequence: the composite vanishes in C/Z, [eps] is
    a kernel of [eta] and [eta] a cokernel of [eps] (existence and uniqueness
    of factorisations checked on hom bases), and Hom_{C/Z}(T, F) = 0 on
    members.  Raises on failure since the statement is a theorem.
    """
    cat = Q.cat
    if pt.Z != Q.Z:
        raise ValueError("pretorsion theory and quotient use different trivial classes")
    testers = cat.indecomposable_testers() if testers is None else list(testers)
    objs = list(pt.sequences) if objects is None else list(objects)
    rep = QuotientTorsionReport(True, ClassSpec(pt.T.members - pt.Z.members), ClassSpec(pt.F.members - pt.Z.members))
    for t in sorted(pt.T.members):
        for f in sorted(pt.F.members):
            if Q.hom_sizes(Obj.of(t), Obj.of(f))[2] != 1:
                rep.failures.append(("hom", t, f))
    for X in objs:
        seq = pt.sequences[X]
        rep.checked_objects += 1
        if not Q.sigma(seq.eta @ seq.eps).is_zero:
            rep.failures.append((X, "composite not zero"))
            continue
        for W in testers:
            if not _kernel_in_quotient(Q, seq, W):
                rep.failures.append((X, f"not a kernel against {cat.obj_label(W)}"))
                break
            if not _cokernel_in_quotient(Q, seq, W):
                rep.failures.append((X, f"not a cokernel against {cat.obj_label(W)}"))
                break
    rep.ok = not rep.failures
    if not rep.ok:
        raise TheoremViolation(f"quotient torsion pair fails: {rep.failures[:3]}")
    return rep
