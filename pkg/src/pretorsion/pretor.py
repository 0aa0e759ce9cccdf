"""Trivial morphisms, Z-kernels and pretorsion theories.

For a class Z (closed under finite sums), a morphism is Z-trivial when it
factors through an object of Z.  Because every object of Z is a sum of
indecomposable members, Triv(X, Y) is spanned by the composites
``b o a`` with ``a`` in a basis of Hom(X, W), ``b`` in a basis of Hom(W, Y)
and W running over the members of Z.

A pair (T, F) is checked by building, for each object X, the only possible
candidate sequence ``trace_T(X) -> X -> reject_F(X)``: when the hom condition
holds, any Z-exact sequence for X has this form up to isomorphism, so a
failure of the candidate means no sequence exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .abcat import AbelianCategory, Morphism, Obj, TheoremViolation
from .torsion import (
    ClassSpec,
    TorsionPair,
    canonical_ses,
    class_objects,
    closure_checks,
    ext_product,
    ext_product_class,
    is_serre,
    s_coreflection,
    s_reflection,
)


# ----------------------------------------------------------- trivial ideal
@dataclass
class TrivWitness:
    """``f = sum_i right[i] o left[i]`` with ``left[i]: X -> through[i]``."""

    through: list
    left: list
    right: list

    def recompose(self, cat: AbelianCategory, X: Obj, Y: Obj) -> Morphism:
        return cat.sum((r @ l for l, r in zip(self.left, self.right)), X, Y)


def _independent(cat: AbelianCategory, gens: Sequence[Morphism]) -> list[Morphism]:
    kept: list[Morphism] = []
    for g in gens:
        if g.is_zero:
            continue
        if cat.span_contains(g, kept) is None:
            kept.append(g)
    return kept


def _triv_generators(cat: AbelianCategory, X: Obj, Y: Obj, Z: ClassSpec):
    out = []
    for w in sorted(Z.members):
        W = Obj.of(w)
        for a in cat.hom_basis(X, W):
            for b in cat.hom_basis(W, Y):
                out.append((w, a, b))
    return out


def triv_basis(cat: AbelianCategory, X: Obj, Y: Obj, Z: ClassSpec) -> list[Morphism]:
    """Generators of Triv(X, Y) (independent for linear backends)."""
    key = ("triv", Z.members, X, Y)
    if key not in cat._memo:
        comps = [b @ a for _, a, b in _triv_generators(cat, X, Y, Z)]
        cat._memo[key] = _independent(cat, comps)
    return list(cat._memo[key])


def is_trivial(cat: AbelianCategory, f: Morphism, Z: ClassSpec) -> TrivWitness | None:
    """A factorisation of ``f`` through members of Z, or None."""
    gens = _triv_generators(cat, f.source, f.target, Z)
    coeffs = cat.span_contains(f, [b @ a for _, a, b in gens])
    if coeffs is None:
        return None
    wit = TrivWitness([], [], [])
    for c, (w, a, b) in zip(coeffs, gens):
        if int(c):
            wit.through.append(w)
            wit.left.append(int(c) * a)
            wit.right.append(b)
    if not (wit.recompose(cat, f.source, f.target) == f):
        raise TheoremViolation("trivial witness does not recompose")
    return wit


def hom_is_trivial(cat: AbelianCategory, X: Obj, Y: Obj, Z: ClassSpec) -> bool:
    """Hom(X, Y) = Triv(X, Y)."""
    return cat.span_subset(cat.hom_basis(X, Y), triv_basis(cat, X, Y, Z))


# --------------------------------------------------- Z-kernels / Z-cokernels
def _testers(cat: AbelianCategory, testers):
    return cat.indecomposable_testers() if testers is None else list(testers)


def verify_z_kernel(cat: AbelianCategory, eps: Morphism, f: Morphism, Z: ClassSpec, testers=None) -> bool:
    """``eps`` is a Z-kernel of ``f``.

    ``f o eps`` must be trivial, ``eps`` mono, and for every tester W each
    ``l: W -> source(f)`` with ``f o l`` trivial must factor through ``eps``.
    Uniqueness of the factorisation follows from ``eps`` being mono.
    """
    if eps.target != f.source or not cat.is_mono(eps):
        return False
    if is_trivial(cat, f @ eps, Z) is None:
        return False
    for W in _testers(cat, testers):
        killed = cat.span_preimage(W, f.source, lambda l: f @ l, triv_basis(cat, W, f.target, Z))
        through = [eps @ b for b in cat.hom_basis(W, eps.source)]
        if not cat.span_subset(killed, through):
            return False
    return True


def verify_z_cokernel(cat: AbelianCategory, eta: Morphism, f: Morphism, Z: ClassSpec, testers=None) -> bool:
    if eta.source != f.target or not cat.is_epi(eta):
        return False
    if is_trivial(cat, eta @ f, Z) is None:
        return False
    for W in _testers(cat, testers):
        killed = cat.span_preimage(f.target, W, lambda l: l @ f, triv_basis(cat, f.source, W, Z))
        through = [b @ eta for b in cat.hom_basis(eta.target, W)]
        if not cat.span_subset(killed, through):
            return False
    return True


@dataclass
class ZExactSeq:
    """``T_X --eps--> X --eta--> F_X``."""

    eps: Morphism
    eta: Morphism

    @property
    def TX(self) -> Obj:
        return self.eps.source

    @property
    def X(self) -> Obj:
        return self.eps.target

    @property
    def FX(self) -> Obj:
        return self.eta.target

    def verify(self, cat: AbelianCategory, Z: ClassSpec, testers=None) -> bool:
        return verify_z_kernel(cat, self.eps, self.eta, Z, testers) and verify_z_cokernel(
            cat, self.eta, self.eps, Z, testers
        )

    def describe(self, cat: AbelianCategory, label=None) -> dict:
        lab = label or cat.obj_label
        return {"T_X": lab(self.TX), "X": lab(self.X), "F_X": lab(self.FX)}


def canonical_sequence(cat: AbelianCategory, X: Obj, T: ClassSpec, F: ClassSpec) -> ZExactSeq:
    _, eps = cat.trace(X, sorted(T.members))
    _, eta = cat.reject(X, sorted(F.members))
    return ZExactSeq(eps, eta)


def direct_sum_sequence(cat: AbelianCategory, seqs: Sequence[ZExactSeq]) -> ZExactSeq:
    return ZExactSeq(cat.direct_sum([s.eps for s in seqs]), cat.direct_sum([s.eta for s in seqs]))


def check_trivial_eta_gives_iso(cat: AbelianCategory, seq: ZExactSeq, Z: ClassSpec) -> bool:
    """If eta is trivial then eps must be an isomorphism."""
    if is_trivial(cat, seq.eta, Z) is None:
        return True
    return cat.is_iso(seq.eps)


def z_kernels_isomorphic(cat: AbelianCategory, e1: Morphism, e2: Morphism) -> bool:
    """Two monos into the same object that factor through each other."""
    a = cat.lift(e1, e2)
    b = cat.lift(e2, e1)
    if a is None or b is None:
        return False
    return (b @ a) == cat.identity(e1.source) and (a @ b) == cat.identity(e2.source)


def search_z_exact(cat: AbelianCategory, X: Obj, T: ClassSpec, F: ClassSpec, Z: ClassSpec) -> ZExactSeq | None:
    """Exhaustive search over all (subobject, quotient) pairs; test oracle only."""
    subs = [m for m in cat.subobjects(X) if T.holds(m.source)]
    quots = [q for q in cat.quotients(X) if F.holds(q.target)]
    for m, q in itertools.product(subs, quots):
        seq = ZExactSeq(m, q)
        if seq.verify(cat, Z):
            return seq
    return None


# --------------------------------------------------------- the checker
@dataclass
class PretorsionReport:
    ok: bool
    Z: ClassSpec
    hom_condition: bool
    hom_failures: list = field(default_factory=list)
    sequences: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    lemma_ok: bool = True
    checked_objects: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def first_failure(self):
        if self.hom_failures:
            return ("hom", self.hom_failures[0])
        return self.failures[0] if self.failures else None


def is_pretorsion(
    cat: AbelianCategory,
    T: ClassSpec,
    F: ClassSpec,
    universe: Iterable[Obj] | None = None,
    mode: str = "lemma",
    stop_early: bool = False,
) -> PretorsionReport:
    """Check (T, F) against the definition of a pretorsion theory.

    ``mode="lemma"`` verifies every indecomposable directly, machine-checks
    that direct sums of verified sequences (all pairs, multiplicity two
    included) remain Z-exact, and assembles the sequences of larger universe
    objects as direct sums.  ``mode="direct"`` verifies every universe object.
    """
    Z = T & F
    rep = PretorsionReport(True, Z, True)
    for t in sorted(T.members):
        for f in sorted(F.members):
            if not hom_is_trivial(cat, Obj.of(t), Obj.of(f), Z):
                rep.ok = rep.hom_condition = False
                rep.hom_failures.append((t, f))
                if stop_early:
                    return rep

    def check(X: Obj, seq: ZExactSeq | None = None) -> ZExactSeq | None:
        seq = seq or canonical_sequence(cat, X, T, F)
        rep.checked_objects += 1
        if not T.holds(seq.TX):
            rep.failures.append((X, f"T-part {cat.obj_label(seq.TX)} not in T"))
            return None
        if not F.holds(seq.FX):
            rep.failures.append((X, f"F-part {cat.obj_label(seq.FX)} not in F"))
            return None
        if not seq.verify(cat, Z):
            rep.failures.append((X, "candidate sequence is not Z-exact"))
            return None
        return seq

    ind_seqs = {}
    for i in cat.indecomposables():
        X = Obj.of(i)
        s = check(X)
        if s is None:
            rep.ok = False
            if stop_early:
                return rep
        else:
            ind_seqs[i] = s
            rep.sequences[X] = s
    U = cat.universe() if universe is None else list(universe)
    if mode == "direct":
        for X in U:
            if len(X) <= 1:
                continue
            s = check(X)
            if s is None:
                rep.ok = False
                if stop_early:
                    return rep
            else:
                rep.sequences[X] = s
        return rep
    if mode != "lemma":
        raise ValueError(f"unknown mode {mode!r}")
    if len(ind_seqs) != len(cat.indecomposables()):
        return rep
    for i, j in itertools.combinations_with_replacement(sorted(ind_seqs), 2):
        s = direct_sum_sequence(cat, [ind_seqs[i], ind_seqs[j]])
        rep.checked_objects += 1
        if not s.verify(cat, Z):
            rep.ok = rep.lemma_ok = False
            rep.failures.append((s.X, "direct sum of Z-exact sequences is not Z-exact"))
            if stop_early:
                return rep
    for X in U:
        if len(X) <= 1 or X in rep.sequences:
            continue
        rep.sequences[X] = direct_sum_sequence(cat, [ind_seqs[s] for s in X])
    return rep


# ----------------------------------------------------- constructed theories
@dataclass
class PretorsionTheory:
    T: ClassSpec
    F: ClassSpec
    Z: ClassSpec
    provenance: dict
    sequences: dict = field(default_factory=dict)
    report: PretorsionReport | None = None

    def to_json(self, cat: AbelianCategory, label=None) -> dict:
        lab = label or cat.obj_label
        return {
            "T": self.T.labels(cat),
            "F": self.F.labels(cat),
            "Z": self.Z.labels(cat),
            "provenance": self.provenance,
            "sequences": [
                {"X": lab(X), **s.describe(cat, lab)}
                for X, s in sorted(self.sequences.items(), key=lambda kv: kv[0])
                if len(X) == 1
            ],
        }


def comparable_pretorsion(
    cat: AbelianCategory, tp1: TorsionPair, tp2: TorsionPair, universe: Iterable[Obj] | None = None
) -> PretorsionTheory:
    """(T1, F2) for torsion pairs with T2 contained in T1.

    Sequences: the T1-torsion subobject followed by the F2-torsion-free
    quotient.  Also checks T1 = T2 * Z and F2 = Z * F1 over the universe.
    """
    missing = sorted(tp2.T.members - tp1.T.members)
    if missing:
        raise ValueError(f"T2 is not contained in T1: {cat.label(missing[0])} is in T2 only")
    U = cat.universe() if universe is None else list(universe)
    T, F = tp1.T, tp2.F
    Z = T & F
    seqs = {}
    for i in cat.indecomposables():
        X = Obj.of(i)
        _, eps = cat.trace(X, sorted(tp1.T.members))
        _, m2 = cat.trace(X, sorted(tp2.T.members))
        _, eta = cat.cokernel(m2)
        seq = ZExactSeq(eps, eta)
        if not (T.holds(seq.TX) and F.holds(seq.FX) and seq.verify(cat, Z)):
            raise TheoremViolation(f"comparable pair: sequence of {cat.obj_label(X)} is not Z-exact")
        if not check_trivial_eta_gives_iso(cat, seq, Z):
            raise TheoremViolation("trivial eta with non-invertible eps")
        seqs[X] = seq
    report = is_pretorsion(cat, T, F, U)
    if not report.ok:
        raise TheoremViolation(f"comparable pair fails the pretorsion checker: {report.first_failure()}")
    for X, s in report.sequences.items():
        if X in seqs and not z_kernels_isomorphic(cat, s.eps, seqs[X].eps):
            raise TheoremViolation("two Z-kernels of the same object are not isomorphic")
    seqs.update({X: s for X, s in report.sequences.items() if X not in seqs})
    t1_objs = class_objects(cat, tp1.T, U)
    f2_objs = class_objects(cat, tp2.F, U)
    if ext_product(cat, tp2.T, Z, U) != t1_objs:
        raise TheoremViolation("T1 differs from T2 * Z")
    if ext_product(cat, Z, tp1.F, U) != f2_objs:
        raise TheoremViolation("F2 differs from Z * F1")
    return PretorsionTheory(
        T, F, Z, {"kind": "comparable", "tp1": tp1.to_json(cat), "tp2": tp2.to_json(cat)}, seqs, report
    )


@dataclass
class SerreChecks:
    trivial_class: bool
    F_subobjects: bool
    T_quotients: bool
    hom_trivial: bool
    detect_T: bool
    detect_F: bool

    @property
    def all(self) -> bool:
        return all(vars(self).values())


def serre_sequence(cat: AbelianCategory, X: Obj, tp: TorsionPair, S: ClassSpec) -> ZExactSeq:
    """The sequence of X obtained by pulling back and pushing out along S.

    T_X is the pullback of X -> V_X along the S-coreflection S_X -> V_X and
    F_X the pushout of U_X -> X along the S-reflection U_X -> S'_X.
    """
    ses = canonical_ses(cat, X, tp)
    u, v = ses.i, ses.p
    _, s = s_coreflection(cat, ses.quot, S)
    TX, eps, to_s = cat.pullback(v, s)
    if not cat.is_epi(to_s):
        raise TheoremViolation("pullback of an epi is not epi")
    _, r = s_reflection(cat, ses.sub, S)
    FX, eta, from_s = cat.pushout(u, r)
    if not cat.is_mono(from_s):
        raise TheoremViolation("pushout of a mono is not mono")
    return ZExactSeq(eps, eta)


def serre_checks(cat: AbelianCategory, T: ClassSpec, F: ClassSpec, S: ClassSpec, universe) -> SerreChecks:
    U = list(universe)
    hom_trivial = all(hom_is_trivial(cat, Obj.of(t), Obj.of(f), S) for t in T.members for f in F.members)
    detect_T = all(
        T.holds(X)
        for X in U
        if all(hom_is_trivial(cat, X, Obj.of(f), S) for f in F.members)
    )
    detect_F = all(
        F.holds(Y)
        for Y in U
        if all(hom_is_trivial(cat, Obj.of(t), Y, S) for t in T.members)
    )
    return SerreChecks(
        trivial_class=(T & F) == S,
        F_subobjects=closure_checks(cat, F, U).under_subobjects,
        T_quotients=closure_checks(cat, T, U).under_quotients,
        hom_trivial=hom_trivial,
        detect_T=detect_T,
        detect_F=detect_F,
    )


def serre_extension(
    cat: AbelianCategory, tp: TorsionPair, S: ClassSpec, universe: Iterable[Obj] | None = None
) -> PretorsionTheory:
    """(U * S, S * V) for a torsion pair (U, V) and a Serre class S."""
    U_ = cat.universe() if universe is None else list(universe)
    if not is_serre(cat, S, U_):
        raise ValueError("S is not a Serre class")
    T = ext_product_class(cat, tp.T, S, U_)
    F = ext_product_class(cat, S, tp.F, U_)
    seqs = {}
    for i in cat.indecomposables():
        X = Obj.of(i)
        seq = serre_sequence(cat, X, tp, S)
        if not (T.holds(seq.TX) and F.holds(seq.FX)):
            raise TheoremViolation(f"Serre extension: {cat.obj_label(X)} has parts outside (T, F)")
        if not seq.verify(cat, S):
            raise TheoremViolation(f"Serre extension: sequence of {cat.obj_label(X)} is not S-exact")
        if not check_trivial_eta_gives_iso(cat, seq, S):
            raise TheoremViolation("trivial eta with non-invertible eps")
        seqs[X] = seq
    checks = serre_checks(cat, T, F, S, U_)
    if not checks.all:
        raise TheoremViolation(f"Serre extension properties fail: {checks}")
    report = is_pretorsion(cat, T, F, U_)
    if not report.ok or report.Z != S:
        raise TheoremViolation(f"Serre extension fails the pretorsion checker: {report.first_failure()}")
    for X, s in seqs.items():
        if not z_kernels_isomorphic(cat, s.eps, report.sequences[X].eps):
            raise TheoremViolation("constructed and canonical Z-kernels are not isomorphic")
    seqs.update({X: s for X, s in report.sequences.items() if X not in seqs})
    return PretorsionTheory(
        T, F, S, {"kind": "serre", "tp": tp.to_json(cat), "S": S.labels(cat)}, seqs, report
    )


def z_extension_closed(
    cat: AbelianCategory, C: ClassSpec, Z: ClassSpec, universe: Iterable[Obj] | None = None
):
    """Is add(C) closed under Z-extensions?

    Returns ``(True, None)`` or ``(False, (A, X, B))`` for a Z-exact
    ``A -> X -> B`` with A, B in C and X outside.  Every Z-exact sequence has
    a mono first map and an epi second map, so enumerating subobjects and
    quotients is exhaustive.
    """
    U = cat.universe() if universe is None else list(universe)
    for X in U:
        if C.holds(X):
            continue
        seq = search_z_exact(cat, X, C, C, Z)
        if seq is not None:
            return False, (seq.TX, X, seq.FX)
    return True, None
