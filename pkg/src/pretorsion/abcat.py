"""Backend-neutral contract for finite Krull-Schmidt abelian categories.

Objects are :class:`Obj` values: finite multisets of indecomposable ids kept in
sorted order.  Every backend realises each ``Obj`` by a canonical concrete
model (a quiver representation, a product of cyclic groups, ...) and morphisms
carry backend data relative to those canonical models.

A backend only has to supply a handful of primitives (hom bases, kernels,
cokernels, subobject enumeration and raw data arithmetic).  Everything else in
this module -- biproducts, images, pullbacks, pushouts, lifting through monos
and the hom-group span algebra used for trivial-morphism computations -- is
written against those primitives, so the theory modules never look at backend
data.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence


class BoundExceeded(RuntimeError):
    """An enumeration would leave the declared finite universe."""


class TheoremViolation(AssertionError):
    """A check guaranteed by a theorem failed; this can only be a bug."""


@dataclass(frozen=True, order=True)
class Obj:
    """Formal direct sum of indecomposables (a sorted multiset of ids)."""

    summands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(sorted(self.summands)))

    @classmethod
    def of(cls, *summands: Hashable) -> "Obj":
        return cls(tuple(summands))

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def __add__(self, other: "Obj") -> "Obj":
        return Obj(self.summands + other.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self) -> Iterator:
        return iter(self.summands)

    def counts(self) -> Counter:
        return Counter(self.summands)

    def distinct(self) -> tuple:
        return tuple(sorted(set(self.summands)))

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        return " + ".join(str(s) for s in self.summands)


ZERO = Obj()


class Morphism:
    """An arrow between two ``Obj`` in a fixed backend.

    ``f @ g`` is the composite ``f o g``; ``+``, ``-`` and integer scaling are
    the additive structure.  Equality is exact equality of canonical data.
    """

    __slots__ = ("cat", "source", "target", "data")

    def __init__(self, cat: "AbelianCategory", source: Obj, target: Obj, data: Any):
        self.cat = cat
        self.source = source
        self.target = target
        self.data = data

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return self.cat.compose(self, other)

    def __add__(self, other: "Morphism") -> "Morphism":
        return self.cat.add(self, other)

    def __neg__(self) -> "Morphism":
        return self.cat.scale(self, -1)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self.cat.add(self, self.cat.scale(other, -1))

    def __rmul__(self, c: int) -> "Morphism":
        return self.cat.scale(self, int(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.cat.key(self) == self.cat.key(other)
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.cat.key(self)))

    @property
    def is_zero(self) -> bool:
        return self == self.cat.zero(self.source, self.target)

    def __repr__(self) -> str:
        return f"Morphism({self.source} -> {self.target})"


@dataclass(frozen=True)
class SES:
    """``0 -> sub --i--> middle --p--> quot -> 0``."""

    i: Morphism
    p: Morphism

    @property
    def sub(self) -> Obj:
        return self.i.source

    @property
    def middle(self) -> Obj:
        return self.i.target

    @property
    def quot(self) -> Obj:
        return self.p.target

    def validate(self) -> list[str]:
        """Return a list of violated SES conditions (empty when valid)."""
        cat = self.i.cat
        problems = []
        if self.p.source != self.i.target:
            return ["maps not composable"]
        if not (self.p @ self.i).is_zero:
            problems.append("p o i != 0")
        if not cat.is_mono(self.i):
            problems.append("i not mono")
        if not cat.is_epi(self.p):
            problems.append("p not epi")
        if cat.length(self.middle) != cat.length(self.sub) + cat.length(self.quot):
            problems.append("lengths do not add up")
        return problems


class AbelianCategory(ABC):
    """Finite-universe abelian category backend."""

    name: str = "abstract"

    def __init__(self):
        self._memo: dict = {}

    # ---------------------------------------------------------------- ids
    @abstractmethod
    def indecomposables(self) -> list:
        """All indecomposables of the bounded universe, up to isomorphism."""

    @abstractmethod
    def universe(self) -> list[Obj]:
        """Objects over which 'for every object' is quantified."""

    @abstractmethod
    def ind_length(self, ind) -> int:
        """Composition length of an indecomposable."""

    def label(self, ind) -> str:
        return str(ind)

    def parse_ind(self, text: str):
        table = {self.label(i): i for i in self.indecomposables()}
        key = text.strip()
        if key not in table:
            raise ValueError(f"unknown indecomposable {text!r} for backend {self.name}")
        return table[key]

    def obj_label(self, X: Obj) -> str:
        if X.is_zero:
            return "0"
        return " + ".join(self.label(s) for s in X)

    def config(self) -> dict:
        return {"backend": self.name}

    # ------------------------------------------------------ data primitives
    @abstractmethod
    def _zero_data(self, X: Obj, Y: Obj) -> Any: ...

    @abstractmethod
    def _perm_data(self, X: Obj, Y: Obj, pairs: Sequence[tuple[int, int]]) -> Any:
        """Data of the map sending summand ``i`` of X identically onto summand ``j`` of Y."""

    @abstractmethod
    def _compose_data(self, g: Morphism, f: Morphism) -> Any: ...

    @abstractmethod
    def _add_data(self, f: Morphism, g: Morphism) -> Any: ...

    @abstractmethod
    def _scale_data(self, f: Morphism, c: int) -> Any: ...

    @abstractmethod
    def key(self, f: Morphism) -> Hashable:
        """Hashable canonical form of the data of ``f``."""

    @abstractmethod
    def hom_basis(self, X: Obj, Y: Obj) -> list[Morphism]:
        """Independent generators of Hom(X, Y)."""

    @abstractmethod
    def hom_orders(self, X: Obj, Y: Obj) -> list[int]:
        """Additive orders of the elements returned by ``hom_basis``."""

    @abstractmethod
    def kernel(self, f: Morphism) -> tuple[Obj, Morphism]: ...

    @abstractmethod
    def cokernel(self, f: Morphism) -> tuple[Obj, Morphism]: ...

    @abstractmethod
    def subobjects(self, X: Obj) -> list[Morphism]:
        """One mono per subobject of X."""

    # ------------------------------------------------------- arithmetic
    def morphism(self, X: Obj, Y: Obj, data: Any) -> Morphism:
        return Morphism(self, X, Y, data)

    def zero(self, X: Obj, Y: Obj) -> Morphism:
        return Morphism(self, X, Y, self._zero_data(X, Y))

    def identity(self, X: Obj) -> Morphism:
        return Morphism(self, X, X, self._perm_data(X, X, [(i, i) for i in range(len(X))]))

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        if f.target != g.source:
            raise ValueError(f"cannot compose {g} after {f}")
        return Morphism(self, f.source, g.target, self._compose_data(g, f))

    def add(self, f: Morphism, g: Morphism) -> Morphism:
        if f.source != g.source or f.target != g.target:
            raise ValueError(f"cannot add {f} and {g}")
        return Morphism(self, f.source, f.target, self._add_data(f, g))

    def scale(self, f: Morphism, c: int) -> Morphism:
        return Morphism(self, f.source, f.target, self._scale_data(f, c))

    def sum(self, fs: Iterable[Morphism], X: Obj, Y: Obj) -> Morphism:
        out = self.zero(X, Y)
        for f in fs:
            out = out + f
        return out

    def combine(self, coeffs: Sequence[int], gens: Sequence[Morphism], X: Obj, Y: Obj) -> Morphism:
        return self.sum((int(c) * g for c, g in zip(coeffs, gens) if int(c)), X, Y)

    def length(self, X: Obj) -> int:
        return sum(self.ind_length(s) for s in X)

    # ---------------------------------------------------------- biproducts
    def biproduct(self, objs: Sequence[Obj]) -> tuple[Obj, list[Morphism], list[Morphism]]:
        total = Obj(tuple(s for X in objs for s in X))
        slots: dict = defaultdict(list)
        for pos, s in enumerate(total):
            slots[s].append(pos)
        cursor: Counter = Counter()
        injections, projections = [], []
        for X in objs:
            pairs = []
            for i, s in enumerate(X):
                pairs.append((i, slots[s][cursor[s]]))
                cursor[s] += 1
            injections.append(Morphism(self, X, total, self._perm_data(X, total, pairs)))
            projections.append(
                Morphism(self, total, X, self._perm_data(total, X, [(j, i) for i, j in pairs]))
            )
        return total, injections, projections

    def direct_sum(self, fs: Sequence[Morphism]) -> Morphism:
        """Block-diagonal sum of morphisms."""
        S, inj_s, proj_s = self.biproduct([f.source for f in fs])
        T, inj_t, proj_t = self.biproduct([f.target for f in fs])
        return self.sum((inj_t[k] @ f @ proj_s[k] for k, f in enumerate(fs)), S, T)

    def summand_inclusions(self, X: Obj) -> list[Morphism]:
        """Inclusions of the indecomposable summands of X."""
        _, inj, _ = self.biproduct([Obj.of(s) for s in X])
        return [Morphism(self, i.source, X, i.data) for i in inj]

    def summand_projections(self, X: Obj) -> list[Morphism]:
        _, _, proj = self.biproduct([Obj.of(s) for s in X])
        return [Morphism(self, X, p.target, p.data) for p in proj]

    # ------------------------------------------------------ derived limits
    def is_mono(self, f: Morphism) -> bool:
        return self.kernel(f)[0].is_zero

    def is_epi(self, f: Morphism) -> bool:
        return self.cokernel(f)[0].is_zero

    def is_iso(self, f: Morphism) -> bool:
        return self.is_mono(f) and self.is_epi(f)

    def lift(self, f: Morphism, m: Morphism) -> Morphism | None:
        """``e`` with ``m o e == f`` when it exists (unique if ``m`` is mono)."""
        basis = self.hom_basis(f.source, m.source)
        coeffs = self.span_contains(f, [m @ b for b in basis])
        if coeffs is None:
            return None
        return self.combine(coeffs, basis, f.source, m.source)

    def colift(self, f: Morphism, e: Morphism) -> Morphism | None:
        """``g`` with ``g o e == f`` when it exists (unique if ``e`` is epi)."""
        basis = self.hom_basis(e.target, f.target)
        coeffs = self.span_contains(f, [b @ e for b in basis])
        if coeffs is None:
            return None
        return self.combine(coeffs, basis, e.target, f.target)

    def inverse(self, f: Morphism) -> Morphism:
        g = self.lift(self.identity(f.target), f)
        if g is None or not (g @ f == self.identity(f.source)):
            raise ValueError("morphism is not invertible")
        return g

    def image(self, f: Morphism) -> tuple[Obj, Morphism, Morphism]:
        """(epi, mono)-factorisation ``f = m o e``."""
        _, q = self.cokernel(f)
        I, m = self.kernel(q)
        e = self.lift(f, m)
        if e is None:
            raise TheoremViolation("image: f does not factor through ker(coker f)")
        return I, e, m

    def pullback(self, f: Morphism, g: Morphism) -> tuple[Obj, Morphism, Morphism]:
        """Pullback of ``f: A -> C`` and ``g: B -> C`` as a kernel on ``A + B``."""
        if f.target != g.target:
            raise ValueError("pullback needs a common target")
        S, _, (pa, pb) = self.biproduct([f.source, g.source])
        P, k = self.kernel(f @ pa - g @ pb)
        return P, pa @ k, pb @ k

    def pushout(self, f: Morphism, g: Morphism) -> tuple[Obj, Morphism, Morphism]:
        """Pushout of ``f: C -> A`` and ``g: C -> B`` as a cokernel of ``A + B``."""
        if f.source != g.source:
            raise ValueError("pushout needs a common source")
        S, (ia, ib), _ = self.biproduct([f.target, g.target])
        Q, q = self.cokernel(ia @ f - ib @ g)
        return Q, q @ ia, q @ ib

    def quotients(self, X: Obj) -> list[Morphism]:
        """One epi per quotient of X (cokernels of the subobjects)."""
        return [self.cokernel(m)[1] for m in self.subobjects(X)]

    def ses_types(self, X: Obj) -> frozenset[tuple[Obj, Obj]]:
        """Isomorphism types ``(A, X/A)`` over all subobjects ``A`` of X."""
        key = ("ses_types", X)
        if key not in self._memo:
            out = set()
            for m in self.subobjects(X):
                out.add((m.source, self.cokernel(m)[0]))
            self._memo[key] = frozenset(out)
        return self._memo[key]

    def ses_from_mono(self, m: Morphism) -> SES:
        return SES(m, self.cokernel(m)[1])

    # ------------------------------------------------- traces and rejects
    def trace(self, X: Obj, members: Sequence) -> tuple[Obj, Morphism]:
        """Sum of the images of all maps from members into X, as a subobject."""
        maps = [b for t in members for b in self.hom_basis(Obj.of(t), X)]
        if not maps:
            return ZERO, self.zero(ZERO, X)
        S, _, projs = self.biproduct([m.source for m in maps])
        copair = self.sum((m @ pr for m, pr in zip(maps, projs)), S, X)
        I, _, mono = self.image(copair)
        return I, mono

    def reject(self, X: Obj, members: Sequence) -> tuple[Obj, Morphism]:
        """Quotient of X by the intersection of kernels of all maps into members."""
        maps = [b for f in members for b in self.hom_basis(X, Obj.of(f))]
        if not maps:
            return ZERO, self.zero(X, ZERO)
        S, injs, _ = self.biproduct([m.target for m in maps])
        pairing = self.sum((inj @ m for m, inj in zip(maps, injs)), X, S)
        I, epi, _ = self.image(pairing)
        return I, epi

    def trace_type(self, X: Obj, members: Sequence) -> tuple[Obj, Obj]:
        """Isomorphism types of the trace and of the quotient by it."""
        I, m = self.trace(X, members)
        return I, self.cokernel(m)[0]

    # ------------------------------------------------- hom-group spans
    # Default implementation enumerates subgroups of the (finite) hom
    # groups; linear backends override these with elimination over GF(p).
    def _multiples(self, g: Morphism) -> list[Morphism]:
        out = [self.zero(g.source, g.target)]
        cur = g
        while not cur.is_zero:
            out.append(cur)
            cur = cur + g
            if len(out) > 1 << 16:
                raise BoundExceeded("element order too large")
        return out

    def _span_table(self, gens: Sequence[Morphism], X: Obj, Y: Obj) -> dict:
        table = {self.key(self.zero(X, Y)): (self.zero(X, Y), ())}
        for g in gens:
            mults = self._multiples(g)
            new = {}
            for e, c in table.values():
                for k, m in enumerate(mults):
                    s = e + m
                    ks = self.key(s)
                    if ks not in new:
                        new[ks] = (s, c + (k,))
            table = new
            if len(table) > 1 << 18:
                raise BoundExceeded("hom subgroup too large to enumerate")
        return table

    def span_contains(self, f: Morphism, gens: Sequence[Morphism]) -> list[int] | None:
        """Integer coefficients expressing ``f`` in the span of ``gens``, or None."""
        table = self._span_table(gens, f.source, f.target)
        hit = table.get(self.key(f))
        return None if hit is None else list(hit[1])

    def span_size(self, gens: Sequence[Morphism], X: Obj, Y: Obj) -> int:
        """Order of the subgroup of Hom(X, Y) generated by ``gens``."""
        return len(self._span_table(gens, X, Y))

    def span_subset(self, gens_a: Sequence[Morphism], gens_b: Sequence[Morphism]) -> bool:
        if not gens_a:
            return True
        table = self._span_table(gens_b, gens_a[0].source, gens_a[0].target)
        return all(self.key(a) in table for a in gens_a)

    def span_preimage(
        self,
        X: Obj,
        Y: Obj,
        phi: Callable[[Morphism], Morphism],
        target_gens: Sequence[Morphism],
    ) -> list[Morphism]:
        """Generators of ``{l in Hom(X, Y) : phi(l) in span(target_gens)}``.

        ``phi`` must be additive (composition with fixed maps is).
        """
        basis = self.hom_basis(X, Y)
        full = self._span_table(basis, X, Y)
        probe = phi(self.zero(X, Y))
        target = self._span_table(target_gens, probe.source, probe.target)
        members = [e for e, _ in full.values() if self.key(phi(e)) in target]
        return self._reduce_gens(members, X, Y)

    def _reduce_gens(self, members: Sequence[Morphism], X: Obj, Y: Obj) -> list[Morphism]:
        gens: list[Morphism] = []
        table = self._span_table(gens, X, Y)
        for e in sorted(members, key=lambda m: -len(self._multiples(m))):
            if self.key(e) not in table:
                gens.append(e)
                table = self._span_table(gens, X, Y)
        return gens

    def hom_size(self, X: Obj, Y: Obj) -> int:
        out = 1
        for o in self.hom_orders(X, Y):
            out *= o
        return out

    def hom_elements(self, X: Obj, Y: Obj) -> Iterator[Morphism]:
        basis = self.hom_basis(X, Y)
        orders = self.hom_orders(X, Y)
        for coeffs in itertools.product(*(range(o) for o in orders)):
            yield self.combine(coeffs, basis, X, Y)

    # ------------------------------------------------------------- checks
    def check_kernel_universal(self, f: Morphism, k: Morphism, testers: Iterable[Obj]) -> bool:
        """``f o k = 0`` and every ``g`` with ``f o g = 0`` factors through ``k``."""
        if not (f @ k).is_zero or not self.is_mono(k):
            return False
        for W in testers:
            kill = self.span_preimage(W, f.source, lambda l: f @ l, [])
            if not self.span_subset(kill, [k @ b for b in self.hom_basis(W, k.source)]):
                return False
        return True

    def check_cokernel_universal(self, f: Morphism, q: Morphism, testers: Iterable[Obj]) -> bool:
        if not (q @ f).is_zero or not self.is_epi(q):
            return False
        for W in testers:
            kill = self.span_preimage(f.target, W, lambda l: l @ f, [])
            if not self.span_subset(kill, [b @ q for b in self.hom_basis(q.target, W)]):
                return False
        return True

    def check_pullback_universal(
        self, f: Morphism, g: Morphism, pa: Morphism, pb: Morphism, testers: Iterable[Obj]
    ) -> bool:
        """Commutativity plus: every commuting pair (a, b) from a tester factors through P."""
        if not (f @ pa == g @ pb):
            return False
        S, _, (qa, qb) = self.biproduct([f.source, g.source])
        _, (ia, ib), _ = self.biproduct([f.source, g.source])
        d = f @ qa - g @ qb
        pair = ia @ pa + ib @ pb
        return self.check_kernel_universal(d, pair, testers)

    def check_pushout_universal(
        self, f: Morphism, g: Morphism, ia: Morphism, ib: Morphism, testers: Iterable[Obj]
    ) -> bool:
        if not (ia @ f == ib @ g):
            return False
        S, (ja, jb), (qa, qb) = self.biproduct([f.target, g.target])
        d = ja @ f - jb @ g
        copair = ia @ qa + ib @ qb
        return self.check_cokernel_universal(d, copair, testers)

    def indecomposable_testers(self) -> list[Obj]:
        return [Obj.of(i) for i in self.indecomposables()]
