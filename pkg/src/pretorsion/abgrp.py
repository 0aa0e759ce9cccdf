"""Finite abelian groups of order dividing a bound N (default 2^3 * 3^2 * 5).

An object is a sorted tuple of prime-power cyclic orders, ``Obj.of(4, 3)``
being Z/4 + Z/3.  A morphism X -> Y is an integer matrix ``M`` with one row
per summand of Y and one column per summand of X: the generator of the i-th
cyclic summand of X goes to ``sum_j M[j, i] * e_j``.  Entries are reduced mod
the target orders.  Groups here have at most a few hundred elements, so
kernels, cokernels and subgroups are computed by enumerating elements.

Multiplicative sets are the ones generated by a finite set of primes ``P``;
on finite groups the classes they define only depend on ``P``.
"""

from __future__ import annotations

import itertools
from functools import reduce
from math import gcd, log
from typing import Iterable, Sequence

import numpy as np

from .abcat import AbelianCategory, BoundExceeded, Morphism, Obj, TheoremViolation
from .exactla import factorize, is_prime_power, prime_of

DEFAULT_ORDER_BOUND = 2**3 * 3**2 * 5

PrimeSet = frozenset


def order(M: Obj) -> int:
    return reduce(lambda a, b: a * b, M.summands, 1)


def primes_of(M: Obj) -> set[int]:
    return {prime_of(q) for q in M}


def group_from_orders(orders: Iterable[int]) -> Obj:
    """Normalise arbitrary cyclic orders (e.g. ``[12]``) to prime-power summands."""
    out = []
    for q in orders:
        q = int(q)
        if q < 1:
            raise ValueError(f"cyclic order must be positive, got {q}")
        if q > 1:
            out.extend(p**e for p, e in factorize(q).items())
    return Obj(tuple(out))


def in_T(P: Iterable[int], M: Obj) -> bool:
    """Every element is killed by some product of primes in P."""
    P = set(P)
    return primes_of(M) <= P


def in_F(P: Iterable[int], M: Obj) -> bool:
    """No nonzero element is killed by a product of primes in P."""
    return not (primes_of(M) & set(P))


def _type_from_counts(p: int, counts: Sequence[int]) -> list[int]:
    """Cyclic p-power orders of a p-group from ``counts[k] = #{x : p^k x = 0}``."""
    ranks = []
    for k in range(1, len(counts)):
        ratio = counts[k] // counts[k - 1]
        r = round(log(ratio, p)) if ratio > 1 else 0
        if p**r != ratio:
            raise TheoremViolation("element counts are not those of a p-group")
        ranks.append(r)
    ranks.append(0)
    out = []
    for k in range(len(ranks) - 1):
        out.extend([p ** (k + 1)] * (ranks[k] - ranks[k + 1]))
    return out


class AbGroups(AbelianCategory):
    """Finite abelian groups whose order divides ``order_bound``."""

    name = "abgrp"

    def __init__(self, order_bound: int = DEFAULT_ORDER_BOUND):
        super().__init__()
        if order_bound < 1:
            raise ValueError("order bound must be positive")
        if order_bound > 2000:
            raise BoundExceeded("abgrp order bound is limited to 2000")
        self.order_bound = order_bound
        self.bound = factorize(order_bound)
        self._inds = sorted(p**e for p, emax in self.bound.items() for e in range(1, emax + 1))

    # ---------------------------------------------------------------- ids
    def indecomposables(self) -> list[int]:
        return list(self._inds)

    def ind_length(self, q: int) -> int:
        return sum(factorize(q).values())

    def label(self, q) -> str:
        return f"Z/{q}"

    def parse_ind(self, text: str) -> int:
        t = text.strip()
        if t.lower().startswith("z/"):
            t = t[2:]
        q = int(t)
        if q not in self._inds:
            raise ValueError(f"Z/{q} is not an indecomposable within order bound {self.order_bound}")
        return q

    def obj_label(self, X: Obj) -> str:
        return "0" if X.is_zero else " + ".join(f"Z/{q}" for q in X)

    def config(self) -> dict:
        return {"backend": self.name, "order_bound": self.order_bound, "universe": "all groups of order dividing the bound"}

    def universe(self) -> list[Obj]:
        key = ("universe",)
        if key not in self._memo:
            per_prime = []
            for p, emax in sorted(self.bound.items()):
                types = [[]]
                for total in range(1, emax + 1):
                    types.extend(_partitions(total))
                per_prime.append([[p**k for k in part] for part in types])
            objs = [Obj(tuple(s for part in combo for s in part)) for combo in itertools.product(*per_prime)]
            self._memo[key] = sorted(set(objs), key=lambda X: (order(X), X))
        return list(self._memo[key])

    def contains(self, M: Obj) -> bool:
        return self.order_bound % order(M) == 0

    # ------------------------------------------------------ element layer
    def elements(self, X: Obj) -> np.ndarray:
        key = ("elements", X)
        if key not in self._memo:
            if order(X) > 50_000:
                raise BoundExceeded(f"{self.obj_label(X)} is too large to enumerate")
            grid = list(itertools.product(*(range(q) for q in X)))
            self._memo[key] = np.array(grid, dtype=np.int64).reshape(len(grid), len(X))
        return self._memo[key]

    def apply(self, f: Morphism, elems: np.ndarray) -> np.ndarray:
        mods = np.array(f.target.summands, dtype=np.int64)
        if len(f.target) == 0:
            return np.zeros((elems.shape[0], 0), dtype=np.int64)
        if len(f.source) == 0:
            return np.zeros((elems.shape[0], len(f.target)), dtype=np.int64)
        return (elems @ f.data.T) % mods

    def element_order(self, X: Obj, x) -> int:
        o = 1
        for xi, q in zip(x, X):
            o = o * (q // gcd(int(xi), q)) // gcd(o, q // gcd(int(xi), q))
        return o

    def _basis_of(self, X: Obj, elems: set[tuple]) -> list[tuple[tuple, int]]:
        """Generators ``(element, order)`` of a direct cyclic decomposition of a subgroup."""
        mods = X.summands
        zero = tuple(0 for _ in mods)

        def add(a, b):
            return tuple((x + y) % q for x, y, q in zip(a, b, mods))

        out = []
        by_prime: dict[int, list[tuple]] = {}
        for x in elems:
            if x == zero:
                continue
            o = self.element_order(X, x)
            if is_prime_power(o):
                by_prime.setdefault(prime_of(o), []).append(x)
        for p in sorted(by_prime):
            part = set(by_prime[p]) | {zero}
            out.extend(_p_group_basis(part, add, zero))
        # verify the decomposition is direct and spans
        gens = [g for g, _ in out]
        total = 1
        for _, o in out:
            total *= o
        if total != len(elems) or _closure(gens, add, zero) != set(elems):
            raise TheoremViolation("cyclic decomposition of a subgroup failed")
        return out

    def _mono_from_subgroup(self, X: Obj, elems: set[tuple]) -> Morphism:
        basis = self._basis_of(X, elems)
        basis.sort(key=lambda t: t[1])
        A = Obj(tuple(o for _, o in basis))
        data = np.array([[g[j] for g, _ in basis] for j in range(len(X))], dtype=np.int64).reshape(len(X), len(A))
        return Morphism(self, A, X, data)

    # ---------------------------------------------------- data primitives
    def _reduce(self, M: np.ndarray, Y: Obj) -> np.ndarray:
        if M.size == 0:
            return M.astype(np.int64)
        return M % np.array(Y.summands, dtype=np.int64).reshape(-1, 1)

    def _zero_data(self, X, Y):
        return np.zeros((len(Y), len(X)), dtype=np.int64)

    def _perm_data(self, X, Y, pairs):
        M = self._zero_data(X, Y)
        for i, j in pairs:
            if X.summands[i] != Y.summands[j]:
                raise ValueError("perm data must match equal summands")
            M[j, i] = 1
        return M

    def _compose_data(self, g, f):
        if g.data.shape[1] == 0 or g.data.shape[0] == 0:
            return np.zeros((g.data.shape[0], f.data.shape[1]), dtype=np.int64)
        return self._reduce(g.data @ f.data, g.target)

    def _add_data(self, f, g):
        return self._reduce(f.data + g.data, f.target)

    def _scale_data(self, f, c):
        return self._reduce(f.data * c, f.target)

    def key(self, f):
        return f.data.tobytes()

    def morphism(self, X, Y, data):
        M = self._reduce(np.array(data, dtype=np.int64).reshape(len(Y), len(X)), Y)
        for i, qx in enumerate(X):
            for j, qy in enumerate(Y):
                if (qx * M[j, i]) % qy:
                    raise ValueError(f"entry ({j},{i}) does not define a homomorphism Z/{qx} -> Z/{qy}")
        return Morphism(self, X, Y, M)

    # ---------------------------------------------------------------- hom
    def hom_basis(self, X, Y):
        key = ("hom", X, Y)
        if key not in self._memo:
            out = []
            for i, qx in enumerate(X):
                for j, qy in enumerate(Y):
                    g = gcd(qx, qy)
                    if g > 1:
                        M = self._zero_data(X, Y)
                        M[j, i] = qy // g
                        out.append(Morphism(self, X, Y, M))
            self._memo[key] = out
        return list(self._memo[key])

    def hom_orders(self, X, Y):
        return [gcd(qx, qy) for qx in X for qy in Y if gcd(qx, qy) > 1]

    # ----------------------------------------------------- kernels etc.
    def kernel(self, f):
        E = self.elements(f.source)
        img = self.apply(f, E)
        ker = {tuple(int(v) for v in row) for row in E[~img.any(axis=1)]} if len(f.target) else {
            tuple(int(v) for v in row) for row in E
        }
        m = self._mono_from_subgroup(f.source, ker)
        return m.source, m

    def _quotient(self, Y: Obj, H: set[tuple]) -> tuple[Obj, Morphism]:
        """Cyclic decomposition of Y/H and the projection Y -> Y/H."""
        mods = Y.summands
        zero = tuple(0 for _ in mods)
        Hl = sorted(H)

        def canon(a):
            return min(tuple((x + h) % q for x, h, q in zip(a, hh, mods)) for hh in Hl)

        cosets = {canon(tuple(int(v) for v in row)) for row in self.elements(Y)}

        def add(a, b):
            return canon(tuple((x + y) % q for x, y, q in zip(a, b, mods)))

        out = []
        by_prime: dict[int, list[tuple]] = {}
        for c in cosets:
            if c == zero:
                continue
            o = _order(c, add, zero)
            if is_prime_power(o):
                by_prime.setdefault(prime_of(o), []).append(c)
        for p in sorted(by_prime):
            out.extend(_p_group_basis(set(by_prime[p]) | {zero}, add, zero))
        out.sort(key=lambda t: t[1])
        Q = Obj(tuple(o for _, o in out))
        # coordinates of every coset in the chosen basis
        coords = {}
        for cs in itertools.product(*(range(o) for _, o in out)):
            acc = zero
            for c, (g, _) in zip(cs, out):
                for _ in range(c):
                    acc = add(acc, g)
            coords[acc] = cs
        if len(coords) != len(cosets) or order(Q) != len(cosets):
            raise TheoremViolation("cyclic decomposition of a quotient failed")
        M = np.zeros((len(Q), len(Y)), dtype=np.int64)
        for j in range(len(Y)):
            e = tuple(1 if k == j else 0 for k in range(len(Y)))
            M[:, j] = coords[canon(e)]
        return Q, Morphism(self, Y, Q, self._reduce(M, Q))

    def cokernel(self, f):
        E = self.elements(f.source)
        img = {tuple(int(v) for v in row) for row in self.apply(f, E)}
        if not img:
            img = {tuple(0 for _ in f.target)}
        return self._quotient(f.target, img)

    def trace(self, X: Obj, members: Sequence) -> tuple[Obj, Morphism]:
        """Subgroup generated by the images of the generators of members."""
        mods = X.summands
        zero = tuple(0 for _ in mods)
        gens = [
            tuple(int(v) for v in b.data[:, 0]) for t in members for b in self.hom_basis(Obj.of(t), X) if len(X)
        ]

        def add(a, b):
            return tuple((x + y) % q for x, y, q in zip(a, b, mods))

        m = self._mono_from_subgroup(X, _closure(gens, add, zero))
        return m.source, m

    def reject(self, X: Obj, members: Sequence) -> tuple[Obj, Morphism]:
        """Quotient by the common kernel of all maps into members."""
        E = self.elements(X)
        keep = np.ones(E.shape[0], dtype=bool)
        for f in members:
            for b in self.hom_basis(X, Obj.of(f)):
                keep &= ~self.apply(b, E).any(axis=1)
        H = {tuple(int(v) for v in row) for row in E[keep]}
        return self._quotient(X, H)

    def is_mono(self, f):
        E = self.elements(f.source)
        img = self.apply(f, E)
        return len({tuple(r) for r in img.tolist()}) == E.shape[0]

    def is_epi(self, f):
        img = {tuple(r) for r in self.apply(f, self.elements(f.source)).tolist()}
        return len(img) == order(f.target)

    def lift(self, f, m):
        if not self.is_mono(m):
            return super().lift(f, m)
        E = self.elements(m.source)
        table = {tuple(r): row for r, row in zip(self.apply(m, E).tolist(), E.tolist())}
        cols = []
        for i in range(len(f.source)):
            e = np.zeros((1, len(f.source)), dtype=np.int64)
            e[0, i] = 1
            y = tuple(self.apply(f, e)[0].tolist())
            if y not in table:
                return None
            cols.append(table[y])
        data = np.array(cols, dtype=np.int64).T.reshape(len(m.source), len(f.source))
        return Morphism(self, f.source, m.source, self._reduce(data, m.source))

    def colift(self, f, e):
        if not self.is_epi(e):
            return super().colift(f, e)
        E = self.elements(e.source)
        img = self.apply(e, E).tolist()
        pre = {}
        for r, row in zip(img, E.tolist()):
            pre.setdefault(tuple(r), row)
        cols = []
        for j in range(len(e.target)):
            y = tuple(1 if k == j else 0 for k in range(len(e.target)))
            x = np.array([pre[y]], dtype=np.int64)
            cols.append(self.apply(f, x)[0].tolist())
        data = np.array(cols, dtype=np.int64).T.reshape(len(f.target), len(e.target))
        g = Morphism(self, e.target, f.target, self._reduce(data, f.target))
        return g if g @ e == f else None

    # --------------------------------------------------------- subgroups
    def subgroups(self, X: Obj) -> list[frozenset]:
        key = ("subgroups", X)
        if key not in self._memo:
            mods = X.summands
            zero = tuple(0 for _ in mods)

            def add(a, b):
                return tuple((x + y) % q for x, y, q in zip(a, b, mods))

            parts: dict[int, list[tuple]] = {}
            for row in self.elements(X).tolist():
                x = tuple(row)
                o = self.element_order(X, x)
                if x != zero and is_prime_power(o):
                    parts.setdefault(prime_of(o), []).append(x)
            per_prime = []
            for p in sorted(parts):
                elems = parts[p]
                found = {frozenset([zero])}
                frontier = list(found)
                while frontier:
                    nxt = []
                    for S in frontier:
                        for x in elems:
                            if x not in S:
                                T = frozenset(_closure(list(S) + [x], add, zero))
                                if T not in found:
                                    found.add(T)
                                    nxt.append(T)
                    frontier = nxt
                per_prime.append(sorted(found, key=lambda s: (len(s), sorted(s))))
            subs = []
            for combo in itertools.product(*per_prime) if per_prime else [()]:
                acc = {zero}
                for S in combo:
                    acc = {add(a, b) for a in acc for b in S}
                subs.append(frozenset(acc))
            self._memo[key] = subs
        return list(self._memo[key])

    def subobjects(self, X):
        key = ("subobjects", X)
        if key not in self._memo:
            self._memo[key] = [self._mono_from_subgroup(X, set(S)) for S in self.subgroups(X)]
        return list(self._memo[key])

    def iso_type(self, X: Obj, elems: Iterable[tuple], quotient_of: set | None = None) -> Obj:
        """Iso type of a subgroup (or of X/H when ``quotient_of`` is H) from element counts."""
        elems = list(elems)
        out = []
        for p in sorted(self.bound):
            emax = sum(factorize(q).get(p, 0) for q in X)
            counts = []
            for k in range(emax + 1):
                pk = p**k
                if quotient_of is None:
                    c = sum(1 for x in elems if all((pk * xi) % q == 0 for xi, q in zip(x, X)))
                else:
                    c = sum(
                        1 for x in elems if tuple((pk * xi) % q for xi, q in zip(x, X)) in quotient_of
                    ) // len(quotient_of)
                counts.append(c)
            out.extend(_type_from_counts(p, counts))
        return Obj(tuple(out))

    def ses_types(self, X):
        key = ("ses_types", X)
        if key not in self._memo:
            allx = [tuple(r) for r in self.elements(X).tolist()]
            out = set()
            for S in self.subgroups(X):
                out.add((self.iso_type(X, S), self.iso_type(X, allx, quotient_of=set(S))))
            self._memo[key] = frozenset(out)
        return self._memo[key]


# ----------------------------------------------------------- group helpers
def _partitions(n: int, largest: int | None = None) -> list[list[int]]:
    largest = n if largest is None else largest
    if n == 0:
        return [[]]
    out = []
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            out.append([k] + rest)
    return out


def _order(x, add, zero) -> int:
    k, acc = 1, x
    while acc != zero:
        acc = add(acc, x)
        k += 1
    return k


def _closure(gens, add, zero) -> set:
    span = {zero}
    for g in gens:
        if g in span:
            continue
        mult = [zero]
        acc = g
        while acc != zero:
            mult.append(acc)
            acc = add(acc, g)
        span = {add(a, m) for a in span for m in mult}
    return span


def _p_group_basis(H: set, add, zero) -> list[tuple[tuple, int]]:
    """Basis of a finite abelian p-group given by its elements.

    Take an element g of maximal order; <g> is a direct summand.  Recurse on
    H/<g> (cosets represented by their least element) and lift every basis
    element to an element of the same order, which exists by the standard
    lifting lemma for p-groups.
    """
    if len(H) == 1:
        return []
    orders = {x: _order(x, add, zero) for x in H}
    g = max(sorted(H), key=lambda x: orders[x])
    cyc = sorted(_closure([g], add, zero))

    def canon(a):
        return min(add(a, c) for c in cyc)

    def qadd(a, b):
        return canon(add(a, b))

    cosets = {canon(x) for x in H}
    out = [(g, orders[g])]
    for rep, o in _p_group_basis(cosets, qadd, canon(zero)):
        lift = next((y for y in (add(rep, c) for c in cyc) if orders[y] == o), None)
        if lift is None:
            raise TheoremViolation("no same-order lift in a p-group")
        out.append((lift, o))
    return out


def primary_part(cat: AbGroups, P: Iterable[int], M: Obj) -> tuple[Obj, Morphism]:
    """Largest subgroup whose element orders only involve primes of P."""
    P = set(P)
    idx = [i for i, q in enumerate(M) if prime_of(q) in P]
    A = Obj(tuple(M.summands[i] for i in idx))
    return A, Morphism(cat, A, M, cat._perm_data(A, M, list(enumerate(idx))))


def hom_group(cat: AbGroups, A: Obj, B: Obj) -> list[tuple[Morphism, int]]:
    """Generators of Hom(A, B) paired with their additive orders."""
    return list(zip(cat.hom_basis(A, B), cat.hom_orders(A, B)))


def annihilator_member(P: Iterable[int], Q: Iterable[int], M: Obj, cat: AbGroups) -> bool:
    """Z-membership read off element annihilators.

    Every nonzero m must be killed by some product of primes from Q and by no
    product of primes from P; equivalently ord(m) involves only Q-primes and
    at least one prime outside P.
    """
    P, Q = set(P), set(Q)
    for x in cat.elements(M).tolist():
        if not any(x):
            continue
        primes = set(factorize(cat.element_order(M, x)))
        if not primes <= Q or primes <= P:
            return False
    return True


def members_for(cat: AbGroups, P: Iterable[int], torsion: bool) -> list[int]:
    """Indecomposable members of T_P (``torsion=True``) or F_P."""
    P = set(P)
    return [q for q in cat.indecomposables() if (prime_of(q) in P) == torsion]
