"""Representations of the linearly oriented quiver 1 -> 2 -> ... -> n over GF(p).

This is the shared engine behind the ``typea`` and ``chaincx`` backends.
Indecomposables are interval modules ``[a, b]`` (vertex positions, 1-based);
a backend may bound the interval length (chain complexes are representations
with all length-2 paths acting as zero, whose indecomposables have length at
most 2).  Concrete data:

* a :class:`QuiverRep` stores per-vertex dimensions and per-arrow matrices
  ``maps[v]: V_v -> V_{v+1}`` (0-based ``v``);
* the canonical representation of an ``Obj`` puts one basis vector per
  (summand, vertex in its support) and identity blocks along each interval;
* morphism data is a tuple of per-vertex matrices ``target_dim x source_dim``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .abcat import AbelianCategory, BoundExceeded, Morphism, Obj, TheoremViolation
from .exactla import PrimeField, Subspace


@dataclass(frozen=True, eq=False)
class QuiverRep:
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]

    def __post_init__(self):
        n = len(self.dims)
        if len(self.maps) != max(n - 1, 0):
            raise ValueError(f"expected {n - 1} arrow matrices, got {len(self.maps)}")
        for v, m in enumerate(self.maps):
            if m.shape != (self.dims[v + 1], self.dims[v]):
                raise ValueError(
                    f"arrow {v + 1}->{v + 2}: shape {m.shape} != {(self.dims[v + 1], self.dims[v])}"
                )

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def composite(self, F: PrimeField, a: int, b: int) -> np.ndarray:
        """Matrix of the path map ``V_a -> V_b`` (0-based, ``a <= b``)."""
        m = np.eye(self.dims[a], dtype=np.int64)
        for v in range(a, b):
            m = F.matmul(self.maps[v], m)
        return m

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "maps": [m.tolist() for m in self.maps]}

    @classmethod
    def from_json(cls, d: dict) -> "QuiverRep":
        dims = tuple(int(x) for x in d["dims"])
        maps = tuple(
            np.array(m, dtype=np.int64).reshape(dims[v + 1], dims[v]) for v, m in enumerate(d["maps"])
        )
        return cls(dims, maps)


@lru_cache(maxsize=None)
def all_subspaces(p: int, k: int) -> tuple[np.ndarray, ...]:
    """Every subspace of GF(p)^k as an RREF basis (rows), enumerated by pivot pattern."""
    out = []
    for r in range(k + 1):
        for pivots in itertools.combinations(range(k), r):
            free_slots = [
                (row, col)
                for row, pc in enumerate(pivots)
                for col in range(pc + 1, k)
                if col not in pivots
            ]
            for vals in itertools.product(range(p), repeat=len(free_slots)):
                m = np.zeros((r, k), dtype=np.int64)
                for row, pc in enumerate(pivots):
                    m[row, pc] = 1
                for (row, col), x in zip(free_slots, vals):
                    m[row, col] = x
                out.append(m)
    return tuple(out)


def count_subspaces(p: int, k: int) -> int:
    """Number of subspaces of GF(p)^k (sum of Gaussian binomials)."""
    total = 0
    for r in range(k + 1):
        num = den = 1
        for i in range(r):
            num *= p ** (k - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


class LinearQuiverCategory(AbelianCategory):
    """Finite-dimensional representations of linear A_n over a prime field."""

    #: hard cap on nodes visited while enumerating invariant subspace tuples
    subobject_cap = 200_000

    def __init__(self, n: int, p: int = 2, max_len: int | None = None, max_summands: int | None = None):
        super().__init__()
        if n < 1:
            raise ValueError("need at least one vertex")
        self.n = n
        self.F = PrimeField(p)
        self.max_len = max_len
        self.max_summands = max_summands
        ivs = [
            (a, b)
            for a in range(1, n + 1)
            for b in range(a, n + 1)
            if max_len is None or b - a + 1 <= max_len
        ]
        self._inds = sorted(self.from_interval(a, b) for a, b in ivs)
        self._iv = {ind: self.interval(ind) for ind in self._inds}

    # ------------------------------------------------------ id <-> interval
    def interval(self, ind) -> tuple[int, int]:
        return tuple(ind)

    def from_interval(self, a: int, b: int):
        return (a, b)

    @property
    def p(self) -> int:
        return self.F.p

    def indecomposables(self) -> list:
        return list(self._inds)

    def ind_length(self, ind) -> int:
        a, b = self._iv[ind]
        return b - a + 1

    def universe(self) -> list[Obj]:
        key = ("universe",)
        if key not in self._memo:
            k_max = len(self._inds) if self.max_summands is None else self.max_summands
            objs = [Obj()]
            for k in range(1, k_max + 1):
                objs.extend(Obj(c) for c in itertools.combinations(self._inds, k))
            self._memo[key] = objs
        return list(self._memo[key])

    def config(self) -> dict:
        return {
            "backend": self.name,
            "n": self.n,
            "field": f"GF({self.p})",
            "universe": "multiplicity-free sums"
            + ("" if self.max_summands is None else f" of <= {self.max_summands} summands"),
        }

    # ------------------------------------------------------------ layouts
    def layout(self, X: Obj) -> tuple[tuple[int, ...], dict[tuple[int, int], int]]:
        key = ("layout", X)
        if key not in self._memo:
            dims = [0] * self.n
            pos: dict[tuple[int, int], int] = {}
            for v in range(self.n):
                for i, s in enumerate(X):
                    a, b = self._iv[s]
                    if a - 1 <= v <= b - 1:
                        pos[(i, v)] = dims[v]
                        dims[v] += 1
            self._memo[key] = (tuple(dims), pos)
        return self._memo[key]

    def dim_vector(self, X: Obj) -> tuple[int, ...]:
        return self.layout(X)[0]

    def to_rep(self, X: Obj) -> QuiverRep:
        key = ("rep", X)
        if key not in self._memo:
            dims, pos = self.layout(X)
            maps = []
            for v in range(self.n - 1):
                m = np.zeros((dims[v + 1], dims[v]), dtype=np.int64)
                for i, _ in enumerate(X):
                    if (i, v) in pos and (i, v + 1) in pos:
                        m[pos[(i, v + 1)], pos[(i, v)]] = 1
                maps.append(m)
            self._memo[key] = QuiverRep(dims, tuple(maps))
        return self._memo[key]

    # ---------------------------------------------------- data primitives
    def _zero_data(self, X, Y):
        dx, dy = self.dim_vector(X), self.dim_vector(Y)
        return tuple(np.zeros((dy[v], dx[v]), dtype=np.int64) for v in range(self.n))

    def _perm_data(self, X, Y, pairs):
        data = [m.copy() for m in self._zero_data(X, Y)]
        _, px = self.layout(X)
        _, py = self.layout(Y)
        for i, j in pairs:
            if X.summands[i] != Y.summands[j]:
                raise ValueError("perm data must match equal summands")
            a, b = self._iv[X.summands[i]]
            for v in range(a - 1, b):
                data[v][py[(j, v)], px[(i, v)]] = 1
        return tuple(data)

    def _compose_data(self, g, f):
        return tuple(self.F.matmul(gv, fv) for gv, fv in zip(g.data, f.data))

    def _add_data(self, f, g):
        return tuple((a + b) % self.p for a, b in zip(f.data, g.data))

    def _scale_data(self, f, c):
        return tuple((a * c) % self.p for a in f.data)

    def key(self, f):
        return tuple(m.tobytes() for m in f.data)

    def vec(self, f: Morphism) -> np.ndarray:
        if not f.data:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([m.reshape(-1) for m in f.data])

    def is_intertwiner(self, f: Morphism) -> bool:
        rx, ry = self.to_rep(f.source), self.to_rep(f.target)
        for v in range(self.n - 1):
            lhs = self.F.matmul(ry.maps[v], f.data[v])
            rhs = self.F.matmul(f.data[v + 1], rx.maps[v])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    # ----------------------------------------------------------- hom
    def interval_hom_dim(self, s, t) -> int:
        (a, b), (c, d) = self._iv[s], self._iv[t]
        return 1 if c <= a <= d <= b else 0

    def _interval_map(self, X: Obj, i: int, Y: Obj, j: int) -> tuple[np.ndarray, ...]:
        """Canonical nonzero map from summand i of X to summand j of Y."""
        data = [m.copy() for m in self._zero_data(X, Y)]
        _, px = self.layout(X)
        _, py = self.layout(Y)
        (a, _b), (_c, d) = self._iv[X.summands[i]], self._iv[Y.summands[j]]
        for v in range(a - 1, d):
            data[v][py[(j, v)], px[(i, v)]] = 1
        return tuple(data)

    def hom_basis(self, X: Obj, Y: Obj) -> list[Morphism]:
        key = ("hom", X, Y)
        if key not in self._memo:
            out = []
            for i, s in enumerate(X):
                for j, t in enumerate(Y):
                    if self.interval_hom_dim(s, t):
                        out.append(Morphism(self, X, Y, self._interval_map(X, i, Y, j)))
            self._memo[key] = out
        return list(self._memo[key])

    def hom_orders(self, X, Y):
        return [self.p] * len(self.hom_basis(X, Y))

    def rep_hom_basis(self, r1: QuiverRep, r2: QuiverRep) -> list[tuple[np.ndarray, ...]]:
        """Intertwiners ``r1 -> r2`` by solving the commutation equations directly."""
        system, blocks = self._intertwiner_system(r1, r2)
        nvars = sum(r * c for r, c in blocks)
        if system.shape[0] == 0:
            ns = Subspace.full(self.F, nvars)
        else:
            ns = self.F.nullspace(system)
        out = []
        for vecx in ns.basis:
            mats, off = [], 0
            for r, c in blocks:
                mats.append(vecx[off : off + r * c].reshape(r, c).copy())
                off += r * c
            out.append(tuple(mats))
        return out

    def _intertwiner_system(self, r1: QuiverRep, r2: QuiverRep):
        blocks = [(r2.dims[v], r1.dims[v]) for v in range(self.n)]
        offsets = np.cumsum([0] + [r * c for r, c in blocks])
        rows = []
        for v in range(self.n - 1):
            d1v, d2w = r1.dims[v], r2.dims[v + 1]
            if d1v == 0 or d2w == 0:
                continue
            eq = np.zeros((d2w * d1v, offsets[-1]), dtype=np.int64)
            # r2.maps[v] @ phi_v - phi_{v+1} @ r1.maps[v] = 0, row-major vec
            if r2.dims[v]:
                eq[:, offsets[v] : offsets[v + 1]] = np.kron(r2.maps[v], np.eye(d1v, dtype=np.int64))
            if r1.dims[v + 1]:
                eq[:, offsets[v + 1] : offsets[v + 2]] = -np.kron(
                    np.eye(d2w, dtype=np.int64), r1.maps[v].T
                )
            rows.append(eq % self.p)
        system = np.vstack(rows) if rows else np.zeros((0, int(offsets[-1])), dtype=np.int64)
        return system, blocks

    def rep_ext_dim(self, m: QuiverRep, n_: QuiverRep) -> int:
        """dim Ext^1(m, n_) for the path algebra (no relations).

        Uses the standard two-term complex ``sum_v Hom(M_v, N_v) ->
        sum_arrows Hom(M_v, N_{v+1})``: its kernel is Hom and its cokernel Ext^1.
        """
        system, _ = self._intertwiner_system(m, n_)
        target = sum(n_.dims[v + 1] * m.dims[v] for v in range(self.n - 1))
        return target - (self.F.rank(system) if system.size else 0)

    def rep_extensions(self, m: QuiverRep, n_: QuiverRep) -> list[QuiverRep]:
        """Middle terms of extensions ``0 -> n_ -> E -> m -> 0`` for a basis of Ext^1."""
        full_rows = []
        for v in range(self.n - 1):
            d1v, d2w = m.dims[v], n_.dims[v + 1]
            if d1v and d2w:
                full_rows.append((v, d2w, d1v))
        target = sum(r * c for _, r, c in full_rows)
        system, blocks = self._intertwiner_system(m, n_)
        img = Subspace.from_rows(self.F, system.T, target) if system.size else Subspace.zero(self.F, target)
        out = []
        for xi in Subspace.full(self.F, target).quotient_basis(img):
            maps, off = [], 0
            xmats = {}
            for v, r, c in full_rows:
                xmats[v] = xi[off : off + r * c].reshape(r, c)
                off += r * c
            for v in range(self.n - 1):
                top = np.concatenate(
                    [n_.maps[v], xmats.get(v, np.zeros((n_.dims[v + 1], m.dims[v]), dtype=np.int64))],
                    axis=1,
                )
                bot = np.concatenate(
                    [np.zeros((m.dims[v + 1], n_.dims[v]), dtype=np.int64), m.maps[v]], axis=1
                )
                maps.append(np.vstack([top, bot]) % self.p)
            dims = tuple(n_.dims[v] + m.dims[v] for v in range(self.n))
            out.append(QuiverRep(dims, tuple(maps)))
        return out

    # --------------------------------------------------- decomposition
    def iso_type(self, rep: QuiverRep) -> Obj:
        """Multiset of interval summands, from ranks of path maps."""
        n = self.n
        r = {}
        for a in range(n):
            for b in range(a, n):
                r[(a, b)] = self.F.rank(rep.composite(self.F, a, b)) if rep.dims[a] and rep.dims[b] else 0

        def rk(a, b):
            if a < 0 or b >= n:
                return 0
            return r[(a, b)]

        summands = []
        for a in range(n):
            for b in range(a, n):
                mult = rk(a, b) - rk(a - 1, b) - rk(a, b + 1) + rk(a - 1, b + 1)
                if mult < 0:
                    raise TheoremViolation("negative interval multiplicity")
                if mult and (self.max_len is not None and b - a + 1 > self.max_len):
                    raise ValueError("representation violates the length relation")
                summands.extend([self.from_interval(a + 1, b + 1)] * mult)
        return Obj(tuple(summands))

    def decompose(self, rep: QuiverRep) -> tuple[Obj, tuple[np.ndarray, ...]]:
        """Interval decomposition with an explicit isomorphism ``canonical -> rep``.

        Generators of the summands with top at ``a`` are chosen in the
        kernel filtration of the path maps out of ``V_a``, modulo the image
        arriving from ``V_{a-1}``; their orbits give the new basis.
        """
        F, n = self.F, self.n
        gens = []  # (a, b, vector) 0-based
        for a in range(n):
            da = rep.dims[a]
            if da == 0:
                continue
            if a > 0 and rep.dims[a - 1]:
                incoming = Subspace.from_rows(F, rep.maps[a - 1].T, da)
            else:
                incoming = Subspace.zero(F, da)
            acc = incoming
            for b in range(a, n):
                if b + 1 < n:
                    K = F.nullspace(rep.composite(F, a, b + 1))
                else:
                    K = Subspace.full(F, da)
                for x in K.basis:
                    if x not in acc:
                        gens.append((a, b, x))
                        acc = acc + Subspace.from_rows(F, x.reshape(1, -1), da)
        items = sorted(
            ((self.from_interval(a + 1, b + 1), a, b, x) for a, b, x in gens), key=lambda t: t[0]
        )
        X = Obj(tuple(t[0] for t in items))
        dims, pos = self.layout(X)
        if dims != rep.dims:
            raise TheoremViolation(f"decomposition dims {dims} != {rep.dims}")
        phi = [np.zeros((rep.dims[v], rep.dims[v]), dtype=np.int64) for v in range(n)]
        for i, (_, a, b, x) in enumerate(items):
            cur = x
            for v in range(a, b + 1):
                phi[v][:, pos[(i, v)]] = cur
                if v + 1 <= b:
                    cur = F.matmul(rep.maps[v], cur.reshape(-1, 1)).reshape(-1)
        canon = self.to_rep(X)
        for v in range(n):
            if rep.dims[v] and F.rank(phi[v]) != rep.dims[v]:
                raise TheoremViolation("decomposition basis is not invertible")
        for v in range(n - 1):
            if not np.array_equal(F.matmul(rep.maps[v], phi[v]), F.matmul(phi[v + 1], canon.maps[v])):
                raise TheoremViolation("decomposition basis does not intertwine")
        return X, tuple(phi)

    # ---------------------------------------------- kernels / cokernels
    def _restrict(self, rep: QuiverRep, bases: Sequence[np.ndarray]) -> QuiverRep:
        """Subrepresentation spanned by the columns of ``bases[v]``."""
        maps = []
        for v in range(self.n - 1):
            k0, k1 = bases[v].shape[1], bases[v + 1].shape[1]
            if k0 == 0 or k1 == 0:
                if k0 and np.any(self.F.matmul(rep.maps[v], bases[v])):
                    raise ValueError("subspaces are not invariant")
                maps.append(np.zeros((k1, k0), dtype=np.int64))
                continue
            img = self.F.matmul(rep.maps[v], bases[v])
            sol = self.F.solve(bases[v + 1], img)
            if sol is None:
                raise ValueError("subspaces are not invariant")
            maps.append(sol)
        return QuiverRep(tuple(b.shape[1] for b in bases), tuple(maps))

    def _quotient(self, rep: QuiverRep, bases: Sequence[np.ndarray]):
        """Quotient by invariant subspaces: (quotient rep, projection matrices)."""
        qs, sections = [], []
        for v in range(self.n):
            d = rep.dims[v]
            if bases[v].shape[1]:
                q = self.F.left_nullspace(bases[v]).basis
            else:
                q = np.eye(d, dtype=np.int64)
            qs.append(q)
            sections.append(self.F.solve(q, np.eye(q.shape[0], dtype=np.int64)) if q.shape[0] else np.zeros((d, 0), dtype=np.int64))
        maps = []
        for v in range(self.n - 1):
            maps.append(self.F.matmul(self.F.matmul(qs[v + 1], rep.maps[v]), sections[v]))
        return QuiverRep(tuple(q.shape[0] for q in qs), tuple(maps)), qs

    def kernel(self, f: Morphism):
        rx = self.to_rep(f.source)
        bases = []
        for v in range(self.n):
            dx = rx.dims[v]
            fv = f.data[v]
            if dx == 0:
                bases.append(np.zeros((0, 0), dtype=np.int64))
            elif fv.shape[0] == 0:
                bases.append(np.eye(dx, dtype=np.int64))
            else:
                bases.append(self.F.nullspace(fv).basis.T.copy())
        sub = self._restrict(rx, bases)
        K, phi = self.decompose(sub)
        data = tuple(self.F.matmul(bases[v], phi[v]) if bases[v].size else np.zeros((rx.dims[v], 0), dtype=np.int64) for v in range(self.n))
        return K, Morphism(self, K, f.source, data)

    def cokernel(self, f: Morphism):
        ry = self.to_rep(f.target)
        bases = []
        for v in range(self.n):
            fv = f.data[v]
            dy = ry.dims[v]
            if fv.size == 0:
                bases.append(np.zeros((dy, 0), dtype=np.int64))
            else:
                sp = Subspace.from_rows(self.F, fv.T, dy)
                bases.append(sp.basis.T.copy())
        quot, qs = self._quotient(ry, bases)
        Q, phi = self.decompose(quot)
        data = []
        for v in range(self.n):
            if quot.dims[v]:
                data.append(self.F.matmul(self.F.inverse(phi[v]), qs[v]))
            else:
                data.append(np.zeros((0, ry.dims[v]), dtype=np.int64))
        return Q, Morphism(self, f.target, Q, tuple(data))

    def is_mono(self, f):
        return all(self.F.rank(m) == m.shape[1] for m in f.data if m.shape[1])

    def is_epi(self, f):
        return all(self.F.rank(m) == m.shape[0] for m in f.data if m.shape[0])

    def lift(self, f, m):
        if not self.is_mono(m):
            return super().lift(f, m)
        data = []
        for v in range(self.n):
            mv, fv = m.data[v], f.data[v]
            if mv.shape[1] == 0:
                if np.any(fv):
                    return None
                data.append(np.zeros((0, fv.shape[1]), dtype=np.int64))
                continue
            sol = self.F.solve(mv, fv)
            if sol is None:
                return None
            data.append(sol)
        return Morphism(self, f.source, m.source, tuple(data))

    def colift(self, f, e):
        if not self.is_epi(e):
            return super().colift(f, e)
        data = []
        for v in range(self.n):
            ev, fv = e.data[v], f.data[v]
            if ev.shape[0] == 0:
                if np.any(fv):
                    return None
                data.append(np.zeros((fv.shape[0], 0), dtype=np.int64))
                continue
            sol = self.F.solve(ev.T, fv.T)
            if sol is None:
                return None
            data.append(sol.T.copy())
        return Morphism(self, e.target, f.target, tuple(data))

    def inverse(self, f):
        if not (self.is_mono(f) and self.is_epi(f)):
            raise ValueError("morphism is not invertible")
        return Morphism(
            self, f.target, f.source, tuple(self.F.inverse(m) if m.size else m.T.copy() for m in f.data)
        )

    # ------------------------------------------------------- subobjects
    def invariant_subspaces(self, rep: QuiverRep) -> list[tuple[np.ndarray, ...]]:
        """All tuples of subspaces (as column bases) closed under the arrows."""
        F, n = self.F, self.n
        bound = 1
        for d in rep.dims:
            bound *= count_subspaces(self.p, d)
        out: list[tuple[np.ndarray, ...]] = []
        visited = [0]

        def rec(v: int, chosen: list[np.ndarray]):
            visited[0] += 1
            if visited[0] > self.subobject_cap:
                raise BoundExceeded(
                    f"subobject enumeration exceeds {self.subobject_cap} nodes (dims {rep.dims})"
                )
            if v == n:
                out.append(tuple(chosen))
                return
            d = rep.dims[v]
            if v > 0 and chosen[v - 1].shape[1] and d:
                lower = Subspace.from_rows(F, F.matmul(rep.maps[v - 1], chosen[v - 1]).T, d)
            else:
                lower = Subspace.zero(F, d)
            comp = Subspace.full(F, d).quotient_basis(lower)
            for s in all_subspaces(self.p, comp.shape[0]):
                rows = np.vstack([lower.basis, F.matmul(s, comp)]) if s.shape[0] else lower.basis
                U = Subspace.from_rows(F, rows, d)
                rec(v + 1, chosen + [U.basis.T.copy()])

        if bound > 50 * self.subobject_cap:
            raise BoundExceeded(f"subobject enumeration bound {bound} too large (dims {rep.dims})")
        rec(0, [])
        return out

    def rep_submodules(self, rep: QuiverRep) -> list[QuiverRep]:
        return [self._restrict(rep, bases) for bases in self.invariant_subspaces(rep)]

    def subobjects(self, X: Obj) -> list[Morphism]:
        key = ("subobjects", X)
        if key not in self._memo:
            rep = self.to_rep(X)
            monos = []
            for bases in self.invariant_subspaces(rep):
                sub = self._restrict(rep, bases)
                A, phi = self.decompose(sub)
                data = tuple(
                    self.F.matmul(bases[v], phi[v]) if bases[v].size else np.zeros((rep.dims[v], 0), dtype=np.int64)
                    for v in range(self.n)
                )
                monos.append(Morphism(self, A, X, data))
            self._memo[key] = monos
        return list(self._memo[key])

    def ses_types(self, X: Obj):
        key = ("ses_types", X)
        if key not in self._memo:
            rep = self.to_rep(X)
            out = set()
            for bases in self.invariant_subspaces(rep):
                sub = self._restrict(rep, bases)
                quot, _ = self._quotient(rep, bases)
                out.add((self.iso_type(sub), self.iso_type(quot)))
            self._memo[key] = frozenset(out)
        return self._memo[key]

    # ------------------------------------------------- traces (fast path)
    def trace_bases(self, X: Obj, members: Sequence) -> list[np.ndarray]:
        """Per-vertex column bases of the sum of images of all maps from members."""
        dims = self.dim_vector(X)
        rows = [np.zeros((0, dims[v]), dtype=np.int64) for v in range(self.n)]
        for t in members:
            for b in self.hom_basis(Obj.of(t), X):
                for v in range(self.n):
                    if b.data[v].size:
                        rows[v] = np.vstack([rows[v], b.data[v].T])
        return [Subspace.from_rows(self.F, rows[v], dims[v]).basis.T.copy() for v in range(self.n)]

    def trace(self, X: Obj, members: Sequence) -> tuple[Obj, Morphism]:
        rep = self.to_rep(X)
        bases = self.trace_bases(X, members)
        I, phi = self.decompose(self._restrict(rep, bases))
        data = tuple(
            self.F.matmul(bases[v], phi[v]) if bases[v].size else np.zeros((rep.dims[v], 0), dtype=np.int64)
            for v in range(self.n)
        )
        return I, Morphism(self, I, X, data)

    def trace_type(self, X: Obj, members: Sequence) -> tuple[Obj, Obj]:
        rep = self.to_rep(X)
        bases = self.trace_bases(X, members)
        quot, _ = self._quotient(rep, bases)
        return self.iso_type(self._restrict(rep, bases)), self.iso_type(quot)

    # ----------------------------------------------------------- spans
    def _gens_matrix(self, gens: Sequence[Morphism], width: int) -> np.ndarray:
        if not gens:
            return np.zeros((0, width), dtype=np.int64)
        return np.vstack([self.vec(g) for g in gens])

    def span_contains(self, f, gens):
        v = self.vec(f)
        c = self.F.coefficients(self._gens_matrix(gens, v.size), v)
        return None if c is None else [int(x) for x in c]

    def span_size(self, gens, X, Y):
        width = self.vec(self.zero(X, Y)).size
        return self.p ** self.F.rank(self._gens_matrix(gens, width))

    def span_dim(self, gens, X, Y) -> int:
        width = self.vec(self.zero(X, Y)).size
        return self.F.rank(self._gens_matrix(gens, width))

    def span_subset(self, gens_a, gens_b):
        if not gens_a:
            return True
        width = self.vec(gens_a[0]).size
        B = self._gens_matrix(gens_b, width)
        rb = self.F.rank(B)
        return self.F.rank(np.vstack([B, self._gens_matrix(gens_a, width)])) == rb

    def span_preimage(self, X, Y, phi: Callable[[Morphism], Morphism], target_gens):
        basis = self.hom_basis(X, Y)
        if not basis:
            return []
        imgs = [self.vec(phi(b)) for b in basis]
        width = imgs[0].size
        if width == 0:
            return basis
        T = self._gens_matrix(target_gens, width)
        M = np.concatenate([np.vstack(imgs).T, (-T.T) % self.p], axis=1)
        ns = self.F.nullspace(M)
        coeffs = Subspace.from_rows(self.F, ns.basis[:, : len(basis)], len(basis)).basis
        return [self.combine(c, basis, X, Y) for c in coeffs]
