"""Exact linear algebra over prime fields GF(p) plus a few integer helpers.

Matrices are plain ``numpy`` integer arrays; every routine reduces its input
mod ``p`` first, so callers may pass unreduced or negative entries.  Vectors
are rows: a ``Subspace`` stores its basis as the rows of a ``k x n`` array in
reduced row echelon form, which makes equality of subspaces a plain array
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import reduce as _reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "PrimeField",
    "Subspace",
    "GF2",
    "factorize",
    "is_prime",
    "is_prime_power",
    "prime_of",
    "lcm",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation ``{p: e}`` of a positive integer."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    k = 2
    while k * k <= n:
        while n % k == 0:
            out[k] = out.get(k, 0) + 1
            n //= k
        k += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime_power(n: int) -> bool:
    return n > 1 and len(factorize(n)) == 1


def prime_of(q: int) -> int:
    """The prime ``p`` with ``q = p**e``; raises for non prime powers."""
    f = factorize(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    return next(iter(f))


def lcm(values: Iterable[int]) -> int:
    return _reduce(lambda a, b: a * b // gcd(a, b), values, 1)


@dataclass(frozen=True)
class PrimeField:
    """Arithmetic in GF(p)."""

    p: int = 2

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"field characteristic must be prime, got {self.p}")

    # -- basic helpers -------------------------------------------------
    def mat(self, rows: Sequence[Sequence[int]] | np.ndarray, shape=None) -> np.ndarray:
        a = np.array(rows, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        return a % self.p

    def zeros(self, r: int, c: int) -> np.ndarray:
        return np.zeros((r, c), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def inv_scalar(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(int(a), -1, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        return (a @ b) % self.p

    # -- elimination ---------------------------------------------------
    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        a = np.array(m, dtype=np.int64) % self.p
        if a.ndim != 2:
            raise ValueError("rref expects a 2-d array")
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            if a[r, c] != 1:
                a[r] = (a[r] * self.inv_scalar(int(a[r, c]))) % self.p
            col = a[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit] = (a[hit] - np.outer(col[hit], a[r])) % self.p
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, m: np.ndarray) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def nullspace(self, m: np.ndarray) -> "Subspace":
        """Right kernel ``{x : m x = 0}``."""
        m = np.asarray(m, dtype=np.int64)
        cols = m.shape[1]
        if m.shape[0] == 0 or cols == 0:
            return Subspace.full(self, cols)
        r, pivots = self.rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for k, fc in enumerate(free):
            basis[k, fc] = 1
            for row, pc in enumerate(pivots):
                basis[k, pc] = (-r[row, fc]) % self.p
        return Subspace.from_rows(self, basis, cols)

    def left_nullspace(self, m: np.ndarray) -> "Subspace":
        return self.nullspace(np.asarray(m).T)

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """One solution of ``a x = b`` or ``None``.  ``b`` may be a vector or matrix."""
        a = np.asarray(a, dtype=np.int64) % self.p
        b = np.asarray(b, dtype=np.int64) % self.p
        vec = b.ndim == 1
        bm = b.reshape(-1, 1) if vec else b
        rows, cols = a.shape
        if bm.shape[0] != rows:
            raise ValueError("shape mismatch in solve")
        if rows == 0:
            x = np.zeros((cols, bm.shape[1]), dtype=np.int64)
            return x[:, 0] if vec else x
        aug = np.concatenate([a, bm], axis=1)
        r, pivots = self.rref(aug)
        if any(pc >= cols for pc in pivots):
            return None
        x = np.zeros((cols, bm.shape[1]), dtype=np.int64)
        for row, pc in enumerate(pivots):
            x[pc] = r[row, cols:]
        return x[:, 0] if vec else x

    def inverse(self, m: np.ndarray) -> np.ndarray:
        m = np.asarray(m, dtype=np.int64)
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(m, self.eye(n))
        if x is None or self.rank(m) != n:
            raise ValueError("matrix is singular")
        return x

    def span(self, vectors: np.ndarray | Sequence[Sequence[int]], dim: int) -> "Subspace":
        return Subspace.from_rows(self, np.asarray(vectors, dtype=np.int64).reshape(-1, dim), dim)

    def coefficients(self, gens: np.ndarray, v: np.ndarray) -> np.ndarray | None:
        """Coefficients ``c`` with ``c @ gens == v`` (rows of ``gens`` are generators)."""
        v = np.asarray(v, dtype=np.int64).reshape(-1)
        gens = np.asarray(gens, dtype=np.int64)
        if v.size == 0:
            return np.zeros(gens.shape[0] if gens.ndim == 2 else 0, dtype=np.int64)
        gens = gens.reshape(-1, v.size)
        if gens.shape[0] == 0:
            return np.zeros(0, dtype=np.int64) if not np.any(np.asarray(v) % self.p) else None
        return self.solve(gens.T, np.asarray(v))

    def random_matrix(self, rng: np.random.Generator, r: int, c: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(r, c), dtype=np.int64)


GF2 = PrimeField(2)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^n, basis rows kept in reduced echelon form."""

    field: PrimeField
    ambient_dim: int
    basis: np.ndarray = dc_field(repr=False)

    @classmethod
    def from_rows(cls, F: PrimeField, rows: np.ndarray, dim: int) -> "Subspace":
        rows = np.asarray(rows, dtype=np.int64)
        if rows.size == 0 or dim == 0:
            return cls(F, dim, np.zeros((0, dim), dtype=np.int64))
        rows = rows.reshape(-1, dim)
        if rows.shape[0] == 0:
            return cls(F, dim, np.zeros((0, dim), dtype=np.int64))
        r, piv = F.rref(rows)
        return cls(F, dim, r[: len(piv)])

    @classmethod
    def zero(cls, F: PrimeField, dim: int) -> "Subspace":
        return cls(F, dim, np.zeros((0, dim), dtype=np.int64))

    @classmethod
    def full(cls, F: PrimeField, dim: int) -> "Subspace":
        return cls(F, dim, np.eye(dim, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.tobytes()))

    def __contains__(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1) % self.field.p
        if self.dim == 0:
            return not np.any(v)
        return self.field.rank(np.vstack([self.basis, v])) == self.dim

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        if other.dim == 0:
            return True
        return self.field.rank(np.vstack([self.basis, other.basis])) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_rows(self.field, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        # x = a.A = b.B  <=>  (a, b) in ker [A^T | -B^T]
        m = np.concatenate([self.basis.T, (-other.basis.T) % self.field.p], axis=1)
        ns = self.field.nullspace(m)
        vecs = self.field.matmul(ns.basis[:, : self.dim], self.basis)
        return Subspace.from_rows(self.field, vecs, self.ambient_dim)

    def quotient_basis(self, sub: "Subspace | None" = None) -> np.ndarray:
        """Rows lifting a basis of ``self / sub`` (``sub`` defaults to 0).

        Called on the full space with ``sub = A`` this lifts a basis of
        ambient/A, i.e. a complement of ``A``.
        """
        sub = sub if sub is not None else Subspace.zero(self.field, self.ambient_dim)
        self._check(sub)
        if not self.contains(sub):
            raise ValueError("quotient_basis: sub is not contained in self")
        chosen: list[np.ndarray] = []
        acc = sub.basis
        r = sub.dim
        for v in self.basis:
            trial = np.vstack([acc, v]) if acc.size else v.reshape(1, -1)
            rk = self.field.rank(trial)
            if rk > r:
                chosen.append(v)
                acc, r = trial, rk
        if not chosen:
            return np.zeros((0, self.ambient_dim), dtype=np.int64)
        return np.array(chosen, dtype=np.int64)

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the stored basis; raises if ``v`` is outside."""
        c = self.field.coefficients(self.basis, np.asarray(v))
        if c is None:
            raise ValueError("vector not in subspace")
        return c
