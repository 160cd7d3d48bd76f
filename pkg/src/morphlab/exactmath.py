"""Exact linear algebra over prime fields, subspaces and Gaussian binomials.

Vectors are tuples of ints in ``range(q)``.  Matrices are stored row-major as
tuples of such vectors.  Everything here is immutable and pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DEFAULT_MAX_POINTS, ResourceCapError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"q={self.q} is not prime")

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def inv(self, x: int) -> int:
        return pow(x % self.q, -1, self.q)

    def primitive_root(self) -> int:
        return primitive_root(self.q)


@lru_cache(maxsize=None)
def primitive_root(q: int) -> int:
    if q == 2:
        return 1
    factors = [p for p in range(2, q) if (q - 1) % p == 0 and is_prime(p)]
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in factors):
            return g
    raise ValueError(q)


# --------------------------------------------------------------------------
# row reduction on plain lists


def _rref_rows(rows: Iterable[Sequence[int]], ncols: int, q: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[x % q for x in r] for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, q)
        if inv != 1:
            m[r] = [(x * inv) % q for x in m[r]]
        pr = m[r]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % q for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def rank_of(rows: Iterable[Sequence[int]], ncols: int, q: int) -> int:
    return len(_rref_rows(rows, ncols, q)[1])


def nullspace_rows(rows: Sequence[Sequence[int]], ncols: int, q: int) -> list[tuple]:
    """Basis of {x : A x = 0} (column convention) as row vectors."""
    red, pivots = _rref_rows(rows, ncols, q)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(red, pivots):
            v[p] = (-row[f]) % q
        basis.append(tuple(v))
    return basis


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], q: int) -> tuple:
    bt = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % q for col in bt) for row in a)


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int], q: int) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) % q for row in a)


def identity_rows(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_inverse(a: Sequence[Sequence[int]], q: int):
    """Inverse of a square matrix, or ``None`` when singular."""
    n = len(a)
    aug = [list(a[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    red, pivots = _rref_rows(aug, 2 * n, q)
    if pivots[:n] != list(range(n)) or len(red) < n:
        return None
    return tuple(tuple(row[n:]) for row in red)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FqMatrix:
    q: int
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows, q: int, ncols: int | None = None) -> "FqMatrix":
        rows = tuple(tuple(int(x) % q for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(q, rows, ncols)

    @classmethod
    def identity(cls, n: int, q: int) -> "FqMatrix":
        return cls(q, identity_rows(n), n)

    @classmethod
    def zero(cls, nrows: int, ncols: int, q: int) -> "FqMatrix":
        return cls(q, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        if self.ncols != other.nrows or self.q != other.q:
            raise ValueError("shape mismatch")
        return FqMatrix(self.q, mat_mul(self.rows, other.rows, self.q), other.ncols)

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        q = self.q
        return FqMatrix(q, tuple(tuple((x + y) % q for x, y in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "FqMatrix") -> "FqMatrix":
        q = self.q
        return FqMatrix(q, tuple(tuple((x - y) % q for x, y in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def apply(self, v: Sequence[int]) -> tuple:
        return mat_vec(self.rows, v, self.q)

    def transpose(self) -> "FqMatrix":
        return FqMatrix(self.q, tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def rank(self) -> int:
        return rank_of(self.rows, self.ncols, self.q)

    def inverse(self) -> "FqMatrix":
        inv = mat_inverse(self.rows, self.q)
        if inv is None:
            raise ZeroDivisionError("singular matrix")
        return FqMatrix(self.q, inv, self.nrows)

    def kernel(self) -> "Subspace":
        return Subspace.span(nullspace_rows(self.rows, self.ncols, self.q), self.ncols, self.q)

    def column_space(self) -> "Subspace":
        return Subspace.span(self.transpose().rows, self.nrows, self.q)


def rref(m: FqMatrix) -> tuple[FqMatrix, int]:
    """Canonical reduced row echelon form (zero rows kept at the bottom) and rank."""
    red, pivots = _rref_rows(m.rows, m.ncols, m.q)
    rk = len(pivots)
    padded = tuple(red) + tuple((0,) * m.ncols for _ in range(m.nrows - rk))
    return FqMatrix(m.q, padded, m.ncols), rk


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^ambient_dim stored by its canonical RREF basis."""

    q: int
    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], ambient_dim: int, q: int) -> "Subspace":
        red, _ = _rref_rows(vectors, ambient_dim, q)
        return cls(q, ambient_dim, tuple(red))

    @classmethod
    def zero(cls, ambient_dim: int, q: int) -> "Subspace":
        return cls(q, ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int, q: int) -> "Subspace":
        return cls(q, ambient_dim, identity_rows(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return rank_of(self.basis + (tuple(v),), self.ambient_dim, self.q) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        if self.dim > other.dim:
            return False
        return rank_of(other.basis + self.basis, self.ambient_dim, self.q) == other.dim

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim, self.q)

    def annihilator(self) -> "Subspace":
        return Subspace.span(nullspace_rows(self.basis, self.ambient_dim, self.q),
                             self.ambient_dim, self.q)

    def __and__(self, other: "Subspace") -> "Subspace":
        if self <= other:
            return self
        if other <= self:
            return other
        return (self.annihilator() + other.annihilator()).annihilator()

    def image(self, m: FqMatrix) -> "Subspace":
        """Image under ``v -> m v`` (m maps this ambient space to another)."""
        return Subspace.span((m.apply(b) for b in self.basis), m.nrows, self.q)

    def points(self) -> Iterator[tuple]:
        n = self.ambient_dim
        q = self.q
        if not self.basis:
            yield (0,) * n
            return
        for coeffs in itertools.product(range(q), repeat=self.dim):
            yield tuple(sum(c * b[i] for c, b in zip(coeffs, self.basis)) % q
                        for i in range(n))


# --------------------------------------------------------------------------


def gauss_binomial(b: int, m: int, q: int) -> int:
    """Number of m-dimensional subspaces of F_q^b (0 when m > b)."""
    if m < 0 or m > b:
        return 0
    num = 1
    den = 1
    for i in range(m):
        num *= q**b - q**i
        den *= q**m - q**i
    return num // den


def qbinomial_identity_check(b: int, q: int) -> bool:
    """q-binomial theorem at t = -1: sum_k (-1)^k q^{k(k-1)/2} [b,k]_q == 0."""
    if b < 1:
        raise ValueError("b must be positive")
    total = sum((-1)**k * q**(k * (k - 1) // 2) * gauss_binomial(b, k, q)
                for k in range(b + 1))
    return total == 0


def enumerate_subspaces(b: int, m: int, q: int, cap: int = DEFAULT_MAX_POINTS) -> list[Subspace]:
    """All m-dimensional subspaces of F_q^b, generated directly in RREF."""
    if not 0 <= m <= b:
        raise ValueError(f"need 0 <= m <= b, got m={m}, b={b}")
    if q**b > cap:
        raise ResourceCapError("subspace ambient points", q**b, cap)
    out = []
    for pivots in itertools.combinations(range(b), m):
        # free positions: right of the pivot in each row, outside pivot columns
        free = [(i, c) for i, p in enumerate(pivots)
                for c in range(p + 1, b) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * b for _ in range(m)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), x in zip(free, vals):
                rows[i][c] = x
            out.append(Subspace(q, b, tuple(tuple(r) for r in rows)))
    return out


@lru_cache(maxsize=None)
def all_subspaces(b: int, q: int) -> tuple:
    """Every subspace of F_q^b ordered by dimension then RREF."""
    return tuple(s for m in range(b + 1) for s in enumerate_subspaces(b, m, q))


def vectors(dim: int, q: int) -> Iterator[tuple]:
    return itertools.product(range(q), repeat=dim)
