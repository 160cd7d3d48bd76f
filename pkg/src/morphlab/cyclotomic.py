"""Exact arithmetic in cyclotomic fields Q(zeta_e).

An element is a rational vector over the power basis 1, z, ..., z^(phi(e)-1)
of Q(z), z = exp(2 pi i / e).  The representation is reduced modulo the
cyclotomic polynomial, so equal numbers have equal coefficient tuples.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (low degree first) by a monic divisor."""
    num = list(num)
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            quot[i - dq] = c
            for j, d in enumerate(den):
                num[i - dq + j] -= c * d
    return quot, num[:dq] or [0]


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, lowest degree first."""
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(poly)


def euler_phi(e: int) -> int:
    return sum(1 for k in range(1, e + 1) if gcd(k, e) == 1)


@lru_cache(maxsize=None)
def _power_table(e: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds the reduced coordinates of z^k, 0 <= k < e."""
    phi = cyclotomic_poly(e)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(e):
        rows.append(tuple(cur))
        # multiply by z and reduce with z^deg = -sum phi_j z^j
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:deg])]
    return tuple(rows)


def _reduce(e: int, powers: dict[int, object]) -> tuple:
    table = _power_table(e)
    deg = len(table[0])
    out = [0] * deg
    for k, c in powers.items():
        if c:
            row = table[k % e]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return tuple(_norm(x) for x in out)


@dataclass(frozen=True)
class Cyclotomic:
    e: int
    coeffs: tuple

    # construction -------------------------------------------------------
    @classmethod
    def from_rational(cls, x, e: int = 1) -> "Cyclotomic":
        deg = len(cyclotomic_poly(e)) - 1
        return cls(e, (_norm(Fraction(x)),) + (0,) * (deg - 1))

    @classmethod
    def root(cls, e: int, k: int = 1) -> "Cyclotomic":
        """z_e^k."""
        return cls(e, _reduce(e, {k % e: 1}))

    @classmethod
    def from_powers(cls, e: int, powers: dict[int, object]) -> "Cyclotomic":
        """sum_k powers[k] * z_e^k."""
        return cls(e, _reduce(e, powers))

    # structure ----------------------------------------------------------
    def lift(self, L: int) -> "Cyclotomic":
        if L == self.e:
            return self
        if L % self.e:
            raise ValueError(f"conductor {self.e} does not divide {L}")
        step = L // self.e
        return Cyclotomic(L, _reduce(L, {k * step: c for k, c in enumerate(self.coeffs)}))

    def _common(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_rational(other, self.e)
        if other.e == self.e:
            return self, other
        L = self.e * other.e // gcd(self.e, other.e)
        return self.lift(L), other.lift(L)

    def __add__(self, other) -> "Cyclotomic":
        a, b = self._common(other)
        return Cyclotomic(a.e, tuple(_norm(x + y) for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.e, tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> "Cyclotomic":
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other) -> "Cyclotomic":
        if not isinstance(other, Cyclotomic):
            c = Fraction(other)
            return Cyclotomic(self.e, tuple(_norm(x * c) for x in self.coeffs))
        a, b = self._common(other)
        prod: dict[int, object] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] = prod.get(i + j, 0) + x * y
        return Cyclotomic(a.e, _reduce(a.e, prod))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                raise NotImplementedError("division by an irrational cyclotomic")
            other = other.rational()
        c = Fraction(1) / Fraction(other)
        return self * c

    def conj(self) -> "Cyclotomic":
        return Cyclotomic(self.e, _reduce(self.e, {(-k) % self.e: c
                                                   for k, c in enumerate(self.coeffs)}))

    def galois(self, k: int) -> "Cyclotomic":
        """Image under z -> z^k, gcd(k, e) = 1."""
        return Cyclotomic(self.e, _reduce(self.e, {(j * k) % self.e: c
                                                   for j, c in enumerate(self.coeffs)}))

    # queries ------------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.from_rational(other, self.e)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # consistent with == only within one conductor (rationals always)
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.e, self.coeffs))

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.e)
        return sum(complex(float(c)) * z**k for k, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            base = "1" if k == 0 else (f"E({self.e})" if k == 1 else f"E({self.e})^{k}")
            if k == 0:
                t = str(c)
            elif c == 1:
                t = base
            elif c == -1:
                t = "-" + base
            else:
                t = f"{c}*{base}"
            terms.append(t)
        s = "+".join(terms)
        return s.replace("+-", "-")

    __repr__ = __str__
