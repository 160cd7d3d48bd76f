"""The characteristic-function algebra B_X of a finite subobject lattice.

B_X has basis chi_Y for the subobjects Y of X and product
chi_Y1 * chi_Y2 = chi_(Y1 meet Y2); chi_X is the unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .errors import (DEFAULT_MAX_POINTS, FalsificationError, LatticeMismatchError,
                     ResourceCapError)
from .exactmath import Subspace, all_subspaces, gauss_binomial


class SubobjectLattice:
    """A finite meet-semilattice with a top element, meet tabulated once."""

    def __init__(self, elements: Sequence[Hashable], meet: Callable, top=None):
        self.elements = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate lattice elements")
        k = len(self.elements)
        table = [[0] * k for _ in range(k)]
        for i in range(k):
            table[i][i] = i
            for j in range(i + 1, k):
                m = self.index[meet(self.elements[i], self.elements[j])]
                table[i][j] = table[j][i] = m
        self.meet = table
        if top is None:
            tops = [i for i in range(k) if all(table[i][j] == j for j in range(k))]
            if len(tops) != 1:
                raise ValueError("lattice has no unique top")
            self.top = tops[0]
        else:
            self.top = self.index[top]

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return self.meet[i][j] == i

    def bottom(self) -> int:
        k = len(self)
        b = self.top
        for i in range(k):
            b = self.meet[b][i]
        return b

    def maximal_below(self, i: int) -> list[int]:
        """Indices of the maximal elements strictly below element i."""
        below = [j for j in range(len(self)) if j != i and self.leq(j, i)]
        return [j for j in below
                if not any(k != j and self.leq(j, k) for k in below)]

    def interval_above(self, i: int) -> "SubobjectLattice":
        """The sublattice {Z : Z >= element i}, i.e. the lattice of X / Y."""
        elems = [x for j, x in enumerate(self.elements) if self.leq(i, j)]
        idx = self.index
        meet = self.meet
        els = self.elements
        return SubobjectLattice(elems, lambda a, b: els[meet[idx[a]][idx[b]]],
                                top=self.elements[self.top])

    # algebra elements ---------------------------------------------------
    def chi(self, x) -> "LatticeElement":
        i = x if isinstance(x, int) else self.index[x]
        coeffs = [0] * len(self)
        coeffs[i] = 1
        return LatticeElement(self, tuple(coeffs))

    def one(self) -> "LatticeElement":
        return self.chi(self.top)

    def zero(self) -> "LatticeElement":
        return LatticeElement(self, (0,) * len(self))


@dataclass(frozen=True, eq=False)
class LatticeElement:
    lattice: SubobjectLattice
    coeffs: tuple

    def _check(self, other: "LatticeElement"):
        if other.lattice is not self.lattice:
            raise LatticeMismatchError("elements live in different lattices")

    def __add__(self, other: "LatticeElement") -> "LatticeElement":
        self._check(other)
        return LatticeElement(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LatticeElement") -> "LatticeElement":
        self._check(other)
        return LatticeElement(self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "LatticeElement":
        return LatticeElement(self.lattice, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "LatticeElement") -> "LatticeElement":
        return bx_multiply(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LatticeElement) and other.lattice is self.lattice
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def coefficient(self, x) -> object:
        i = x if isinstance(x, int) else self.lattice.index[x]
        return self.coeffs[i]

    def evaluate_all_ones(self):
        """Image under the homomorphism sending every chi_Y to 1."""
        return sum(self.coeffs)


def bx_multiply(a: LatticeElement, b: LatticeElement) -> LatticeElement:
    a._check(b)
    lat = a.lattice
    out = [0] * len(lat)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        row = lat.meet[i]
        for j, y in enumerate(b.coeffs):
            if y:
                out[row[j]] += x * y
    return LatticeElement(lat, tuple(out))


def product_of_complements(lattice: SubobjectLattice, factors: Sequence[int]) -> LatticeElement:
    """prod_i (1 - chi_{Y_i}) expanded one factor at a time."""
    cur = {lattice.top: 1}
    meet = lattice.meet
    for f in factors:
        nxt = dict(cur)
        row = meet[f]
        for i, c in cur.items():
            j = row[i]
            nxt[j] = nxt.get(j, 0) - c
        cur = {i: c for i, c in nxt.items() if c}
    coeffs = [0] * len(lattice)
    for i, c in cur.items():
        coeffs[i] = c
    return LatticeElement(lattice, tuple(coeffs))


def quotient_embedding(lattice: SubobjectLattice, y) -> tuple[SubobjectLattice, Callable]:
    """Lattice of X/Y (as the interval above Y) and the algebra map B_{X/Y} -> B_X."""
    if not isinstance(y, int):
        if y not in lattice.index:
            raise LatticeMismatchError(f"{y!r} is not an element of the lattice")
        y = lattice.index[y]
    sub = lattice.interval_above(y)

    def embed(el: LatticeElement) -> LatticeElement:
        if el.lattice is not sub:
            raise LatticeMismatchError("element is not in the quotient lattice")
        coeffs = [0] * len(lattice)
        for x, c in zip(sub.elements, el.coeffs):
            coeffs[lattice.index[x]] += c
        return LatticeElement(lattice, tuple(coeffs))

    return sub, embed


# --------------------------------------------------------------------------
# the vector space case


_SUBSPACE_LATTICES: dict = {}


def subspace_lattice(b: int, q: int) -> SubobjectLattice:
    key = (b, q)
    if key not in _SUBSPACE_LATTICES:
        _SUBSPACE_LATTICES[key] = SubobjectLattice(all_subspaces(b, q), lambda u, w: u & w,
                                                   top=Subspace.full(b, q))
    return _SUBSPACE_LATTICES[key]


def hyperplane_product(b: int, q: int) -> LatticeElement:
    lat = subspace_lattice(b, q)
    hyper = [i for i, s in enumerate(lat.elements) if s.dim == b - 1]
    return product_of_complements(lat, hyper)


def hyperplane_product_coeffs(b: int, q: int, cap: int = DEFAULT_MAX_POINTS) -> list[int]:
    """Coefficients a_0..a_b of prod over hyperplanes V of F_q^b of (1 - chi_V).

    a_m is the common coefficient of chi_V over subspaces V of codimension m.
    """
    if b < 0:
        raise ValueError("b must be nonnegative")
    if q**b > cap:
        raise ResourceCapError("hyperplane product ambient points", q**b, cap)
    prod = hyperplane_product(b, q)
    lat = prod.lattice
    by_codim: dict[int, set] = {}
    for s, c in zip(lat.elements, prod.coeffs):
        by_codim.setdefault(b - s.dim, set()).add(c)
    out = []
    for m in range(b + 1):
        vals = by_codim.get(m, set())
        if len(vals) != 1:
            raise FalsificationError(
                "coefficient of chi_V depends on more than dim V",
                {"b": b, "q": q, "codim": m, "values": sorted(map(str, vals))})
        out.append(vals.pop())
    return out


def closed_form_coeff(m: int, q: int) -> int:
    return (-1)**m * q**(m * (m - 1) // 2)


def coefficient_recursion_sum(coeffs: Sequence[int], q: int) -> int:
    b = len(coeffs) - 1
    return sum(a * gauss_binomial(b, m, q) for m, a in enumerate(coeffs))
