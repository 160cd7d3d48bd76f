"""Finite groups by enumeration, conjugacy classes and exact character tables.

Character tables are computed with Dixon's method: the class-algebra
structure constants are diagonalised over a prime field F_p with
p = 1 mod exponent(G), and the resulting values are lifted to exact
cyclotomic numbers from the eigenvalue multiplicities of each element.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from .cyclotomic import Cyclotomic
from .errors import (DEFAULT_MAX_CLASSES, DEFAULT_MAX_GROUP_ORDER, FalsificationError,
                     ResourceCapError)
from .exactmath import _rref_rows, is_prime, mat_inverse, primitive_root


class FiniteGroup:
    """An enumerated group.  Elements are hashable values combined by ``mul``.

    Elements are kept in sorted order so that indices, class
    representatives and table layouts are reproducible.
    """

    def __init__(self, elements: Iterable[Hashable], mul: Callable, name: str = "",
                 generators: Sequence[Hashable] | None = None,
                 inverse: Callable | None = None):
        self.elements = sorted(set(elements))
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.mul = mul
        self.name = name
        self._inverse = inverse
        self._generators = list(generators) if generators is not None else None
        ids = [x for x in self.elements if mul(x, x) == x]
        if len(ids) != 1:
            raise ValueError("no unique identity element")
        self.identity = ids[0]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def __contains__(self, x) -> bool:
        return x in self.index

    def inv(self, x):
        if self._inverse is not None:
            return self._inverse(x)
        return self.elements[self.inverse_index[self.index[x]]]

    @cached_property
    def inverse_index(self) -> list[int]:
        out = [None] * self.order
        for i, x in enumerate(self.elements):
            if out[i] is not None:
                continue
            if self._inverse is not None:
                y = self._inverse(x)
            else:
                y = x
                prev = x
                while True:
                    nxt = self.mul(prev, x)
                    if nxt == self.identity:
                        y = prev
                        break
                    prev = nxt
                if x == self.identity:
                    y = x
            j = self.index[y]
            out[i] = j
            out[j] = i
        return out

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    @cached_property
    def generators(self) -> list:
        if self._generators is not None:
            return [g for g in self._generators if g != self.identity]
        gens: list = []
        sub = {self.identity}
        for x in self.elements:
            if x not in sub:
                gens.append(x)
                sub = _closure(gens, self.mul, self.identity, self.order + 1)
                if len(sub) == self.order:
                    break
        return gens

    # conjugacy ----------------------------------------------------------
    @cached_property
    def classes(self) -> list[list[int]]:
        """Conjugacy classes as sorted index lists, ordered by least element."""
        seen = [False] * self.order
        gens = self.generators
        ginv = [self.inv(g) for g in gens]
        mul = self.mul
        idx = self.index
        out = []
        for i in range(self.order):
            if seen[i]:
                continue
            seen[i] = True
            orbit = [i]
            stack = [self.elements[i]]
            while stack:
                x = stack.pop()
                for g, gi in zip(gens, ginv):
                    y = mul(mul(g, x), gi)
                    j = idx[y]
                    if not seen[j]:
                        seen[j] = True
                        orbit.append(j)
                        stack.append(y)
            out.append(sorted(orbit))
        return out

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for c, members in enumerate(self.classes):
            for i in members:
                out[i] = c
        return out

    def class_map(self, x) -> int:
        return self.class_of[self.index[x]]

    @cached_property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @cached_property
    def class_reps(self) -> list:
        return [self.elements[c[0]] for c in self.classes]

    @cached_property
    def class_orders(self) -> list[int]:
        return [self.element_order(x) for x in self.class_reps]

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.class_orders)

    def num_classes(self) -> int:
        return len(self.classes)

    def is_closed(self) -> bool:
        s = self.index
        return all(self.mul(x, y) in s for x in self.elements for y in self.generators)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    indices: frozenset

    @classmethod
    def from_predicate(cls, G: FiniteGroup, pred: Callable) -> "Subgroup":
        return cls(G, frozenset(i for i, x in enumerate(G.elements) if pred(x)))

    @property
    def order(self) -> int:
        return len(self.indices)

    def elements(self) -> list:
        return [self.parent.elements[i] for i in sorted(self.indices)]

    def class_counts(self) -> dict[int, int]:
        """Number of subgroup elements in each conjugacy class of the parent."""
        out: dict[int, int] = {}
        cof = self.parent.class_of
        for i in self.indices:
            out[cof[i]] = out.get(cof[i], 0) + 1
        return out

    def is_subgroup(self) -> bool:
        G = self.parent
        if G.index[G.identity] not in self.indices:
            return False
        els = self.elements()
        return all(G.index[G.mul(x, y)] in self.indices for x in els for y in els)


def _closure(gens, mul, identity, cap: int) -> set:
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise ResourceCapError("group closure", len(seen), cap)
                queue.append(y)
    return seen


def close_group(generators: Sequence[Hashable], mul: Callable, identity: Hashable,
                name: str = "", cap: int = DEFAULT_MAX_GROUP_ORDER,
                action: Callable | None = None, inverse: Callable | None = None) -> FiniteGroup:
    """Breadth-first closure of ``generators``.

    When ``action`` (element -> permutation tuple) is given, faithfulness is
    checked: distinct elements must act by distinct permutations.
    """
    elems = _closure(list(generators), mul, identity, cap)
    if action is not None:
        perms: dict = {}
        for x in elems:
            p = action(x)
            if p in perms and perms[p] != x:
                raise ValueError("action is not faithful")
            perms[p] = x
    return FiniteGroup(elems, mul, name=name, generators=list(generators), inverse=inverse)


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    return G.classes


# --------------------------------------------------------------------------
# matrix groups over F_q, elements stored as tuples of row tuples


def matrix_mul(q: int) -> Callable:
    def mul(a, b):
        bt = tuple(zip(*b))
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) % q for col in bt) for row in a)
    return mul


def matrix_inverse(q: int) -> Callable:
    def inv(a):
        return mat_inverse(a, q)
    return inv


def _elementary(n: int, i: int, j: int, x: int) -> tuple:
    return tuple(tuple(int(r == c) + (x if (r, c) == (i, j) else 0) for c in range(n))
                 for r in range(n))


def _diag(n: int, i: int, x: int) -> tuple:
    return tuple(tuple((x if r == i else 1) if r == c else 0 for c in range(n)) for r in range(n))


def borel_group(n: int, q: int, cap: int = DEFAULT_MAX_GROUP_ORDER) -> FiniteGroup:
    """B_n(F_q): invertible upper triangular matrices, closed from elementary generators."""
    g = primitive_root(q)
    gens = [_diag(n, i, g) for i in range(n) if q > 2]
    gens += [_elementary(n, i, i + 1, 1) for i in range(n - 1)]
    ident = _diag(n, 0, 1)
    return close_group(gens, matrix_mul(q), ident, name=f"B{n}(F{q})", cap=cap,
                       inverse=matrix_inverse(q))


def unitriangular_group(n: int, q: int, cap: int = DEFAULT_MAX_GROUP_ORDER) -> FiniteGroup:
    gens = [_elementary(n, i, i + 1, 1) for i in range(n - 1)]
    ident = _diag(n, 0, 1)
    return close_group(gens, matrix_mul(q), ident, name=f"U{n}(F{q})", cap=cap,
                       inverse=matrix_inverse(q))


def general_linear_group(n: int, q: int, cap: int = DEFAULT_MAX_GROUP_ORDER) -> FiniteGroup:
    if n == 0:
        return FiniteGroup([()], lambda a, b: (), name=f"GL0(F{q})")
    g = primitive_root(q)
    gens = [_diag(n, 0, g)] if q > 2 else []
    gens += [_elementary(n, i, j, 1) for i in range(n) for j in range(n) if i != j]
    ident = _diag(n, 0, 1)
    return close_group(gens, matrix_mul(q), ident, name=f"GL{n}(F{q})", cap=cap,
                       inverse=matrix_inverse(q))


def borel_order(n: int, q: int) -> int:
    return (q - 1)**n * q**(n * (n - 1) // 2)


# --------------------------------------------------------------------------
# character tables


def _next_dixon_prime(order: int, exponent: int) -> int:
    p = max(2 * math.isqrt(order) + 1, exponent + 1)
    p += (1 - p) % exponent
    while not is_prime(p) or p <= 2 * math.isqrt(order):
        p += exponent
    return p


def _root_of_unity_mod(e: int, p: int) -> int:
    return pow(primitive_root(p), (p - 1) // e, p)


class CharacterTable:
    """Irreducible characters of G as rows of exact cyclotomic class values."""

    def __init__(self, group: FiniteGroup, values: list[list[Cyclotomic]]):
        self.group = group
        self.values = values
        self.conductor = group.exponent

    @cached_property
    def identity_class(self) -> int:
        return self.group.class_map(self.group.identity)

    @property
    def degrees(self) -> list[int]:
        return [int(row[self.identity_class].rational()) for row in self.values]

    @property
    def class_sizes(self) -> list[int]:
        return self.group.class_sizes

    def __len__(self) -> int:
        return len(self.values)

    @cached_property
    def trivial_index(self) -> int:
        return next(i for i, row in enumerate(self.values)
                    if all(v == 1 for v in row))

    @cached_property
    def inverse_class(self) -> list[int]:
        G = self.group
        return [G.class_map(G.inv(x)) for x in G.class_reps]

    @cached_property
    def conj_index(self) -> list[int]:
        """Index of the complex conjugate of each character."""
        inv = self.inverse_class
        rows = {tuple(row): i for i, row in enumerate(self.values)}
        return [rows[tuple(row[inv[c]] for c in range(len(row)))] for row in self.values]

    def conj_row(self, i: int) -> list[Cyclotomic]:
        return [self.values[i][c] for c in self.inverse_class]

    def inner(self, f: Sequence, g: Sequence) -> Fraction | Cyclotomic:
        """<f, g> = 1/|G| sum_x f(x) conj(g(x)) for class functions given on classes."""
        total = Cyclotomic.from_rational(0, self.conductor)
        inv = self.inverse_class
        for c, size in enumerate(self.class_sizes):
            gbar = g[inv[c]] if g is not None else 1
            total = total + _as_cyc(f[c], self.conductor) * _as_cyc(gbar, self.conductor) * size
        return total / self.group.order

    def multiplicity(self, chi: Sequence, i: int) -> int:
        """<chi, chi_i> where chi is a class function given as a list of class values.

        chi is conjugated via the inverse-class map, so it must be a genuine
        class function of G.
        """
        val = self.inner(chi, self.values[i])
        return _exact_nonneg_int(val, "multiplicity")

    def decompose(self, chi: Sequence) -> list[int]:
        return [self.multiplicity(chi, i) for i in range(len(self))]

    def check(self) -> None:
        """Both orthogonality relations and the degree sum, exactly."""
        G = self.group
        k = len(self.values)
        if k != G.num_classes():
            raise FalsificationError("number of irreducibles differs from number of classes",
                                     {"group": G.name, "irr": k, "classes": G.num_classes()})
        if sum(d * d for d in self.degrees) != G.order:
            raise FalsificationError("sum of squared degrees differs from |G|",
                                     {"group": G.name, "degrees": self.degrees})
        bar = [self.conj_row(i) for i in range(k)]
        sizes = self.class_sizes
        for i in range(k):
            for j in range(i, k):
                s = sum((self.values[i][c] * bar[j][c] * sizes[c] for c in range(k)),
                        Cyclotomic.from_rational(0, self.conductor))
                want = G.order if i == j else 0
                if s != want:
                    raise FalsificationError("row orthogonality fails",
                                             {"group": G.name, "rows": [i, j], "value": str(s)})
        for c in range(k):
            for d in range(c, k):
                s = sum((self.values[i][c] * bar[i][d] for i in range(k)),
                        Cyclotomic.from_rational(0, self.conductor))
                want = G.order // sizes[c] if c == d else 0
                if s != want:
                    raise FalsificationError("column orthogonality fails",
                                             {"group": G.name, "cols": [c, d], "value": str(s)})


def _as_cyc(x, e: int) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.from_rational(x, e)


def _exact_nonneg_int(val, what: str) -> int:
    if isinstance(val, Cyclotomic):
        if not val.is_rational():
            raise ArithmeticError(f"{what} is not rational: {val}")
        val = val.rational()
    val = Fraction(val)
    if val.denominator != 1 or val < 0:
        raise ArithmeticError(f"{what} is not a nonnegative integer: {val}")
    return int(val)


def _restricted(S: list[tuple], pivots: list[int], B: list[list[int]], p: int) -> list[list[int]]:
    """Matrix R with s_i B = sum_j R[i][j] s_j for an invariant RREF basis S."""
    out = []
    for s in S:
        img = [sum(s[a] * B[a][b] for a in range(len(s)) if s[a]) % p for b in range(len(B[0]))]
        out.append([img[pv] for pv in pivots])
    return out


def _left_eigenspaces(R: list[list[int]], p: int) -> list[list[tuple]]:
    d = len(R)
    found = 0
    spaces = []
    for lam in range(p):
        # left null space of R - lam I  ==  null space of its transpose
        rows = [[(R[j][i] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
        red, piv = _rref_rows(rows, d, p)
        if len(piv) == d:
            continue
        free = [c for c in range(d) if c not in piv]
        basis = []
        for f in free:
            v = [0] * d
            v[f] = 1
            for row, pc in zip(red, piv):
                v[pc] = (-row[f]) % p
            basis.append(tuple(v))
        spaces.append(basis)
        found += len(basis)
        if found == d:
            break
    if found != d:
        raise ArithmeticError("class matrix is not diagonalisable mod p")
    return spaces


def character_table(G: FiniteGroup, max_classes: int = DEFAULT_MAX_CLASSES,
                    max_order: int = DEFAULT_MAX_GROUP_ORDER) -> CharacterTable:
    if G.order > max_order:
        raise ResourceCapError("group order", G.order, max_order)
    k = G.num_classes()
    if k > max_classes:
        raise ResourceCapError("number of classes", k, max_classes)
    order = G.order
    e = G.exponent
    if k == 1:
        return CharacterTable(G, [[Cyclotomic.from_rational(1, e)]])
    p = _next_dixon_prime(order, e)
    sizes = G.class_sizes
    cof = G.class_of
    inv_idx = G.inverse_index
    elements = G.elements
    mul = G.mul
    id_class = G.class_map(G.identity)

    def class_matrix(r: int) -> list[list[int]]:
        # B[t][s] = c_{r s t}: #{x in C_r : x^-1 z_t in C_s}
        B = [[0] * k for _ in range(k)]
        for t, z in enumerate(G.class_reps):
            for i in G.classes[r]:
                xinv = elements[inv_idx[i]]
                s = cof[G.index[mul(xinv, z)]]
                B[t][s] += 1
        return B

    spaces = [[tuple(int(i == j) for j in range(k)) for i in range(k)]]
    for r in range(k):
        if all(len(S) == 1 for S in spaces):
            break
        if r == id_class:
            continue
        B = class_matrix(r)
        new = []
        for S in spaces:
            if len(S) == 1:
                new.append(S)
                continue
            red, pivots = _rref_rows(S, k, p)
            R = _restricted(red, pivots, B, p)
            for coeffs in _left_eigenspaces(R, p):
                rows = [tuple(sum(c * row[j] for c, row in zip(v, red)) % p for j in range(k))
                        for v in coeffs]
                new.append(_rref_rows(rows, k, p)[0])
        spaces = new
    if not all(len(S) == 1 for S in spaces):
        raise ArithmeticError("class matrices failed to separate all characters")

    inv_class = [cof[inv_idx[c[0]]] for c in G.classes]
    z = _root_of_unity_mod(e, p)
    # powers of class representatives: pw[c][j] = class of rep_c^j
    pw = []
    for x in G.class_reps:
        row = []
        y = G.identity
        for _ in range(e):
            row.append(G.class_map(y))
            y = mul(y, x)
        pw.append(row)
    e_inv = pow(e, -1, p)
    zinv = pow(z, -1, p)
    table = []
    for (w,) in spaces:
        w = [(x * pow(w[id_class], -1, p)) % p for x in w]
        norm = sum(w[t] * w[inv_class[t]] * pow(sizes[t], -1, p) for t in range(k)) % p
        d2 = (order * pow(norm, -1, p)) % p
        deg = next((d for d in range(1, math.isqrt(order) + 1) if d * d % p == d2), None)
        if deg is None:
            raise ArithmeticError("degree recovery failed")
        chi_mod = [(w[t] * deg * pow(sizes[t], -1, p)) % p for t in range(k)]
        row = []
        for c in range(k):
            powers = {}
            for m in range(e):
                acc = 0
                for j in range(e):
                    acc += chi_mod[pw[c][j]] * pow(zinv, (j * m) % e, p)
                mult = (acc * e_inv) % p
                if mult > deg:
                    raise ArithmeticError("eigenvalue multiplicity lift out of range")
                if mult:
                    powers[m] = mult
            row.append(Cyclotomic.from_powers(e, powers))
        table.append(row)
    table.sort(key=lambda row: (int(row[id_class].rational()), [str(v) for v in row]))
    triv = next(i for i, row in enumerate(table) if all(v == 1 for v in row))
    table.insert(0, table.pop(triv))
    return CharacterTable(G, table)


# --------------------------------------------------------------------------
# permutation characters


def perm_character(G: FiniteGroup, fixed_points: Callable) -> list[int]:
    """Class values of the permutation character; ``fixed_points(g)`` counts fixed points."""
    return [fixed_points(x) for x in G.class_reps]


def orbit_count(G: FiniteGroup, fixed_points: Callable) -> int:
    total = sum(size * fixed_points(x) for size, x in zip(G.class_sizes, G.class_reps))
    if total % G.order:
        raise ArithmeticError("Burnside sum not divisible by |G|")
    return total // G.order


def trivial_fixed_multiplicity(table: CharacterTable, H: Subgroup, i: int) -> int:
    """dim Hom_H(1, V_i) = 1/|H| sum_{h in H} chi_i(h)."""
    row = table.values[i]
    total = Cyclotomic.from_rational(0, table.conductor)
    for c, cnt in H.class_counts().items():
        total = total + row[c] * cnt
    return _exact_nonneg_int(total / H.order, "fixed-vector dimension")


def multiplicity(table: CharacterTable, chi: Sequence, i: int) -> int:
    return table.multiplicity(chi, i)
