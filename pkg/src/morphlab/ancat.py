"""Category backends: the linear A_n quiver and finite-dimensional vector spaces.

Conventions for the A_n backend (fixed here once):

* ``M_k`` (k = 1..n) are the indecomposable projectives.  ``Hom(M_k, M_l)`` is
  F_q, spanned by ``f_kl``, when ``k >= l`` and zero otherwise, and
  ``f_lm f_kl = f_km``.
* A morphism between ``oplus M_k^{m_k}`` modules is a matrix indexed by the
  summand labels ``(k, c)``; entry ``[(l, d), (k, c)]`` is the scalar of the
  component ``M_k -> M_l`` and may be nonzero only when ``l <= k``.  For the
  multiplicity-free module this makes ``Aut_R(M)`` the upper triangular group.
* ``F_ab`` is the interval functor: ``F_ab(M_k) = F_q`` for ``a <= k <= b``
  and ``F_ab(f_kl)`` is the identity when ``a <= l <= k <= b``.
* A morphism ``F_{I_s} -> F_{I_t}`` exists iff ``a_s <= a_t <= b_s <= b_t``;
  it is the identity on the overlap ``[a_t, b_s]``.  Endomorphisms of
  ``F = oplus_s F_{I_s}`` are scalar matrices ``alpha[t][s]`` supported on
  that pattern.
* Basis labels: ``F(M)`` has labels ``(s, k, c)`` ordered by vertex k, module
  copy c, then interval index s.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .errors import DEFAULT_MAX_SUBSPACES, ResourceCapError
from .exactmath import FqMatrix, Subspace, all_subspaces, gauss_binomial, mat_mul

GRAMMAR_VERSION = 1


@dataclass(frozen=True, order=True)
class Interval:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"interval [{self.a},{self.b}] has a > b")

    def __contains__(self, k: int) -> bool:
        return self.a <= k <= self.b

    def __str__(self) -> str:
        return f"{self.a}-{self.b}"


def hom_nonzero(src: Interval, dst: Interval) -> bool:
    """Hom(F_src, F_dst) != 0."""
    return src.a <= dst.a <= src.b <= dst.b


@dataclass(frozen=True)
class AnFunctor:
    n: int
    intervals: tuple

    def __post_init__(self):
        ivs = tuple(sorted(self.intervals))
        for iv in ivs:
            if not (1 <= iv.a and iv.b <= self.n):
                raise ValueError(f"interval {iv} outside [1,{self.n}]")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def of(cls, n: int, pairs: Sequence[tuple[int, int]] = ()) -> "AnFunctor":
        return cls(n, tuple(Interval(a, b) for a, b in pairs))

    @classmethod
    def zero(cls, n: int) -> "AnFunctor":
        return cls(n, ())

    def __add__(self, other: "AnFunctor") -> "AnFunctor":
        if other.n != self.n:
            raise ValueError("direct sum of functors on different quivers")
        return AnFunctor(self.n, self.intervals + other.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "0"
        return "+".join(f"F{iv.a}{iv.b}" for iv in self.intervals)

    def spec(self) -> str:
        return ",".join(str(iv) for iv in self.intervals)

    def dim_at(self, k: int) -> int:
        return sum(1 for iv in self.intervals if k in iv)

    @property
    def total_dim(self) -> int:
        """dim F(R) for the regular module R = oplus_k M_k."""
        return sum(iv.b - iv.a + 1 for iv in self.intervals)

    def hom_mask(self) -> tuple:
        """mask[t][s] is True when alpha[t][s] may be nonzero."""
        ivs = self.intervals
        return tuple(tuple(hom_nonzero(ivs[s], ivs[t]) for s in range(len(ivs)))
                     for t in range(len(ivs)))

    def vertex_members(self, k: int) -> list[int]:
        """Interval indices supported at vertex k, in basis order."""
        return [s for s, iv in enumerate(self.intervals) if k in iv]

    def has_distinct_right_endpoints(self) -> bool:
        bs = [iv.b for iv in self.intervals]
        return len(set(bs)) == len(bs)

    def has_distinct_left_endpoints(self) -> bool:
        as_ = [iv.a for iv in self.intervals]
        return len(set(as_)) == len(as_)


@dataclass(frozen=True)
class AnModule:
    n: int
    mult: tuple

    def __post_init__(self):
        m = tuple(int(x) for x in self.mult)
        if len(m) != self.n or any(x < 0 for x in m):
            raise ValueError(f"bad multiplicity vector {self.mult} for n={self.n}")
        object.__setattr__(self, "mult", m)

    @classmethod
    def full(cls, n: int) -> "AnModule":
        return cls(n, (1,) * n)

    @classmethod
    def zero(cls, n: int) -> "AnModule":
        return cls(n, (0,) * n)

    @classmethod
    def of_summands(cls, n: int, ks: Sequence[int]) -> "AnModule":
        m = [0] * n
        for k in ks:
            if k >= 1:
                m[k - 1] += 1
        return cls(n, tuple(m))

    def __add__(self, other: "AnModule") -> "AnModule":
        return AnModule(self.n, tuple(x + y for x, y in zip(self.mult, other.mult)))

    def __sub__(self, other: "AnModule") -> "AnModule":
        return AnModule(self.n, tuple(x - y for x, y in zip(self.mult, other.mult)))

    def __str__(self) -> str:
        parts = []
        for k, m in enumerate(self.mult, start=1):
            if m == 1:
                parts.append(f"M{k}")
            elif m > 1:
                parts.append(f"M{k}^{m}")
        return "+".join(parts) or "0"

    def labels(self) -> list[tuple[int, int]]:
        return [(k, c) for k in range(1, self.n + 1) for c in range(self.mult[k - 1])]

    @property
    def rank(self) -> int:
        return sum(self.mult)

    def morphism_mask(self) -> tuple:
        labels = self.labels()
        return tuple(tuple(l <= k for (k, _) in labels) for (l, _) in labels)


# --------------------------------------------------------------------------
# evaluation


def functor_eval(F: AnFunctor, M: AnModule) -> list[tuple[int, int, int]]:
    """Labelled basis (s, k, c) of the F_q-space F(M)."""
    if F.n != M.n:
        raise ValueError("functor and module live on different quivers")
    out = []
    for k in range(1, F.n + 1):
        members = F.vertex_members(k)
        for c in range(M.mult[k - 1]):
            out.extend((s, k, c) for s in members)
    return out


def functor_on_morphism(F: AnFunctor, M: AnModule, g: FqMatrix) -> FqMatrix:
    """Matrix of F(g) on F(M) for an endomorphism g of M."""
    q = g.q
    labels = M.labels()
    pos = {lab: i for i, lab in enumerate(labels)}
    for (l, d) in labels:
        for (k, c) in labels:
            if l > k and g.rows[pos[(l, d)]][pos[(k, c)]]:
                raise ValueError(f"morphism has a component M{k} -> M{l} with {k} < {l}")
    basis = functor_eval(F, M)
    bpos = {lab: i for i, lab in enumerate(basis)}
    N = len(basis)
    rows = [[0] * N for _ in range(N)]
    for j, (s, k, c) in enumerate(basis):
        iv = F.intervals[s]
        col = pos[(k, c)]
        for (l, d) in labels:
            x = g.rows[pos[(l, d)]][col]
            if x and iv.a <= l <= k:
                rows[bpos[(s, l, d)]][j] = (rows[bpos[(s, l, d)]][j] + x) % q
    return FqMatrix(q, tuple(tuple(r) for r in rows), N)


def transformation_on(F: AnFunctor, M: AnModule, alpha: Sequence[Sequence[int]], q: int) -> FqMatrix:
    """Matrix on F(M) of the natural endomorphism given by pattern scalars alpha[t][s]."""
    basis = functor_eval(F, M)
    bpos = {lab: i for i, lab in enumerate(basis)}
    mask = F.hom_mask()
    N = len(basis)
    rows = [[0] * N for _ in range(N)]
    for j, (s, k, c) in enumerate(basis):
        for t in range(len(F)):
            x = alpha[t][s] % q
            if x and mask[t][s] and k in F.intervals[t]:
                rows[bpos[(t, k, c)]][j] = x
    return FqMatrix(q, tuple(tuple(r) for r in rows), N)


def hom_dim(F1: AnFunctor, F2: AnFunctor) -> int:
    if F1.n != F2.n:
        raise ValueError("functors live on different quivers")
    return sum(1 for s in F1.intervals for t in F2.intervals if hom_nonzero(s, t))


def masked_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], mask, q: int) -> tuple:
    """Composition a∘b of pattern endomorphisms; components through a zero hom vanish."""
    prod = mat_mul(a, b, q)
    return tuple(tuple(x if mask[t][u] else 0 for u, x in enumerate(row))
                 for t, row in enumerate(prod))


# --------------------------------------------------------------------------
# presentations, socles, covers


@dataclass(frozen=True)
class Presentation:
    """Hom(Y,-) --f*--> Hom(X,-) --> F --> 0, with f: X -> Y."""

    X: AnModule
    Y: AnModule
    f: FqMatrix


def minimal_presentation(F: AnFunctor, q: int = 2) -> Presentation:
    n = F.n
    X = AnModule.of_summands(n, [iv.b for iv in F.intervals])
    Y = AnModule.of_summands(n, [iv.a - 1 for iv in F.intervals])
    xlab = X.labels()
    ylab = Y.labels()
    # assign copies to intervals in order
    xcopy, ycopy = {}, {}
    used_x: dict[int, int] = {}
    used_y: dict[int, int] = {}
    for s, iv in enumerate(F.intervals):
        xcopy[s] = (iv.b, used_x.get(iv.b, 0))
        used_x[iv.b] = used_x.get(iv.b, 0) + 1
        if iv.a > 1:
            ycopy[s] = (iv.a - 1, used_y.get(iv.a - 1, 0))
            used_y[iv.a - 1] = used_y.get(iv.a - 1, 0) + 1
    rows = [[0] * len(xlab) for _ in ylab]
    for s, ylab_s in ycopy.items():
        rows[ylab.index(ylab_s)][xlab.index(xcopy[s])] = 1
    return Presentation(X, Y, FqMatrix(q, tuple(tuple(r) for r in rows), len(xlab)))


def socle(F: AnFunctor) -> AnFunctor:
    return AnFunctor(F.n, tuple(Interval(iv.a, iv.a) for iv in F.intervals))


def projective_cover_object(G: AnFunctor) -> AnModule:
    """Z with Hom(Z, -) the projective cover of G."""
    return AnModule.of_summands(G.n, [iv.b for iv in G.intervals])


def is_summand(X: AnModule, Z: AnModule) -> bool:
    if X.n != Z.n:
        raise ValueError("modules live on different quivers")
    return all(x <= z for x, z in zip(X.mult, Z.mult))


# --------------------------------------------------------------------------
# quiver representations


@dataclass(frozen=True)
class QuiverRep:
    """dims[k-1] = dim at vertex k; maps[k-1] realises F(f_{k+1,k}): V_{k+1} -> V_k."""

    q: int
    dims: tuple
    maps: tuple = field(compare=True)

    @property
    def n(self) -> int:
        return len(self.dims)

    def __post_init__(self):
        for k, m in enumerate(self.maps):
            if m.shape != (self.dims[k], self.dims[k + 1]):
                raise ValueError(f"arrow {k + 2}->{k + 1} has shape {m.shape}")

    @cached_property
    def _composites(self) -> dict:
        """(i, j) with i <= j -> matrix V_j -> V_i."""
        out = {}
        for j in range(1, self.n + 1):
            cur = FqMatrix.identity(self.dims[j - 1], self.q)
            out[(j, j)] = cur
            for i in range(j - 1, 0, -1):
                cur = self.maps[i - 1] @ cur
                out[(i, j)] = cur
        return out

    def composite(self, i: int, j: int) -> FqMatrix:
        return self._composites[(i, j)]

    def is_subrep(self, W: Sequence[Subspace]) -> bool:
        return all(W[k].image(self.maps[k - 1]) <= W[k - 1] for k in range(1, self.n))


def functor_rep(F: AnFunctor, q: int) -> QuiverRep:
    maps = []
    for k in range(1, F.n):
        src = F.vertex_members(k + 1)
        dst = F.vertex_members(k)
        rows = [[int(s == t and k in F.intervals[s]) for s in src] for t in dst]
        maps.append(FqMatrix(q, tuple(tuple(r) for r in rows), len(src)))
    return QuiverRep(q, tuple(F.dim_at(k) for k in range(1, F.n + 1)), tuple(maps))


def subquotient_ranks(rep: QuiverRep, W: Sequence[Subspace], Wp: Sequence[Subspace]) -> dict:
    """Ranks r(i, j) of the composite V_j -> V_i on the subquotient W / Wp."""
    r = {}
    for j in range(1, rep.n + 1):
        for i in range(1, j + 1):
            img = W[j - 1].image(rep.composite(i, j))
            r[(i, j)] = (img + Wp[i - 1]).dim - Wp[i - 1].dim
    return r


def _decompose_ranks(n: int, r: dict) -> AnFunctor:
    def rk(i, j):
        if i < 1 or j > n:
            return 0
        return r[(i, j)]

    pairs = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            m = rk(i, j) - rk(i - 1, j) - rk(i, j + 1) + rk(i - 1, j + 1)
            if m < 0:
                raise ArithmeticError("negative interval multiplicity")
            pairs.extend([(i, j)] * m)
    return AnFunctor.of(n, pairs)


def interval_decomposition(rep: QuiverRep) -> AnFunctor:
    full = [Subspace.full(d, rep.q) for d in rep.dims]
    zero = [Subspace.zero(d, rep.q) for d in rep.dims]
    return _decompose_ranks(rep.n, subquotient_ranks(rep, full, zero))


def subquotient_decomposition(rep: QuiverRep, W, Wp) -> AnFunctor:
    return _decompose_ranks(rep.n, subquotient_ranks(rep, W, Wp))


def subrepresentations(rep: QuiverRep, cap: int = DEFAULT_MAX_SUBSPACES,
                       within: Sequence[Subspace] | None = None) -> list[tuple]:
    """All subrepresentations (tuples of vertex subspaces), optionally inside ``within``."""
    q = rep.q
    total = 1
    for d in rep.dims:
        total *= sum(gauss_binomial(d, m, q) for m in range(d + 1))
    if total > cap:
        raise ResourceCapError("subrepresentation search space", total, cap)
    options = []
    for k, d in enumerate(rep.dims):
        subs = all_subspaces(d, q)
        if within is not None:
            subs = tuple(s for s in subs if s <= within[k])
        options.append(subs)
    out = []
    n = rep.n

    def extend(k: int, chosen: list):
        # choose W_k given W_{k+1} (vertices processed from n down to 1)
        if k == 0:
            out.append(tuple(reversed(chosen)))
            return
        need = chosen[-1].image(rep.maps[k - 1]) if chosen else None
        for s in options[k - 1]:
            if need is None or need <= s:
                chosen.append(s)
                extend(k - 1, chosen)
                chosen.pop()

    extend(n, [])
    out.sort(key=lambda W: (sum(w.dim for w in W), tuple(w.basis for w in W)))
    return out


def subfunctor_points(F: AnFunctor, M: AnModule, W: Sequence[Subspace]) -> Iterator[tuple]:
    """Points of H(M) in F(M) for the subfunctor H given by vertex subspaces W."""
    blocks = []
    for k in range(1, F.n + 1):
        for _ in range(M.mult[k - 1]):
            blocks.append(list(W[k - 1].points()))
    for combo in itertools.product(*blocks):
        yield tuple(x for block in combo for x in block)


def point_blocks(F: AnFunctor, M: AnModule) -> list[tuple[int, int, int]]:
    """(vertex, start, stop) slices of F(M) coordinates, one per summand copy of M."""
    out = []
    pos = 0
    for k in range(1, F.n + 1):
        d = F.dim_at(k)
        for _ in range(M.mult[k - 1]):
            out.append((k, pos, pos + d))
            pos += d
    return out


def point_in_subfunctor(point: Sequence[int], blocks, W: Sequence[Subspace]) -> bool:
    return all(W[k - 1].contains(point[a:b]) for k, a, b in blocks)


# --------------------------------------------------------------------------
# the vector space backend


@dataclass(frozen=True)
class VectBackend:
    """C = Vect(F_q), M = F_q^n; the functor Hom(F_q^m, -) is the object m."""

    n: int
    q: int

    def minimal_presentation(self, m: int) -> tuple[int, int]:
        return (m, 0)

    def is_summand(self, m: int, z: int | None = None) -> bool:
        return m <= (self.n if z is None else z)

    def complement(self, m: int) -> int:
        if m > self.n:
            raise ValueError(f"F_q^{m} is not a summand of F_q^{self.n}")
        return self.n - m

    def semisimple_subfunctors(self, m: int) -> list[Subspace]:
        """Subfunctors of Hom(F_q^m, -) correspond to subspaces K of F_q^m (G = Hom(F_q^m/K, -)).

        Returned are the kernels K; the subfunctor has dimension m - dim K.
        """
        return list(all_subspaces(m, self.q))

    def projective_cover_dim(self, kernel: Subspace) -> int:
        return kernel.ambient_dim - kernel.dim
