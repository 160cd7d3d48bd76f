"""Redundancy, X-sets, the T/L calculus, parabolic subgroups and the image test.

Throughout, ``M`` defaults to the regular module ``R = M_1 + ... + M_n`` whose
automorphism group is the upper triangular group.  Points of ``F(M)`` are
coordinate tuples in the basis order of :func:`functor_eval`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .ancat import (AnFunctor, AnModule, Interval, VectBackend, functor_eval, functor_on_morphism,
                    functor_rep, is_summand, masked_mul, minimal_presentation, point_blocks,
                    point_in_subfunctor, projective_cover_object, socle,
                    subquotient_decomposition, subrepresentations, transformation_on)
from .errors import (DEFAULT_MAX_GROUP_ORDER, DEFAULT_MAX_POINTS, DEFAULT_MAX_SUBSPACES,
                     FalsificationError, ResourceCapError)
from .exactmath import FqMatrix, Subspace, _rref_rows, all_subspaces, enumerate_subspaces, rank_of
from .grouprep import (FiniteGroup, Subgroup, borel_group, character_table,
                       general_linear_group, matrix_mul, trivial_fixed_multiplicity)
from .latticealg import SubobjectLattice, product_of_complements


# --------------------------------------------------------------------------
# automorphism groups


def _free_positions(mask) -> list[tuple[int, int]]:
    return [(t, s) for t, row in enumerate(mask) for s, ok in enumerate(row) if ok]


def _vertex_blocks_invertible(F: AnFunctor, alpha, q: int) -> bool:
    for k in range(1, F.n + 1):
        idx = F.vertex_members(k)
        if idx and rank_of([[alpha[t][s] for s in idx] for t in idx], len(idx), q) < len(idx):
            return False
    return True


@lru_cache(maxsize=None)
def aut_functor_group(F: AnFunctor, q: int, cap: int = DEFAULT_MAX_GROUP_ORDER) -> FiniteGroup:
    """Aut(F) as invertible pattern matrices alpha[t][s] under masked composition."""
    mask = F.hom_mask()
    free = _free_positions(mask)
    if q**len(free) > cap:
        raise ResourceCapError("endomorphism enumeration", q**len(free), cap)
    r = len(F)
    elems = []
    for vals in itertools.product(range(q), repeat=len(free)):
        alpha = [[0] * r for _ in range(r)]
        for (t, s), x in zip(free, vals):
            alpha[t][s] = x
        if _vertex_blocks_invertible(F, alpha, q):
            elems.append(tuple(tuple(row) for row in alpha))
    if r == 0:
        elems = [()]
    return FiniteGroup(elems, lambda a, b: masked_mul(a, b, mask, q) if a else (),
                       name=f"Aut({F})")


@lru_cache(maxsize=None)
def aut_module_group(M: AnModule, q: int, cap: int = DEFAULT_MAX_GROUP_ORDER) -> FiniteGroup:
    """Aut_R(M) as invertible matrices on the summand labels with the morphism pattern."""
    if M == AnModule.full(M.n):
        return borel_group(M.n, q, cap=cap)
    mask = M.morphism_mask()
    free = _free_positions(mask)
    if q**len(free) > cap:
        raise ResourceCapError("module endomorphism enumeration", q**len(free), cap)
    r = M.rank
    elems = []
    for vals in itertools.product(range(q), repeat=len(free)):
        g = [[0] * r for _ in range(r)]
        for (t, s), x in zip(free, vals):
            g[t][s] = x
        if rank_of(g, r, q) == r:
            elems.append(tuple(tuple(row) for row in g))
    return FiniteGroup(elems, matrix_mul(q), name=f"Aut({M})")


def functor_action(F: AnFunctor, M: AnModule, g, q: int) -> FqMatrix:
    """F(g) on F(M) for g in Aut_R(M) given as a tuple of rows."""
    return functor_on_morphism(F, M, FqMatrix(q, tuple(g), M.rank))


# --------------------------------------------------------------------------
# redundancy and X-sets


def is_m_redundant(F: AnFunctor, M: AnModule | None = None) -> bool:
    M = M or AnModule.full(F.n)
    return not is_summand(minimal_presentation(F).X, M)


def _hom_rows(X: AnModule, M: AnModule) -> list[list[tuple[int, int]]]:
    """For each summand (k, c) of X, the labels (l, d) of M with Hom(M_k, M_l) != 0."""
    return [[(l, d) for (l, d) in M.labels() if l <= k] for (k, _) in X.labels()]


def is_split_toprank(X: AnModule, M: AnModule, phi: dict, q: int) -> bool:
    """Split test: at each vertex k the M_k -> M_k components have full column rank.

    ``phi`` maps ((k, c), (l, d)) to the scalar of the component M_k -> M_l.
    """
    for k in range(1, X.n + 1):
        cols = [(k, c) for c in range(X.mult[k - 1])]
        if not cols:
            continue
        rows = [(k, d) for d in range(M.mult[k - 1])]
        if len(rows) < len(cols):
            return False
        mat = [[phi.get((col, row), 0) for col in cols] for row in rows]
        if rank_of(mat, len(cols), q) < len(cols):
            return False
    return True


def is_split_solve(X: AnModule, M: AnModule, phi: dict, q: int) -> bool:
    """Split test by solving psi . phi = id for a pattern morphism psi: M -> X."""
    xl = X.labels()
    ml = M.labels()
    unknowns = [(xi, mj) for xi in xl for mj in ml if xi[0] <= mj[0]]
    upos = {u: i for i, u in enumerate(unknowns)}
    nu = len(unknowns)
    eqs = []
    for xi in xl:
        for xk in xl:
            # (psi phi)[xi][xk] = sum_m psi[xi][m] phi[m][xk]
            row = [0] * (nu + 1)
            for m in ml:
                c = phi.get((xk, m), 0)
                if c and (xi, m) in upos:
                    row[upos[(xi, m)]] = (row[upos[(xi, m)]] + c) % q
            row[nu] = int(xi == xk)
            eqs.append(row)
    if not eqs:
        return True
    _, piv = _rref_rows(eqs, nu + 1, q)
    return nu not in piv


def split_injections(X: AnModule, M: AnModule, q: int, cap: int = DEFAULT_MAX_POINTS,
                     check: bool = False):
    """Yield every split injection X -> M as a component dict."""
    xl = X.labels()
    slots = [((k, c), m) for (k, c), rows in zip(xl, _hom_rows(X, M)) for m in rows]
    if q**len(slots) > cap:
        raise ResourceCapError("Hom(X, M) enumeration", q**len(slots), cap)
    for vals in itertools.product(range(q), repeat=len(slots)):
        phi = {s: v for s, v in zip(slots, vals) if v}
        ok = is_split_toprank(X, M, phi, q)
        if check and ok != is_split_solve(X, M, phi, q):
            raise FalsificationError("split tests disagree",
                                     {"X": str(X), "M": str(M), "phi": sorted(map(str, phi.items()))})
        if ok:
            yield phi


def presentation_image(F: AnFunctor, M: AnModule, phi: dict) -> tuple:
    """p_M(phi) in F(M): interval s sends its generator along its component into vertex l >= a_s."""
    X = minimal_presentation(F).X
    xcopy = {}
    used: dict[int, int] = {}
    for s, iv in enumerate(F.intervals):
        xcopy[s] = (iv.b, used.get(iv.b, 0))
        used[iv.b] = used.get(iv.b, 0) + 1
    assert sorted(xcopy.values()) == sorted(X.labels())
    basis = functor_eval(F, M)
    out = []
    for (s, k, c) in basis:
        out.append(phi.get((xcopy[s], (k, c)), 0) if k >= F.intervals[s].a else 0)
    return tuple(out)


def x_set_split(F: AnFunctor, M: AnModule | None, q: int, check: bool = False) -> frozenset:
    M = M or AnModule.full(F.n)
    X = minimal_presentation(F).X
    return frozenset(presentation_image(F, M, phi)
                     for phi in split_injections(X, M, q, check=check))


def all_points(F: AnFunctor, M: AnModule, q: int, cap: int = DEFAULT_MAX_POINTS):
    N = len(functor_eval(F, M))
    if q**N > cap:
        raise ResourceCapError("points of F(M)", q**N, cap)
    return itertools.product(range(q), repeat=N)


def subfunctors(F: AnFunctor, q: int, cap: int = DEFAULT_MAX_SUBSPACES) -> list[tuple]:
    """All subfunctors of F, as vertex subspace tuples of the representation F(R)."""
    return subrepresentations(functor_rep(F, q), cap=cap)


def _proper_maximal(subs: Sequence[tuple], top: tuple) -> list[tuple]:
    proper = [W for W in subs if W != top]
    return [W for W in proper
            if not any(V != W and all(w <= v for w, v in zip(W, V)) for V in proper)]


def x_set_brute(F: AnFunctor, M: AnModule | None, q: int) -> frozenset:
    """F(M) minus the union of H(M) over proper subfunctors H."""
    M = M or AnModule.full(F.n)
    rep = functor_rep(F, q)
    top = tuple(Subspace.full(d, q) for d in rep.dims)
    maxl = _proper_maximal(subfunctors(F, q), top)
    blocks = point_blocks(F, M)
    return frozenset(v for v in all_points(F, M, q)
                     if not any(point_in_subfunctor(v, blocks, W) for W in maxl))


def x_set(F: AnFunctor, M: AnModule | None, q: int) -> frozenset:
    """X_F(M), computed both ways; any disagreement is a falsification."""
    a = x_set_split(F, M, q)
    b = x_set_brute(F, M, q)
    if a != b:
        raise FalsificationError("X-set implementations disagree",
                                 {"functor": str(F), "module": str(M), "q": q,
                                  "split": len(a), "brute": len(b)})
    return a


# --------------------------------------------------------------------------
# the T/L calculus on the subfunctor lattice of F


@dataclass
class TLData:
    """Indicator vectors over F(M), one pair per subfunctor h.

    ``inside[h]`` marks the points of h(M); ``generates[h]`` marks the points
    whose generated subfunctor is exactly h.
    """

    functor: AnFunctor
    module: AnModule
    q: int
    lattice: SubobjectLattice
    points: list
    inside: list
    generates: list

    def check(self) -> None:
        lat = self.lattice
        n = len(self.points)
        # partition: every point lies in exactly one X-set
        cover = [0] * n
        for row in self.generates:
            for i, x in enumerate(row):
                cover[i] += x
        if any(c != 1 for c in cover):
            raise FalsificationError("X-sets do not partition F(M)", {"functor": str(self.functor)})
        for h in range(len(lat)):
            below = [g for g in range(len(lat)) if lat.leq(g, h)]
            summed = [sum(self.generates[g][i] for g in below) for i in range(n)]
            if summed != self.inside[h]:
                raise FalsificationError("membership of H differs from the sum of the exact sets below H",
                                         {"functor": str(self.functor), "H": h})
            expansion = product_of_complements(lat, lat.maximal_below(h))
            # product_of_complements starts from the lattice top; restrict to H
            restricted = _restrict_to(lat, h, expansion)
            recon = [0] * n
            for y, c in enumerate(restricted):
                if c:
                    for i in range(n):
                        recon[i] += c * self.inside[y][i]
            if recon != self.generates[h]:
                raise FalsificationError("inclusion-exclusion does not recover the exact set of H",
                                         {"functor": str(self.functor), "H": h})


def _restrict_to(lat: SubobjectLattice, h: int, el) -> list:
    """Multiply a product expansion by chi_H, which replaces each chi_Y with chi_(Y meet H)."""
    out = [0] * len(lat)
    for y, c in enumerate(el.coeffs):
        if c:
            out[lat.meet[h][y]] += c
    return out


def subfunctor_lattice(F: AnFunctor, q: int) -> SubobjectLattice:
    subs = subfunctors(F, q)
    top = tuple(Subspace.full(d, q) for d in functor_rep(F, q).dims)
    return SubobjectLattice(subs, lambda a, b: tuple(x & y for x, y in zip(a, b)), top=top)


def tl_vectors(F: AnFunctor, M: AnModule | None, q: int) -> TLData:
    M = M or AnModule.full(F.n)
    lat = subfunctor_lattice(F, q)
    pts = list(all_points(F, M, q))
    blocks = point_blocks(F, M)
    inside = [[int(point_in_subfunctor(v, blocks, W)) for v in pts] for W in lat.elements]
    generates = []
    for h in range(len(lat)):
        below = [g for g in range(len(lat)) if g != h and lat.leq(g, h)]
        generates.append([int(inside[h][i] and not any(inside[g][i] for g in below))
                          for i in range(len(pts))])
    return TLData(F, M, q, lat, pts, inside, generates)


def subfunctor_type(F: AnFunctor, q: int, W: Sequence[Subspace]) -> AnFunctor:
    """Isomorphism type of the subfunctor with vertex subspaces W."""
    rep = functor_rep(F, q)
    return subquotient_decomposition(rep, W, [Subspace.zero(d, q) for d in rep.dims])


def irredundant_subfunctor_count(F: AnFunctor, M: AnModule | None, q: int) -> int:
    M = M or AnModule.full(F.n)
    return sum(1 for W in subfunctors(F, q) if not is_m_redundant(subfunctor_type(F, q, W), M))


# --------------------------------------------------------------------------
# semisimple subfunctors and parabolic subgroups


@dataclass(frozen=True)
class SemisimpleSubfunctor:
    """Per socle type a, a subspace of the coordinates of intervals starting at a."""

    parent: AnFunctor
    parts: tuple  # ((a, Subspace), ...) for every a with m_a > 0

    def dim_at(self, a: int) -> int:
        return dict(self.parts)[a].dim if a in dict(self.parts) else 0

    def cover_object(self) -> AnModule:
        return AnModule.of_summands(self.parent.n,
                                    [a for a, W in self.parts for _ in range(W.dim)])

    def vertex_subspaces(self, q: int) -> tuple:
        """The subfunctor as vertex subspaces of F(R)."""
        F = self.parent
        parts = dict(self.parts)
        out = []
        for k in range(1, F.n + 1):
            members = F.vertex_members(k)
            if k in parts:
                heads = [s for s in members if F.intervals[s].a == k]
                vecs = []
                for b in parts[k].basis:
                    v = [0] * len(members)
                    for s, x in zip(heads, b):
                        v[members.index(s)] = x
                    vecs.append(v)
                out.append(Subspace.span(vecs, len(members), q))
            else:
                out.append(Subspace.zero(len(members), q))
        return tuple(out)

    def __le__(self, other: "SemisimpleSubfunctor") -> bool:
        o = dict(other.parts)
        return all(W <= o[a] for a, W in self.parts)


def socle_types(F: AnFunctor) -> dict[int, int]:
    out: dict[int, int] = {}
    for iv in F.intervals:
        out[iv.a] = out.get(iv.a, 0) + 1
    return dict(sorted(out.items()))


def semisimple_subfunctors(F: AnFunctor, q: int,
                           cap: int = DEFAULT_MAX_SUBSPACES) -> list[SemisimpleSubfunctor]:
    types = socle_types(F)
    total = 1
    for m in types.values():
        total *= len(all_subspaces(m, q))
    if total > cap:
        raise ResourceCapError("semisimple subfunctors", total, cap)
    keys = list(types)
    return [SemisimpleSubfunctor(F, tuple(zip(keys, combo)))
            for combo in itertools.product(*(all_subspaces(types[a], q) for a in keys))]


def minimal_offending(F: AnFunctor, Z: AnModule, q: int) -> list[SemisimpleSubfunctor]:
    """Inclusion-minimal semisimple G whose cover object is not a summand of Z."""
    types = socle_types(F)
    out = []
    for a, m in types.items():
        k = Z.mult[a - 1] + 1
        if k > m:
            continue
        for W in enumerate_subspaces(m, k, q):
            parts = tuple((b, W if b == a else Subspace.zero(mb, q)) for b, mb in types.items())
            out.append(SemisimpleSubfunctor(F, parts))
    return out


def parabolic_subgroup(F: AnFunctor, G: SemisimpleSubfunctor, q: int) -> Subgroup:
    """P_G: automorphisms phi with the image of phi - Id inside G."""
    A = aut_functor_group(F, q)
    R = AnModule.full(F.n)
    target = block_sum(G.vertex_subspaces(q), q)
    ident = FqMatrix.identity(F.total_dim, q)

    def inside(alpha) -> bool:
        if not alpha:
            return True
        big = transformation_on(F, R, alpha, q) - ident
        return big.column_space() <= target

    return Subgroup.from_predicate(A, inside)


def block_sum(Ws: Sequence[Subspace], q: int) -> Subspace:
    """Direct sum of vertex subspaces as a subspace of F(R) (vertex blocks in order)."""
    total = sum(W.ambient_dim for W in Ws)
    vecs = []
    off = 0
    for W in Ws:
        for b in W.basis:
            v = [0] * total
            v[off:off + W.ambient_dim] = b
            vecs.append(v)
        off += W.ambient_dim
    return Subspace.span(vecs, total, q)


def fm_image(F: AnFunctor, M: AnModule | None = None, q: int = 2,
             minimal_only: bool = True) -> frozenset:
    """Indices of irreducibles of Aut(F) that arise from M by functor morphing."""
    M = M or AnModule.full(F.n)
    X = minimal_presentation(F).X
    if not is_summand(X, M):
        return frozenset()
    Z = M - X
    A = aut_functor_group(F, q)
    T = character_table(A)
    if minimal_only:
        offenders = minimal_offending(F, Z, q)
    else:
        offenders = [G for G in semisimple_subfunctors(F, q)
                     if not is_summand(G.cover_object(), Z)]
    passing = set(range(len(T)))
    for G in offenders:
        P = parabolic_subgroup(F, G, q)
        passing = {i for i in passing if trivial_fixed_multiplicity(T, P, i) == 0}
        if not passing:
            break
    return frozenset(passing)


def fm_candidates(n: int) -> list[AnFunctor]:
    """Interval multisets with pairwise distinct right endpoints, the zero functor first."""
    choices = [[None] + [Interval(a, b) for a in range(1, b + 1)] for b in range(1, n + 1)]
    out = []
    for combo in itertools.product(*choices):
        out.append(AnFunctor(n, tuple(iv for iv in combo if iv is not None)))
    out.sort(key=lambda F: (len(F), F.intervals))
    return out


def fm_all_equivalence(F: AnFunctor, M: AnModule | None = None, q: int = 2) -> tuple[bool, bool, bool]:
    """(every irreducible passes, the trivial one passes, cover of the socle is a summand of Z)."""
    M = M or AnModule.full(F.n)
    X = minimal_presentation(F).X
    if not is_summand(X, M):
        raise ValueError(f"{F} is redundant for {M}")
    image = fm_image(F, M, q)
    T = character_table(aut_functor_group(F, q))
    all_pass = len(image) == len(T)
    triv = T.trivial_index in image
    cover = is_summand(projective_cover_object(socle(F)), M - X)
    if not all_pass == triv == cover:
        raise FalsificationError("equivalent conditions disagree",
                                 {"functor": str(F), "q": q, "all": all_pass,
                                  "trivial": triv, "socle_cover": cover})
    return all_pass, triv, cover


def summary_criterion(F: AnFunctor, q: int) -> frozenset:
    """Closed-form membership for M = R, built from explicit abelian subgroups.

    Requires distinct left and distinct right endpoints (else empty).  An
    irreducible passes iff it has no fixed vector under the scalars on each
    singleton summand F_aa, and none under 1 + Hom(F_{I_j}, F_{I_i}) whenever
    a_i = b_j with i != j.
    """
    if not (F.has_distinct_left_endpoints() and F.has_distinct_right_endpoints()):
        return frozenset()
    A = aut_functor_group(F, q)
    T = character_table(A)
    ivs = F.intervals
    r = len(ivs)
    subgroups = []
    for i, iv in enumerate(ivs):
        if iv.a == iv.b:
            subgroups.append(Subgroup.from_predicate(
                A, lambda x, i=i: all(x[t][s] == int(t == s) for t in range(r) for s in range(r)
                                      if (t, s) != (i, i))))
        for j, jv in enumerate(ivs):
            if j != i and iv.a == jv.b:
                subgroups.append(Subgroup.from_predicate(
                    A, lambda x, i=i, j=j: all(x[t][s] == int(t == s) for t in range(r)
                                               for s in range(r) if (t, s) != (i, j))))
    return frozenset(v for v in range(len(T))
                     if all(trivial_fixed_multiplicity(T, H, v) == 0 for H in subgroups))


# --------------------------------------------------------------------------
# the vector space backend


def gl_parabolic(m: int, K: Subspace, q: int) -> Subgroup:
    """Automorphisms of Hom(F_q^m, -) whose difference from Id lands in Hom(F_q^m / K, -).

    Precomposition with a satisfies this iff a fixes K pointwise.
    """
    G = general_linear_group(m, q)

    def fixes(a) -> bool:
        return all(tuple(sum(x * y for x, y in zip(row, v)) % q for row in a) == tuple(v)
                   for v in K.basis)

    return Subgroup.from_predicate(G, fixes)


def gl_parabolic_block(m: int, k: int, q: int) -> Subgroup:
    """The block form [[A, B], [0, I]] with A of size k x k."""
    G = general_linear_group(m, q)

    def ok(a) -> bool:
        return all(a[i][j] == int(i == j) for i in range(k, m) for j in range(m))

    return Subgroup.from_predicate(G, ok)


def gl_fm_image(n: int, m: int, q: int, minimal_only: bool = True) -> frozenset:
    """Irreducibles of GL_m(F_q) reached from F_q^n through the functor Hom(F_q^m, -)."""
    back = VectBackend(n, q)
    if not back.is_summand(m):
        return frozenset()
    z = back.complement(m)
    T = character_table(general_linear_group(m, q))
    passing = set(range(len(T)))
    k = z + 1
    if k > m:
        return frozenset(passing)
    if minimal_only:
        # all subfunctors of one dimension are conjugate; one representative suffices
        kernels = [Subspace.span([[int(i == j) for i in range(m)] for j in range(k, m)], m, q)]
    else:
        kernels = [K for K in back.semisimple_subfunctors(m)
                   if not back.is_summand(back.projective_cover_dim(K), z)]
    for K in kernels:
        P = gl_parabolic(m, K, q)
        passing = {i for i in passing if trivial_fixed_multiplicity(T, P, i) == 0}
    return frozenset(passing)
