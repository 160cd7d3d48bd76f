"""Brute-force ground truth: the biset character of KF(M) and what it implies.

Nothing here uses the image criterion.  Joint fixed points of (alpha, g) on
F(M) are counted as q^dim ker(alpha F(g) - I), the characters come from
exact tables, and subquotients are enumerated from subrepresentation pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .ancat import (AnFunctor, AnModule, Interval, functor_eval, functor_rep,
                    subquotient_decomposition, transformation_on)
from .cyclotomic import Cyclotomic
from .errors import DEFAULT_MAX_GROUP_ORDER, DEFAULT_MAX_SUBSPACES, FalsificationError
from .exactmath import FqMatrix
from .grouprep import (CharacterTable, FiniteGroup, borel_group, character_table,
                       unitriangular_group)
from .morphcore import (aut_functor_group, aut_module_group, fm_candidates, fm_image,
                        functor_action, subfunctors)


# --------------------------------------------------------------------------
# the biset character


@dataclass
class BisetCharacter:
    functor: AnFunctor
    module: AnModule
    q: int
    aut_f: FiniteGroup
    aut_m: FiniteGroup
    values: list  # values[a][b] over class representatives

    @property
    def size(self) -> int:
        return self.q ** len(functor_eval(self.functor, self.module))


def _fixed_count(mat: FqMatrix) -> int:
    ident = FqMatrix.identity(mat.nrows, mat.q)
    return mat.q ** (mat.nrows - (mat - ident).rank())


def biset_character(F: AnFunctor, M: AnModule | None = None, q: int = 2) -> BisetCharacter:
    M = M or AnModule.full(F.n)
    A = aut_functor_group(F, q)
    B = aut_module_group(M, q)
    N = len(functor_eval(F, M))
    if N == 0:
        return BisetCharacter(F, M, q, A, B, [[1] * B.num_classes() for _ in A.class_reps])
    alphas = [transformation_on(F, M, a, q) for a in A.class_reps]
    gs = [functor_action(F, M, g, q) for g in B.class_reps]
    values = [[_fixed_count(a @ g) for g in gs] for a in alphas]
    return BisetCharacter(F, M, q, A, B, values)


def _u_character(chi: BisetCharacter, TB: CharacterTable, v: int) -> list:
    """Character of Hom_B(V, KF(M)) as an Aut(F)-representation, on classes of Aut(F)."""
    bar = TB.conj_row(v)
    sizes = TB.class_sizes
    out = []
    for row in chi.values:
        total = Cyclotomic.from_rational(0, TB.conductor)
        for c, size in enumerate(sizes):
            total = total + bar[c] * (row[c] * size)
        out.append(total / chi.aut_m.order)
    return out


def biset_decompose(F: AnFunctor, M: AnModule | None = None, q: int = 2) -> list[tuple[int, int, int]]:
    """(U index, V index, multiplicity) with multiplicity > 0, sorted."""
    chi = biset_character(F, M, q)
    TA = character_table(chi.aut_f)
    TB = character_table(chi.aut_m)
    out = []
    for v in range(len(TB)):
        w = _u_character(chi, TB, v)
        for u in range(len(TA)):
            m = TA.multiplicity(w, u)
            if m:
                out.append((u, v, m))
    dim = sum(m * TA.degrees[u] * TB.degrees[v] for u, v, m in out)
    if dim != chi.size:
        raise FalsificationError("biset decomposition misses dimensions",
                                 {"functor": str(F), "q": q, "dim": dim, "points": chi.size})
    return out


def module_perm_decompose(G: AnFunctor, M: AnModule, q: int) -> list[int]:
    """Multiplicities of the irreducibles of Aut_R(M) in KG(M)."""
    B = aut_module_group(M, q)
    TB = character_table(B)
    if len(functor_eval(G, M)) == 0:
        chi = [1] * B.num_classes()
    else:
        chi = [_fixed_count(functor_action(G, M, g, q)) for g in B.class_reps]
    return TB.decompose(chi)


# --------------------------------------------------------------------------
# subquotients


@lru_cache(maxsize=None)
def subquotients(F: AnFunctor, q: int = 2, cap: int = DEFAULT_MAX_SUBSPACES) -> frozenset:
    """Isomorphism types of all subquotients W / W' of F (F itself included)."""
    rep = functor_rep(F, q)
    subs = subfunctors(F, q, cap=cap)
    out = set()
    for W in subs:
        for Wp in subs:
            if all(a <= b for a, b in zip(Wp, W)):
                out.add(subquotient_decomposition(rep, W, Wp))
    return frozenset(out)


def subquotient_below(G: AnFunctor, F: AnFunctor, q: int = 2, strict: bool = True) -> bool:
    if strict and G == F:
        return False
    return G in subquotients(F, q)


def matching_below(G: AnFunctor, F: AnFunctor) -> bool:
    """Injective matching of the intervals of G into intervals of F that contain them.

    A conjectural description of the subquotient order; tests compare it with
    the brute force but nothing relies on it.
    """
    gs = list(G.intervals)
    fs = list(F.intervals)
    if len(gs) > len(fs):
        return False
    match: dict[int, int] = {}

    def augment(i: int, seen: set) -> bool:
        for j, f in enumerate(fs):
            g = gs[i]
            if j in seen or not (f.a <= g.a and g.b <= f.b):
                continue
            seen.add(j)
            if j not in match or augment(match[j], seen):
                match[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(gs)))


# --------------------------------------------------------------------------
# the largest summand not seen by smaller functors


@dataclass(frozen=True)
class MorphPair:
    functor: AnFunctor
    u: int
    v: int
    multiplicity: int
    u_dual: int


def overline_constituents(F: AnFunctor, M: AnModule | None = None, q: int = 2) -> list[MorphPair]:
    M = M or AnModule.full(F.n)
    decomp = biset_decompose(F, M, q)
    below = [G for G in sorted(subquotients(F, q), key=lambda G: (G.total_dim, G.intervals))
             if G != F]
    seen: set[int] = set()
    for G in below:
        seen.update(i for i, m in enumerate(module_perm_decompose(G, M, q)) if m)
    kept = [(u, v, m) for u, v, m in decomp if v not in seen]
    TA = character_table(aut_functor_group(F, q))
    by_v: dict[int, list] = {}
    for u, v, m in kept:
        by_v.setdefault(v, []).append((u, m))
    report = {"functor": str(F), "module": str(M), "q": q}
    for v, us in by_v.items():
        if len(us) != 1 or us[0][1] != 1:
            raise FalsificationError("a retained V does not pair with a single U of multiplicity 1",
                                     dict(report, v=v, pairs=us))
    us = [u for u, _, _ in kept]
    if len(set(us)) != len(us):
        raise FalsificationError("V -> U is not injective on the retained part",
                                 dict(report, pairs=[[u, v] for u, v, _ in kept]))
    return [MorphPair(F, u, v, m, TA.conj_index[u]) for u, v, m in kept]


def oracle_image(F: AnFunctor, M: AnModule | None = None, q: int = 2) -> frozenset:
    """Dual characters of the U's in the retained part; to be compared with fm_image."""
    return frozenset(p.u_dual for p in overline_constituents(F, M, q))


def functor_universe(n: int, max_dim: int) -> list[AnFunctor]:
    """All interval multisets on [1, n] of total dimension at most max_dim."""
    ivs = [Interval(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
    out = []

    def grow(start: int, chosen: list, dim: int):
        out.append(AnFunctor(n, tuple(chosen)))
        for i in range(start, len(ivs)):
            d = ivs[i].b - ivs[i].a + 1
            if dim + d <= max_dim:
                chosen.append(ivs[i])
                grow(i, chosen, dim + d)
                chosen.pop()

    grow(0, [], 0)
    out.sort(key=lambda F: (F.total_dim, F.intervals))
    return out


def candidate_closure(n: int, q: int = 2) -> list[AnFunctor]:
    """Every subquotient of every candidate functor: a downward closed universe."""
    out = set()
    for F in fm_candidates(n):
        out |= subquotients(F, q)
    return sorted(out, key=lambda F: (F.total_dim, F.intervals))


def minimal_functor(v: int, M: AnModule, q: int, universe: Sequence[AnFunctor] | None = None) -> AnFunctor:
    """The unique subquotient-minimal functor F with V inside KF(M).

    The default universe is :func:`candidate_closure`, which contains
    redundant functors as well as all candidates.
    """
    if universe is None:
        universe = candidate_closure(M.n, q)
    hits = [F for F in universe if module_perm_decompose(F, M, q)[v]]
    minimal = [F for F in hits if not any(subquotient_below(G, F, q) for G in hits)]
    if len(minimal) != 1:
        raise FalsificationError("minimal functor is not unique",
                                 {"v": v, "module": str(M), "q": q,
                                  "minimal": [str(F) for F in minimal]})
    return minimal[0]


# --------------------------------------------------------------------------
# stratification and class counts


def stratification_check(n: int, q: int) -> dict:
    rows = [{"functor": F.spec(), "count": len(fm_image(F, AnModule.full(n), q))}
            for F in fm_candidates(n)]
    total = sum(r["count"] for r in rows)
    classes = borel_group(n, q).num_classes()
    report = {"n": n, "q": q, "rows": rows, "total": total, "classes": classes}
    if total != classes:
        raise FalsificationError("stratification total differs from the class count", report)
    return report


def higman_count(n: int, q: int, kind: str = "U", cap: int = DEFAULT_MAX_GROUP_ORDER) -> int:
    """Number of conjugacy classes of U_n(F_q) or B_n(F_q), by brute-force orbits."""
    if kind == "U":
        return unitriangular_group(n, q, cap=cap).num_classes()
    if kind == "B":
        return borel_group(n, q, cap=cap).num_classes()
    raise ValueError(f"unknown group kind {kind!r}")


def fit_polynomial(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (constant first) of the interpolating polynomial through the points."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(points):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d in range(k):
            coeffs[d] += yi * basis[d] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def evaluate_polynomial(coeffs: Sequence[Fraction], x: int) -> Fraction:
    return sum(c * x**d for d, c in enumerate(coeffs))


def higman_experiment(n: int, qs: Sequence[int], predict: int, kind: str = "U",
                      cap: int = DEFAULT_MAX_GROUP_ORDER) -> dict:
    counts = {q: higman_count(n, q, kind, cap) for q in sorted(set(qs) | {predict})}
    coeffs = fit_polynomial([(q, counts[q]) for q in qs])
    predicted = evaluate_polynomial(coeffs, predict)
    return {"n": n, "kind": kind, "counts": counts, "coeffs": coeffs,
            "predict_at": predict, "predicted": predicted, "actual": counts[predict],
            "match": predicted == counts[predict]}
