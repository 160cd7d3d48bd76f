import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphlab.ancat import AnFunctor, AnModule, Interval
from morphlab.grouprep import character_table
from morphlab.morphcore import aut_functor_group, aut_module_group, fm_candidates, fm_image
from morphlab.oracle import (biset_character, biset_decompose, candidate_closure,
                             evaluate_polynomial, fit_polynomial, functor_universe, higman_count,
                             higman_experiment, matching_below, minimal_functor,
                             module_perm_decompose, oracle_image, overline_constituents,
                             stratification_check, subquotient_below, subquotients)


def F(n, *pairs):
    return AnFunctor.of(n, pairs)


def test_zero_functor_is_trivial_pair():
    TA = character_table(aut_functor_group(AnFunctor.zero(2), 2))
    TB = character_table(aut_module_group(AnModule.full(2), 2))
    assert biset_decompose(AnFunctor.zero(2), q=2) == [(TA.trivial_index, TB.trivial_index, 1)]


@pytest.mark.parametrize("G,q", [(F(2, (1, 2)), 3), (F(3, (1, 2), (2, 3)), 2), (F(2, (1, 1), (2, 2)), 3),
                                 (F(3, (1, 3), (2, 2)), 2)], ids=str)
def test_biset_dimensions_and_duality(G, q):
    chi = biset_character(G, q=q)
    decomp = biset_decompose(G, q=q)
    TA = character_table(chi.aut_f)
    TB = character_table(chi.aut_m)
    assert sum(m * TA.degrees[u] * TB.degrees[v] for u, v, m in decomp) == chi.size
    # KF(M) is a permutation biset, so it is self-dual
    dual = sorted((TA.conj_index[u], TB.conj_index[v], m) for u, v, m in decomp)
    assert dual == sorted(decomp)


def test_biset_identity_entry_counts_points():
    chi = biset_character(F(3, (1, 2), (2, 3)), q=3)
    ia = chi.aut_f.class_map(chi.aut_f.identity)
    ib = chi.aut_m.class_map(chi.aut_m.identity)
    assert chi.values[ia][ib] == chi.size == 3**4


def test_module_perm_decompose_trivial_part():
    # the trivial rep appears once per orbit
    M = AnModule.full(2)
    TB = character_table(aut_module_group(M, 2))
    mult = module_perm_decompose(F(2, (1, 2)), M, 2)
    assert mult[TB.trivial_index] == 3


def test_subquotient_examples():
    big = F(3, (1, 3))
    assert subquotient_below(F(3, (2, 2)), big)
    assert subquotient_below(F(3, (1, 2)), big)
    assert not subquotient_below(big, big)
    assert subquotient_below(big, big, strict=False)
    assert not subquotient_below(F(3, (1, 1), (2, 2)), big)
    assert AnFunctor.zero(3) in subquotients(big)


@pytest.mark.parametrize("n,max_dim", [(2, 4), (3, 4)])
def test_matching_conjecture_on_small_universe(n, max_dim):
    uni = functor_universe(n, max_dim)
    for G, H in itertools.product(uni, repeat=2):
        assert subquotient_below(G, H, strict=False) == matching_below(G, H), (G, H)


intervals3 = st.sampled_from([Interval(a, b) for a in range(1, 4) for b in range(a, 4)])


@settings(max_examples=30, deadline=None)
@given(st.lists(intervals3, max_size=3), st.lists(intervals3, max_size=3))
def test_matching_conjecture_random(gs, fs):
    G = AnFunctor(3, tuple(sorted(gs)))
    H = AnFunctor(3, tuple(sorted(fs)))
    assert subquotient_below(G, H, strict=False) == matching_below(G, H)


def test_overline_redundant_is_empty():
    assert overline_constituents(F(2, (1, 2), (2, 2)), q=2) == []


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_oracle_matches_fm_image(n, q):
    for G in fm_candidates(n):
        assert oracle_image(G, q=q) == fm_image(G, q=q), G


def test_minimal_functor_of_trivial_is_zero():
    M = AnModule.full(3)
    TB = character_table(aut_module_group(M, 2))
    assert minimal_functor(TB.trivial_index, M, 2) == AnFunctor.zero(3)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_minimal_functor_owns_overline(n, q):
    M = AnModule.full(n)
    TB = character_table(aut_module_group(M, q))
    owners = {}
    for G in fm_candidates(n):
        for p in overline_constituents(G, M, q):
            owners[p.v] = G
    assert sorted(owners) == list(range(len(TB)))
    for v, G in owners.items():
        found = minimal_functor(v, M, q)
        assert found == G
        assert found.has_distinct_right_endpoints()


def test_candidate_closure_is_downward_closed():
    uni = set(candidate_closure(2, 2))
    assert all(subquotients(G, 2) <= uni for G in uni)
    assert set(fm_candidates(2)) <= uni


@pytest.mark.parametrize("n,q,classes", [(2, 2, 2), (2, 3, 6), (3, 2, 5)])
def test_stratification(n, q, classes):
    rep = stratification_check(n, q)
    assert rep["total"] == rep["classes"] == classes


def test_fit_polynomial():
    pts = [(2, 5), (3, 11), (5, 29)]
    c = fit_polynomial(pts)
    assert c == [Fraction(-1), Fraction(1), Fraction(1)]
    assert evaluate_polynomial(c, 7) == 55
    assert fit_polynomial([(1, 4), (2, 4)]) == [Fraction(4)]


def test_higman_small():
    assert [higman_count(2, q) for q in (2, 3, 5)] == [2, 3, 5]
    assert higman_count(3, 2) == 5
    assert higman_count(2, 3, kind="B") == 6
    with pytest.raises(ValueError):
        higman_count(2, 2, kind="X")
    exp = higman_experiment(3, [2, 3, 5], 7)
    assert exp["match"] and exp["actual"] == 55


def test_borel_counts_fit_reproduces_stratification():
    exp = higman_experiment(2, [2, 3, 5], 7, kind="B")
    assert exp["coeffs"] == [0, -1, 1]
    assert exp["match"] and exp["actual"] == 42
    for q in (2, 3):
        assert evaluate_polynomial(exp["coeffs"], q) == stratification_check(2, q)["total"]
