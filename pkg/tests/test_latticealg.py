import itertools

import pytest

from morphlab.errors import LatticeMismatchError, ResourceCapError
from morphlab.exactmath import Subspace, enumerate_subspaces, gauss_binomial
from morphlab.latticealg import (SubobjectLattice, bx_multiply, closed_form_coeff,
                                 coefficient_recursion_sum, hyperplane_product_coeffs,
                                 product_of_complements, quotient_embedding, subspace_lattice)


def test_unit_and_idempotent():
    lat = subspace_lattice(2, 2)
    one = lat.one()
    for i in range(len(lat)):
        x = lat.chi(i)
        assert one * x == x
        assert x * x == x


def test_two_lines_hand_expansion():
    lat = subspace_lattice(2, 2)
    v1, v2 = enumerate_subspaces(2, 1, 2)[:2]
    prod = (lat.one() - lat.chi(v1)) * (lat.one() - lat.chi(v2))
    want = lat.one() - lat.chi(v1) - lat.chi(v2) + lat.chi(Subspace.zero(2, 2))
    assert prod == want


def test_mismatch_rejected():
    a = subspace_lattice(1, 2).one()
    b = subspace_lattice(2, 2).one()
    with pytest.raises(LatticeMismatchError):
        bx_multiply(a, b)


def test_coefficients_small():
    for q in (2, 3, 5):
        assert hyperplane_product_coeffs(1, q) == [1, -1]
    assert hyperplane_product_coeffs(2, 2)[2] == 2
    assert hyperplane_product_coeffs(3, 2) == [1, -1, 2, -8]


@pytest.mark.parametrize("b", range(5))
@pytest.mark.parametrize("q", [2, 3])
def test_closed_form_and_recursion(b, q):
    coeffs = hyperplane_product_coeffs(b, q)
    assert coeffs == [closed_form_coeff(m, q) for m in range(b + 1)]
    if b >= 1:
        assert coefficient_recursion_sum(coeffs, q) == 0
        assert sum(a * gauss_binomial(b, m, q) for m, a in enumerate(coeffs)) == 0


def test_coeffs_cap():
    with pytest.raises(ResourceCapError):
        hyperplane_product_coeffs(8, 3, cap=100)


def test_all_ones_evaluation_kills_products():
    lat = subspace_lattice(3, 2)
    for r in range(1, 4):
        for factors in itertools.combinations(range(len(lat)), r):
            assert product_of_complements(lat, factors).evaluate_all_ones() == 0


def test_quotient_embedding():
    lat = subspace_lattice(2, 2)
    zero = Subspace.zero(2, 2)
    sub, embed = quotient_embedding(lat, zero)
    assert len(sub) == len(lat)
    x = sub.chi(3)
    assert embed(x) == lat.chi(sub.elements[3])

    full = Subspace.full(2, 2)
    sub, embed = quotient_embedding(lat, full)
    assert len(sub) == 1 and embed(sub.one()) == lat.one()

    line = enumerate_subspaces(2, 1, 2)[0]
    sub, embed = quotient_embedding(lat, line)
    assert {s for s in sub.elements} == {line, full}
    # algebra homomorphism on basis products
    for i in range(len(sub)):
        for j in range(len(sub)):
            assert embed(sub.chi(i) * sub.chi(j)) == embed(sub.chi(i)) * embed(sub.chi(j))

    with pytest.raises(LatticeMismatchError):
        quotient_embedding(lat, Subspace.full(3, 2))


def test_blockwise_expansion_matches_global():
    # semisimple object with two isotypic blocks: pairs (U, W) of subspaces of F_2^2 and F_2^1
    q = 2
    A = [s for m in range(3) for s in enumerate_subspaces(2, m, q)]
    B = [s for m in range(2) for s in enumerate_subspaces(1, m, q)]
    elems = [(u, w) for u in A for w in B]
    lat = SubobjectLattice(elems, lambda x, y: (x[0] & y[0], x[1] & y[1]))
    top = (Subspace.full(2, q), Subspace.full(1, q))
    maximal = [i for i, (u, w) in enumerate(elems)
               if (u.dim, w.dim) in ((1, 1), (2, 0))]
    glob = product_of_complements(lat, maximal)

    la = subspace_lattice(2, q)
    lb = subspace_lattice(1, q)
    pa = product_of_complements(la, [i for i, s in enumerate(la.elements) if s.dim == 1])
    pb = product_of_complements(lb, [i for i, s in enumerate(lb.elements) if s.dim == 0])
    # tensor product of the two expansions, placed in the product lattice
    coeffs = [0] * len(lat)
    for u, cu in zip(la.elements, pa.coeffs):
        for w, cw in zip(lb.elements, pb.coeffs):
            coeffs[lat.index[(u, w)]] += cu * cw
    assert list(glob.coeffs) == coeffs
    assert lat.elements[lat.top] == top
