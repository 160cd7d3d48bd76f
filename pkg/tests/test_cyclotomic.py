import cmath

from hypothesis import given
from hypothesis import strategies as st

from morphlab.cyclotomic import Cyclotomic, cyclotomic_poly, euler_phi


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert len(cyclotomic_poly(12)) - 1 == euler_phi(12) == 4


def test_root_relations():
    z = Cyclotomic.root(3)
    assert z * z * z == 1
    assert 1 + z + z * z == 0
    assert z * z.conj() == 1
    assert str(z) == "E(3)"
    assert str(z * z) == "-1-E(3)"


conductors = st.sampled_from([1, 2, 3, 4, 6, 8, 12])


@st.composite
def elements(draw, e=None):
    e = e or draw(conductors)
    powers = draw(st.dictionaries(st.integers(0, e - 1), st.integers(-3, 3), max_size=4))
    return Cyclotomic.from_powers(e, powers)


@given(conductors, st.integers(0, 30))
def test_unit_roots_have_norm_one(e, k):
    z = Cyclotomic.root(e, k)
    assert z * z.conj() == 1


@given(elements(), elements())
def test_float_shadow(a, b):
    assert abs((a + b).to_complex() - (a.to_complex() + b.to_complex())) < 1e-9
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9
    assert abs(a.conj().to_complex() - a.to_complex().conjugate()) < 1e-9


@given(elements())
def test_conjugation_involution(a):
    assert a.conj().conj() == a


def test_lift_and_mixed_conductors():
    i = Cyclotomic.root(4)
    w = Cyclotomic.root(3)
    p = i * w
    assert p.e == 12
    assert abs(p.to_complex() - 1j * cmath.exp(2j * cmath.pi / 3)) < 1e-9
    assert Cyclotomic.from_rational(2, 5) == 2
