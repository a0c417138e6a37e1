from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spinbrauer.scalars import DeltaPolynomial, RootTwoNumber

D = DeltaPolynomial.delta


def poly(*pairs):
    return DeltaPolynomial(dict(pairs))


polys = st.builds(
    DeltaPolynomial,
    st.dictionaries(st.integers(0, 6), st.integers(-50, 50), max_size=5),
)
rationals = st.fractions(min_value=-40, max_value=40, max_denominator=12)
root2s = st.builds(RootTwoNumber, rationals, rationals)


def test_product_of_linear_factors():
    assert (D(1) + 1) * (D(1) - 1) == poly((2, 1), (0, -1))


def test_additive_inverse_gives_empty_table():
    s = poly((1, 2)) + poly((1, -2))
    assert not s and s.to_pairs() == []


def test_eval_substitutes_exactly():
    assert poly((2, 1), (0, -1)).eval_at(5) == 24


def test_degree_and_zero_conventions():
    assert DeltaPolynomial.zero().degree == -1
    assert poly((3, 2), (0, 1)).degree == 3
    assert DeltaPolynomial.constant(0) == DeltaPolynomial.zero()


def test_pairs_round_trip():
    p = poly((0, -3), (4, 7))
    assert DeltaPolynomial.from_pairs(p.to_pairs()) == p
    assert p.to_pairs() == [[0, -3], [4, 7]]


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        DeltaPolynomial({-1: 2})


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


@given(polys, st.integers(-7, 7))
def test_evaluation_is_a_ring_map(p, k):
    q = p * p + 3 * p
    assert q.eval_at(k) == p.eval_at(k) ** 2 + 3 * p.eval_at(k)


def test_root2_norm_form():
    assert RootTwoNumber(1, 1) * RootTwoNumber(1, -1) == RootTwoNumber(-1)


def test_sqrt2_squares_to_two():
    s = RootTwoNumber.sqrt2()
    assert s * s == RootTwoNumber(2)


def test_inverse_rationalizes():
    assert RootTwoNumber(1, 1).inverse() == RootTwoNumber(-1, 1)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        RootTwoNumber(0, 0).inverse()


def test_json_uses_fraction_strings():
    x = RootTwoNumber(Fraction(1, 2), Fraction(-3, 4))
    assert x.to_json() == {"a": "1/2", "b": "-3/4"}
    assert RootTwoNumber.from_json(x.to_json()) == x


@given(root2s)
def test_nonzero_elements_invert(x):
    if x:
        assert x * x.inverse() == RootTwoNumber(1)


@given(root2s, root2s, root2s)
def test_field_laws(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z


@given(root2s)
def test_norm_multiplies_with_conjugate(x):
    assert x * x.conjugate() == RootTwoNumber(x.norm())
