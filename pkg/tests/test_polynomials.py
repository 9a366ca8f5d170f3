from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from khovlab.polynomials import (
    InsufficientData,
    RationalPolynomial,
    detect_stabilization,
    finite_differences,
    newton_interpolate,
)


def test_interpolation_examples():
    assert newton_interpolate([(0, 1), (1, 2)]) == RationalPolynomial([1, 1])
    assert newton_interpolate([(0, 1), (1, 4), (2, 9)]) == RationalPolynomial([1, 2, 1])
    p = newton_interpolate([(0, 1), (1, 3), (2, 6)])
    assert p == RationalPolynomial([1, Fraction(3, 2), Fraction(1, 2)])
    assert all(p(t) == (t + 1) * (t + 2) // 2 for t in range(20))


def test_interpolation_rejects_duplicate_nodes():
    with pytest.raises(ValueError):
        newton_interpolate([(1, 1), (1, 2)])


def test_interpolation_detects_lower_degree():
    p = newton_interpolate([(t, 3 * t + 1) for t in range(6)])
    assert p.degree == 1


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=7), st.integers(-5, 5))
def test_interpolation_reproduces_points(values, start):
    pts = [(start + 2 * i, v) for i, v in enumerate(values)]
    p = newton_interpolate(pts)
    assert p.degree < len(pts)
    assert all(p(x) == y for x, y in pts)


def test_finite_differences_examples():
    assert finite_differences([1, 4, 9, 16, 25], 3) == [0, 0]
    assert finite_differences([1, 2, 3], 1) == [1, 1]
    assert finite_differences([1, 5, 14, 30], 2) == [5, 7]
    with pytest.raises(ValueError):
        finite_differences([1, 2], 3)


def test_binomial_basis_is_integral_for_integer_valued():
    p = RationalPolynomial([1, Fraction(13, 6), Fraction(3, 2), Fraction(1, 3)])
    coeffs = p.binomial_coefficients()
    assert coeffs == (1, 4, 5, 2)
    assert all(sum(c * comb(t, i) for i, c in enumerate(coeffs)) == p(t) for t in range(10))


def test_polynomial_text():
    assert str(RationalPolynomial([1, Fraction(3, 2), Fraction(1, 2)])) == "(1/2)t^2 + (3/2)t + 1"
    assert str(RationalPolynomial([0, -1, 0, 2])) == "2t^3 - t"
    assert str(RationalPolynomial([])) == "0"
    assert RationalPolynomial([]).degree == -1


def test_detect_stabilization_examples():
    res = detect_stabilization([(k + 1) ** 2 for k in range(11)], 2, 3)
    assert res.threshold == 0
    assert res.polynomial == RationalPolynomial([1, 2, 1])
    assert res.confirmed_upto == 10

    res = detect_stabilization(list(range(1, 12)), 1, 3)
    assert (res.threshold, res.polynomial) == (0, RationalPolynomial([1, 1]))

    res = detect_stabilization([1] * 6, 0, 2)
    assert (res.threshold, res.polynomial) == (0, RationalPolynomial([1]))


def test_detect_stabilization_finds_late_threshold():
    # agrees with k^2 only from k = 4 on
    seq = [7, 0, 2, 20] + [k * k for k in range(4, 16)]
    res = detect_stabilization(seq, 2, 3)
    assert res.threshold == 4
    assert res.polynomial == RationalPolynomial([0, 0, 1])
    # the least threshold: the polynomial misses the value just before it
    assert res.polynomial(3) != seq[3]
    assert finite_differences(seq[res.threshold:], 3) == [0] * (len(seq) - res.threshold - 3)


def test_detect_stabilization_none_and_insufficient():
    assert detect_stabilization([2**k for k in range(12)], 2, 3) is None
    with pytest.raises(InsufficientData):
        detect_stabilization([1, 2, 3], 2, 3)
