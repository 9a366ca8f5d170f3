import math

import pytest
from hypothesis import given, strategies as st

from khovlab.lattice import build_mn, factor_vector, primes_upto, smooth_vectors, vector_value
from khovlab.sumset import is_downset


@pytest.mark.parametrize(
    "n, primes",
    [(1, ()), (2, (2,)), (10, (2, 3, 5, 7)), (20, (2, 3, 5, 7, 11, 13, 17, 19))],
)
def test_primes_upto(n, primes):
    basis = primes_upto(n)
    assert basis.primes == primes
    assert basis.d == len(primes)


def test_primes_upto_rejects_zero():
    with pytest.raises(ValueError):
        primes_upto(0)


def test_prime_count_against_trial_division():
    def is_prime(m):
        return m > 1 and all(m % q for q in range(2, math.isqrt(m) + 1))

    for n in range(1, 300):
        assert primes_upto(n).primes == tuple(m for m in range(2, n + 1) if is_prime(m))


def test_factor_vector_examples():
    assert factor_vector(12, primes_upto(10)) == (2, 1, 0, 0)
    assert factor_vector(1, primes_upto(10)) == (0, 0, 0, 0)
    assert factor_vector(19, primes_upto(20)) == (0, 0, 0, 0, 0, 0, 0, 1)


def test_factor_vector_rejects_outside_primes():
    with pytest.raises(ValueError):
        factor_vector(11, primes_upto(10))
    with pytest.raises(ValueError):
        factor_vector(0, primes_upto(10))


def test_vector_value_examples():
    assert vector_value((2, 1, 0, 0), primes_upto(10)) == 12
    assert vector_value((0, 0, 0, 0), primes_upto(10)) == 1
    assert vector_value((), primes_upto(1)) == 1
    assert vector_value((8, 0), primes_upto(4)) == 256
    with pytest.raises(ValueError):
        vector_value((1,), primes_upto(10))


@given(st.integers(min_value=1, max_value=500), st.data())
def test_factor_value_roundtrip(n, data):
    basis = primes_upto(n)
    m = data.draw(st.integers(min_value=1, max_value=n))
    assert vector_value(factor_vector(m, basis), basis) == m


def test_build_mn_small():
    assert build_mn(1).elements == ((),)
    assert set(build_mn(4)) == {(0, 0), (1, 0), (0, 1), (2, 0)}
    assert set(build_mn(5)) == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 0, 0), (0, 0, 1)}


@pytest.mark.parametrize("n", list(range(1, 41)) + [97, 128, 210])
def test_build_mn_is_factorization_of_1_to_n(n):
    basis = primes_upto(n)
    mn = build_mn(n)
    assert len(mn) == n
    assert set(mn) == {factor_vector(m, basis) for m in range(1, n + 1)}
    assert (0,) * basis.d in mn
    for j in range(basis.d):
        assert tuple(int(i == j) for i in range(basis.d)) in mn
    assert is_downset(mn)


def test_smooth_vectors_boundary_is_exact():
    # 2^10 = 1024 sits exactly on the bound; 3^7 = 2187 > 2048
    vecs = smooth_vectors(primes_upto(3), 1024)
    assert (10, 0) in vecs and (11, 0) not in vecs
    assert all(2**a * 3**b <= 1024 for a, b in vecs)
    assert len(vecs) == sum(1 for m in range(1, 1025) if _is_3_smooth(m))


def _is_3_smooth(m):
    for p in (2, 3):
        while m % p == 0:
            m //= p
    return m == 1
