"""Primes, exponent vectors and the exponent set of {1, ..., n}.

An integer m <= n is identified with its vector of prime exponents over the
primes up to n.  Multiplication of integers becomes addition of vectors, so
products of k factors from {1..n} correspond to the k-fold sumset of M_n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GuardExceeded
from .points import ExponentVector, PointSet

# exponents of integers <= n**k are at most k*log2(n); far below this at desk scale
MAX_COORD = 2**31 - 1


@dataclass(frozen=True)
class PrimeBasis:
    n: int
    primes: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.primes)

    def __len__(self) -> int:
        return len(self.primes)


def _sieve(n: int) -> list[int]:
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def primes_upto(n: int) -> PrimeBasis:
    """All primes <= n in increasing order (empty for n = 1)."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return PrimeBasis(n, tuple(_sieve(n)))


def factor_vector(m: int, basis: PrimeBasis) -> ExponentVector:
    """Exponent vector of ``m`` over ``basis``.

    Raises ValueError when ``m`` has a prime factor outside the basis.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    coords = []
    rest = m
    for p in basis.primes:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        coords.append(e)
    if rest != 1:
        raise ValueError(f"{m} has a prime factor outside the basis {basis.primes}")
    return tuple(coords)


def vector_value(v: ExponentVector, basis: PrimeBasis) -> int:
    if len(v) != basis.d:
        raise ValueError(f"vector of length {len(v)} does not match basis of size {basis.d}")
    value = 1
    for p, e in zip(basis.primes, v):
        value *= p**e
    return value


def smooth_vectors(basis: PrimeBasis, bound: int, limit: int | None = None) -> list[ExponentVector]:
    """Every alpha >= 0 with prod p_j**alpha_j <= bound, by exact integer DFS.

    Raises GuardExceeded once more than ``limit`` vectors have been found.
    """
    primes = basis.primes
    d = len(primes)
    out: list[ExponentVector] = []
    coords = [0] * d

    def walk(j: int, remaining: int) -> None:
        # remaining = floor(bound / value so far); p**e <= remaining is the exact test
        if j == d:
            out.append(tuple(coords))
            if limit is not None and len(out) > limit:
                raise GuardExceeded(f"more than {limit} exponent vectors with product <= {bound}")
            return
        p = primes[j]
        e = 0
        while True:
            coords[j] = e
            walk(j + 1, remaining)
            if remaining < p:
                break
            remaining //= p
            e += 1
            assert e <= MAX_COORD
        coords[j] = 0

    if bound >= 1:
        walk(0, bound)
    out.sort()
    return out


def build_mn(n: int) -> PointSet:
    """M_n: exponent vectors of the integers 1..n, as a canonical PointSet."""
    basis = primes_upto(n)
    return PointSet(smooth_vectors(basis, n), dim=basis.d)
