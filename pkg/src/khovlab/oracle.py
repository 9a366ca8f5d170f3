"""Brute-force references for the sumset and lattice-point engines.

Nothing here touches the packed sumsets, the LP or the prime basis: products
are formed as plain integers and polytope points are tested against their
defining inequality.
"""
from __future__ import annotations

import itertools
import math

from .errors import GuardExceeded
from .points import PointSet

GUARD = 10**7


def brute_products(n: int, k: int) -> int:
    """Number of distinct products of k factors from {1..n}."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    count = math.comb(n + k - 1, k)
    if count > GUARD:
        raise GuardExceeded(f"{count} multisets of size {k} from {{1..{n}}} exceeds {GUARD}")
    # descending factor order: a different traversal from the engines
    factors = range(n, 0, -1)
    return len({math.prod(c) for c in itertools.combinations_with_replacement(factors, k)})


def brute_halfspace_points(coeffs: list[int], rhs: int, t: int) -> PointSet:
    """Nonnegative integer x with sum coeffs_i x_i <= t * rhs, by box enumeration."""
    if any(c <= 0 for c in coeffs):
        raise ValueError("coefficients must be positive")
    if t < 0:
        raise ValueError("t must be >= 0")
    bound = t * rhs
    box = [range(bound // c + 1) for c in coeffs]
    pts = [x for x in itertools.product(*box) if sum(c * v for c, v in zip(coeffs, x)) <= bound]
    return PointSet(pts, dim=len(coeffs))


def brute_kfold(A: PointSet, k: int) -> PointSet:
    """All sums of k-multisets of A, enumerated directly with no reuse across k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    count = math.comb(len(A) + k - 1, k)
    if count > GUARD:
        raise GuardExceeded(f"{count} multisets exceeds {GUARD}")
    dim = A.dim
    sums = []
    for combo in itertools.combinations_with_replacement(list(A)[::-1], k):
        sums.append(tuple(sum(p[j] for p in combo) for j in range(dim)))
    return PointSet(sums, dim=dim)
