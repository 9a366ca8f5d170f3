"""Lattice points of dilations tQ of Q = conv(V) for finite V in Z^d.

Membership in tQ is decided by exact LP feasibility: x is in tQ iff
x = sum lambda_i v_i with lambda >= 0 and sum lambda_i = t.  No facet
description of Q is ever computed.  When an LP is infeasible its Farkas
multipliers give a valid inequality w.z <= c*t for all of tQ; those cuts are
kept and tried first on later candidates, which rejects most of them without
another LP.
"""
from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GuardExceeded
from .lattice import build_mn, primes_upto, smooth_vectors
from .lp import phase_one
from .points import ExponentVector, PointSet
from .polynomials import RationalPolynomial, newton_interpolate
from .sumset import growth_sequence, iter_kfold

WITNESS_LIMIT = 100
MAX_CANDIDATES = 3_000_000


class DegenerateHullError(ValueError):
    """Raised when conv(V) is not full-dimensional, so its volume is 0."""


@dataclass(frozen=True)
class HullSpec:
    generators: PointSet
    # set when generators are exactly M_n; enables the product-bound enumeration
    n: int | None = None

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a hull needs at least one generator")

    @property
    def d(self) -> int:
        return self.generators.dim

    @classmethod
    def for_n(cls, n: int) -> HullSpec:
        return cls(build_mn(n), n=n)

    @classmethod
    def from_points(cls, points: Iterable[Iterable[int]]) -> HullSpec:
        return cls(PointSet(points))

    def describe(self) -> str:
        if self.n is not None:
            return f"Q_{self.n}"
        return f"conv of {len(self.generators)} points in Z^{self.d}"


@dataclass(frozen=True)
class EhrhartResult:
    polynomial: RationalPolynomial
    counts: tuple[int, ...]
    volume: Fraction


@dataclass(frozen=True)
class ClosednessRow:
    k: int
    star_count: int
    lattice_count: int
    witnesses: PointSet
    witness_count: int

    @property
    def closed(self) -> bool:
        return self.witness_count == 0


@dataclass(frozen=True)
class ClosednessReport:
    spec: HullSpec
    rows: tuple[ClosednessRow, ...] = field(default=())

    @property
    def closed(self) -> bool:
        """True when every tested dilation is closed (says nothing beyond kmax)."""
        return all(r.closed for r in self.rows)


@dataclass(frozen=True)
class SandwichRow:
    k: int
    p_k: int
    lattice_count: int
    p_k_plus_d: int

    @property
    def ok(self) -> bool:
        return self.p_k <= self.lattice_count <= self.p_k_plus_d


def hull_membership(x: ExponentVector, spec: HullSpec, t: int) -> bool:
    """Is x in tQ?  Decided by one exact phase-1 LP, no shortcuts."""
    x = tuple(x)
    if len(x) != spec.d:
        raise ValueError(f"point of length {len(x)} in a hull of dimension {spec.d}")
    columns = [v + (1,) for v in spec.generators]
    return phase_one(columns, x + (t,)).feasible


class LatticeEnumerator:
    """Enumerates int(tQ) for one hull, sharing LP cuts across calls."""

    def __init__(self, spec: HullSpec):
        self.spec = spec
        self._columns = [v + (1,) for v in spec.generators]
        self.cuts: list[tuple[tuple[int, ...], int]] = []
        self.lp_calls = 0

    def contains(self, x: ExponentVector, t: int) -> bool:
        for w, c in self.cuts:
            if sum(a * b for a, b in zip(w, x)) > c * t:
                return False
        self.lp_calls += 1
        result = phase_one(self._columns, tuple(x) + (t,))
        if result.feasible:
            return True
        self._add_cut(result.certificate)
        return False

    def _add_cut(self, y) -> None:
        # y = (w, w0) with w.v + w0 <= 0 for all generators v: w.z <= -w0 on Q
        scale = math.lcm(*(f.denominator for f in y))
        ints = [int(f * scale) for f in y]
        g = math.gcd(*ints)
        if g > 1:
            ints = [v // g for v in ints]
        w, c = tuple(ints[:-1]), -ints[-1]
        assert all(sum(a * b for a, b in zip(w, v)) <= c for v in self.spec.generators)
        self.cuts.append((w, c))

    def candidates(self, t: int) -> Iterator[ExponentVector]:
        spec = self.spec
        if spec.n is not None:
            # tQ_n lies in the simplex sum x_j log p_j <= t log n, i.e. prod p_j^x_j <= n^t
            yield from smooth_vectors(primes_upto(spec.n), spec.n**t, limit=MAX_CANDIDATES)
            return
        # generic fallback: the integer box of tQ; only for tiny examples
        lows = [t * min(v[j] for v in spec.generators) for j in range(spec.d)]
        highs = [t * max(v[j] for v in spec.generators) for j in range(spec.d)]
        yield from itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs)))

    def points(self, t: int, known_inside: PointSet | None = None) -> PointSet:
        """int(tQ).  Points of ``known_inside`` (a subset of tQ) skip the LP."""
        if t < 0:
            raise ValueError(f"t must be >= 0, got {t}")
        if t == 0:
            return PointSet.zero(self.spec.d)
        inside = []
        for count, x in enumerate(self.candidates(t), 1):
            if count > MAX_CANDIDATES:
                raise GuardExceeded(f"more than {MAX_CANDIDATES} candidates for int({t}Q)")
            if (known_inside is not None and x in known_inside) or self.contains(x, t):
                inside.append(x)
        return PointSet(inside, dim=self.spec.d)


def dilation_lattice_points(spec: HullSpec, t: int) -> PointSet:
    """All integer points of tQ."""
    return LatticeEnumerator(spec).points(t)


def _dilations(spec: HullSpec, tmax: int) -> Iterator[tuple[int, PointSet, PointSet]]:
    """Yield (t, t*int(Q), int(tQ)) for t = 0..tmax.

    The sumset t*int(Q) lies inside tQ, so its points are accepted without an
    LP; every other candidate is decided by the LP (or a cut it produced).
    """
    enum = LatticeEnumerator(spec)
    yield 0, PointSet.zero(spec.d), PointSet.zero(spec.d)
    if tmax < 1:
        return
    base = enum.points(1, known_inside=spec.generators)
    for t, star in iter_kfold(base, tmax):
        if t == 0:
            continue
        yield t, star, (base if t == 1 else enum.points(t, known_inside=star))


def _affine_rank(points: PointSet) -> int:
    pts = list(points)
    origin = pts[0]
    rows = [[Fraction(a - b) for a, b in zip(p, origin)] for p in pts[1:]]
    rank = 0
    ncols = points.dim
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] / prow[col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        rank += 1
    return rank


def ehrhart(spec: HullSpec) -> EhrhartResult:
    """Ehrhart polynomial L(Q, t) from the counts at t = 0..d.

    The leading coefficient is the d-dimensional volume.  For d = 0 the
    polynomial is the constant 1 and the volume is taken to be 1.
    """
    d = spec.d
    if d == 0:
        return EhrhartResult(RationalPolynomial([1]), (1,), Fraction(1))
    if _affine_rank(spec.generators) < d:
        raise DegenerateHullError(f"{spec.describe()} is not full-dimensional; volume is 0")
    counts = tuple(len(lattice) for _, _, lattice in _dilations(spec, d))
    poly = newton_interpolate(list(enumerate(counts)))
    return EhrhartResult(poly, counts, poly.coefficient(d))


def star_set(spec: HullSpec, k: int) -> PointSet:
    """k * int(Q): sums of k integer points of Q."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    base = LatticeEnumerator(spec).points(1, known_inside=spec.generators)
    for _, result in iter_kfold(base, k):
        pass
    return result


def closedness_report(spec: HullSpec, kmax: int) -> ClosednessReport:
    """Compare k * int(Q) with int(kQ) for k = 1..kmax and collect gap witnesses."""
    if kmax < 1:
        raise ValueError(f"kmax must be >= 1, got {kmax}")
    rows = []
    for k, star, lattice in _dilations(spec, kmax):
        if k == 0:
            continue
        if not star.issubset(lattice):
            raise AssertionError(f"k*int(Q) escapes kQ at k={k}; the membership test is broken")
        gap = lattice.difference(star)
        shown = PointSet(gap.elements[:WITNESS_LIMIT], dim=spec.d)
        rows.append(ClosednessRow(k, len(star), len(lattice), shown, len(gap)))
    return ClosednessReport(spec, tuple(rows))


def lattice_counts(spec: HullSpec, tmax: int) -> tuple[int, ...]:
    """L(Q, t) for t = 0..tmax by direct enumeration."""
    return tuple(len(lattice) for _, _, lattice in _dilations(spec, tmax))


def sandwich_check(n: int, kmax: int) -> list[SandwichRow]:
    """p(k,n) <= L(Q_n,k) <= p(k+d,n) for k = 1..kmax, all three counted exactly."""
    if n < 1 or kmax < 1:
        raise ValueError("n and kmax must be >= 1")
    spec = HullSpec.for_n(n)
    d = spec.d
    p = growth_sequence(spec.generators, kmax + d, label=f"M_{n}")
    lattice = lattice_counts(spec, kmax)
    return [SandwichRow(k, p[k], lattice[k], p[k + d]) for k in range(1, kmax + 1)]
