"""Effective Khovanskii thresholds for M_n and rigorous log enclosures.

Real quantities built from logarithms are never evaluated in floating point.
``log_product_interval`` returns the dyadic cell [f/2^b, (f+1)/2^b] that
contains the true value of prod_j log_{p_j}(n); cells at precision 2b sit
inside cells at precision b.  Comparisons of an exact rational against such
a real double the precision until they are decided.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import build_mn, primes_upto
from .polynomials import StabilizationResult, detect_stabilization, default_window
from .polytope import EhrhartResult, HullSpec, ehrhart
from .sumset import growth_sequence

START_BITS = 64
MAX_BITS = 1024


class InconclusiveComparison(ArithmeticError):
    pass


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction
    bits: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value, bits: int = 0) -> RationalInterval:
        v = Fraction(value)
        return cls(v, v, bits)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def within(self, other: RationalInterval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def affine(self, scale: Fraction, shift: Fraction) -> RationalInterval:
        """scale * x + shift for scale > 0."""
        assert scale > 0
        return RationalInterval(self.lo * scale + shift, self.hi * scale + shift, self.bits)

    def ceil_hi(self) -> int:
        return math.ceil(self.hi)


# -- logarithms with directed rounding ---------------------------------------

def _atanh_scaled(a: int, b: int, scale_bits: int) -> tuple[int, int]:
    """Integers lo, hi with lo <= 2^scale_bits * atanh(a/b) <= hi, for 0 <= a/b <= 1/3."""
    assert 0 <= 3 * a <= b
    if a == 0:
        return 0, 0
    S = 1 << scale_bits
    total = 0
    terms = 0
    num, den = a, b
    i = 0
    while num * S >= den:
        total += (S * num) // (den * (2 * i + 1))
        terms += 1
        num *= a * a
        den *= b * b
        i += 1
    # each floor lost < 1; the tail after `terms` terms is <= z^(2N+1) / ((2N+1)(1 - z^2))
    tail_num = S * num * b * b
    tail_den = den * (2 * i + 1) * (b * b - a * a)
    tail = -((-tail_num) // tail_den)
    return total, total + terms + tail


def ln_enclosure(m: int, scale_bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= ln(m) <= hi with error about 2^-scale_bits, for integer m >= 1."""
    if m < 1:
        raise ValueError(f"log of non-positive integer {m}")
    if m == 1:
        return Fraction(0), Fraction(0)
    e = m.bit_length() - 1
    base = 1 << e
    # ln m = e ln 2 + ln(m / 2^e),  ln 2 = 2 atanh(1/3),  ln r = 2 atanh((r-1)/(r+1))
    l2_lo, l2_hi = _atanh_scaled(1, 3, scale_bits)
    r_lo, r_hi = _atanh_scaled(m - base, m + base, scale_bits)
    S = 1 << scale_bits
    return Fraction(2 * (e * l2_lo + r_lo), S), Fraction(2 * (e * l2_hi + r_hi), S)


def _exact_log(n: int, p: int) -> int | None:
    """log_p(n) when n is a power of p, else None."""
    a, v = 0, 1
    while v < n:
        v *= p
        a += 1
    return a if v == n else None


def _log_product_enclosure(n: int, primes, scale_bits: int) -> tuple[Fraction, Fraction, bool]:
    lo = hi = Fraction(1)
    exact = True
    ln_n = None
    for p in primes:
        a = _exact_log(n, p)
        if a is not None:
            lo *= a
            hi *= a
            continue
        exact = False
        if ln_n is None:
            ln_n = ln_enclosure(n, scale_bits)
        lp_lo, lp_hi = ln_enclosure(p, scale_bits)
        lo *= ln_n[0] / lp_hi
        hi *= ln_n[1] / lp_lo
    return lo, hi, exact


def log_product_interval(n: int, precision: int = START_BITS) -> RationalInterval:
    """Enclosure of prod over primes p <= n of log_p(n).

    Returns the exact point when every factor is an integer (n <= 2; the empty
    product for n = 1 is 1), otherwise the width-2^-precision dyadic cell
    containing the value.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if precision < 1:
        raise ValueError("precision must be a positive bit count")
    primes = primes_upto(n).primes
    extra = 32
    while True:
        lo, hi, exact = _log_product_enclosure(n, primes, precision + extra)
        if exact:
            return RationalInterval.point(lo, precision)
        cell = math.floor(lo * 2**precision)
        if cell == math.floor(hi * 2**precision):
            return RationalInterval(Fraction(cell, 2**precision), Fraction(cell + 1, 2**precision), precision)
        if extra > 8 * MAX_BITS:
            # value indistinguishable from a dyadic rational; fall back to outward rounding
            return RationalInterval(
                Fraction(cell, 2**precision), Fraction(math.ceil(hi * 2**precision), 2**precision), precision
            )
        extra *= 2


def log_simplex_threshold(n: int, precision: int = START_BITS) -> RationalInterval:
    """n^2 * prod_m log_{p_m}(n) - n + 1: every k beyond it has p(k,n) = q_n(k)."""
    return log_product_interval(n, precision).affine(Fraction(n * n), Fraction(1 - n))


def volume_bound(n: int, precision: int = START_BITS) -> RationalInterval:
    """(1/d!) prod_j log_{p_j}(n), the volume of the log-simplex containing Q_n."""
    d = primes_upto(n).d
    return log_product_interval(n, precision).affine(Fraction(1, math.factorial(d)), Fraction(0))


def certify_at_most(value, interval_at, start: int = START_BITS, max_bits: int = MAX_BITS) -> tuple[bool, int]:
    """Decide value <= x for the real x enclosed by ``interval_at(bits)``.

    Returns (verdict, bits used).  Raises InconclusiveComparison if max_bits
    does not separate them.
    """
    value = Fraction(value)
    bits = start
    while bits <= max_bits:
        iv = interval_at(bits)
        if value <= iv.lo:
            return True, bits
        if value > iv.hi:
            return False, bits
        bits *= 2
    raise InconclusiveComparison(f"{value} is within 2^-{max_bits} of the bound")


# -- thresholds ----------------------------------------------------------------

def gsw_bound(setsize: int, d: int, volume) -> Fraction:
    """d! |A|^2 Vol(H(A)) - |A| + 1, the effective Khovanskii threshold."""
    volume = Fraction(volume)
    if setsize < 1 or d < 0:
        raise ValueError("need |A| >= 1 and d >= 0")
    if volume <= 0 and d > 0:
        raise ValueError("volume must be positive for a full-dimensional hull")
    return math.factorial(d) * setsize * setsize * volume - setsize + 1


@dataclass(frozen=True)
class ThresholdReport:
    n: int
    d: int
    volume: Fraction
    ehrhart: EhrhartResult
    gsw_exact: Fraction
    log_simplex_bound: RationalInterval
    volume_bound: RationalInterval
    sequence: tuple[int, ...]
    empirical: StabilizationResult | None
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def threshold_ceiling(self) -> int:
        return self.log_simplex_bound.ceil_hi()

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())


def default_kmax(d: int) -> int:
    # enough values for a degree-d fit plus the default confirmation window
    return d + default_window(d)


def threshold_report(
    n: int, kmax: int | None = None, sequence=None, ehrhart_result: EhrhartResult | None = None
) -> ThresholdReport:
    """Proven bounds, empirical threshold and volume for M_n, with verdicts.

    ``sequence`` (p(0..kmax, n)) and ``ehrhart_result`` may be supplied
    precomputed, e.g. from a cache.
    """
    basis = primes_upto(n)
    d = basis.d
    if kmax is None:
        kmax = default_kmax(d)
    mn = build_mn(n)
    if sequence is None:
        sequence = growth_sequence(mn, kmax, label=f"M_{n}").values
    sequence = tuple(sequence[: kmax + 1])
    if len(sequence) < kmax + 1:
        raise ValueError(f"sequence has {len(sequence)} values, kmax={kmax} needs {kmax + 1}")
    ehr = ehrhart_result or ehrhart(HullSpec(mn, n=n))
    volume = ehr.volume
    gsw = gsw_bound(len(mn), d, volume)
    threshold = log_simplex_threshold(n)
    vbound = volume_bound(n)

    window = default_window(d)
    empirical = None
    if len(sequence) >= d + 1 + window:
        empirical = detect_stabilization(sequence, d, window)

    verdicts = {}
    verdicts["gsw_le_log_simplex_bound"], _ = certify_at_most(gsw, lambda b: log_simplex_threshold(n, b))
    verdicts["gsw_le_threshold_ceiling"] = gsw <= threshold.ceil_hi()
    verdicts["volume_le_bound"], _ = certify_at_most(volume, lambda b: volume_bound(n, b))
    verdicts["empirical_available"] = empirical is not None
    if empirical is not None:
        verdicts["empirical_le_threshold_ceiling"] = empirical.threshold <= threshold.ceil_hi()
        verdicts["degree_is_d"] = empirical.polynomial.degree == d
        verdicts["leading_coefficient_is_volume"] = empirical.polynomial.leading == volume
    return ThresholdReport(n, d, volume, ehr, gsw, threshold, vbound, sequence, empirical, verdicts)
