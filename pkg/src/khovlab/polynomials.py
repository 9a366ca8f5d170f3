"""Exact univariate polynomials over Q and eventual-polynomial detection."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction


class InsufficientData(ValueError):
    pass


class RationalPolynomial:
    """Dense polynomial with Fraction coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        # the zero polynomial gets degree -1
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial({self})"

    def __str__(self) -> str:
        return format_terms([(c, _power("t", i)) for i, c in enumerate(self.coeffs)])

    def binomial_coefficients(self) -> tuple[Fraction, ...]:
        """c_i with p(t) = sum c_i * C(t, i); integers when p is integer-valued."""
        values = [self(t) for t in range(len(self.coeffs))]
        out = []
        while values:
            out.append(values[0])
            values = [b - a for a, b in zip(values, values[1:])]
        return tuple(out)

    def binomial_str(self) -> str:
        return format_terms([(c, "" if i == 0 else f"C(t,{i})") for i, c in enumerate(self.binomial_coefficients())])


def _power(var: str, i: int) -> str:
    return "" if i == 0 else var if i == 1 else f"{var}^{i}"


def format_terms(terms: list[tuple[Fraction, str]]) -> str:
    """Render sum c*m, highest term first, e.g. '(1/2)t^2 + (3/2)t + 1'."""
    parts = []
    for c, mono in reversed(terms):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        elif a.denominator == 1:
            body = f"{a}{mono}" if mono.startswith("t") else f"{a}*{mono}"
        else:
            body = f"({a}){mono}" if mono.startswith("t") else f"({a})*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def newton_interpolate(points: Sequence[tuple[int, object]]) -> RationalPolynomial:
    """Unique polynomial of degree < len(points) through the given points.

    Divided differences in Newton form, expanded to the monomial basis.
    On consecutive integer nodes this is the forward-difference formula.
    """
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be pairwise distinct")
    table = [Fraction(y) for _, y in points]
    newton = []
    for level in range(len(xs)):
        newton.append(table[0])
        table = [(b - a) / (xs[i + level + 1] - xs[i]) for i, (a, b) in enumerate(zip(table, table[1:]))]
    # Horner on the Newton form: p = c0 + (t - x0)(c1 + (t - x1)(c2 + ...))
    coeffs: list[Fraction] = []
    for c, x in zip(reversed(newton), reversed(xs[: len(newton)])):
        shifted = [Fraction(0)] + coeffs
        for i, a in enumerate(coeffs):
            shifted[i] -= x * a
        shifted[0] += c
        coeffs = shifted
    return RationalPolynomial(coeffs)


def finite_differences(seq: Sequence[int], order: int) -> list[int]:
    if order < 1 or order > len(seq):
        raise ValueError(f"order must lie in 1..{len(seq)}, got {order}")
    out = list(seq)
    for _ in range(order):
        out = [b - a for a, b in zip(out, out[1:])]
    return out


@dataclass(frozen=True)
class StabilizationResult:
    threshold: int
    polynomial: RationalPolynomial
    confirmed_upto: int


def default_window(d: int) -> int:
    return d + 2


def detect_stabilization(seq: Sequence[int], d: int, window: int | None = None) -> StabilizationResult | None:
    """Least k0 after which ``seq`` agrees with one polynomial of degree <= d.

    The polynomial is fitted to seq[k0 .. k0+d] and must reproduce every later
    value, of which there are at least ``window``.  The threshold is empirical:
    it is only known to hold up to ``confirmed_upto``.
    """
    values = list(getattr(seq, "values", seq))
    if window is None:
        window = default_window(d)
    if d < 0 or window < 1:
        raise ValueError("need d >= 0 and window >= 1")
    if len(values) < d + 1 + window:
        raise InsufficientData(
            f"{len(values)} values cannot fit degree {d} with a window of {window}; need {d + 1 + window}"
        )
    last = len(values) - 1
    for k0 in range(0, len(values) - d - window):
        poly = newton_interpolate([(k, values[k]) for k in range(k0, k0 + d + 1)])
        if all(poly(k) == values[k] for k in range(k0 + d + 1, last + 1)):
            return StabilizationResult(k0, poly, last)
    return None
