"""JSON-ready encodings of results.

Exact rationals become {"num": str, "den": str}; intervals become
{"lo": rational, "hi": rational, "bits": int}; point sets become lists of
integer arrays in lexicographic order.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .bounds import RationalInterval, ThresholdReport
from .points import PointSet
from .polynomials import RationalPolynomial, StabilizationResult
from .polytope import ClosednessReport, EhrhartResult, SandwichRow

SCHEMA_VERSION = 1


def rational(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def parse_rational(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def interval(iv: RationalInterval) -> dict:
    return {"lo": rational(iv.lo), "hi": rational(iv.hi), "bits": iv.bits}


def points(ps: PointSet) -> list[list[int]]:
    return ps.to_lists()


def polynomial(p: RationalPolynomial) -> dict:
    return {
        "degree": p.degree,
        "coefficients": [rational(c) for c in p.coeffs],
        "binomial_coefficients": [rational(c) for c in p.binomial_coefficients()],
        "text": str(p),
        "binomial_text": p.binomial_str(),
    }


def stabilization(res: StabilizationResult | None) -> dict | None:
    if res is None:
        return None
    return {
        "threshold": res.threshold,
        "confirmed_upto": res.confirmed_upto,
        "polynomial": polynomial(res.polynomial),
    }


def ehrhart(res: EhrhartResult) -> dict:
    return {"counts": list(res.counts), "polynomial": polynomial(res.polynomial), "volume": rational(res.volume)}


def closedness(report: ClosednessReport) -> dict:
    return {
        "hull": report.spec.describe(),
        "dimension": report.spec.d,
        "closed_for_all_tested_k": report.closed,
        "rows": [
            {
                "k": r.k,
                "star_count": r.star_count,
                "lattice_count": r.lattice_count,
                "closed": r.closed,
                "witness_count": r.witness_count,
                "witnesses": points(r.witnesses),
                "witnesses_truncated": r.witness_count > len(r.witnesses),
            }
            for r in report.rows
        ],
    }


def sandwich(rows: list[SandwichRow]) -> list[dict]:
    return [
        {"k": r.k, "p_k": r.p_k, "lattice_count": r.lattice_count, "p_k_plus_d": r.p_k_plus_d, "ok": r.ok}
        for r in rows
    ]


def threshold(report: ThresholdReport) -> dict:
    return {
        "n": report.n,
        "d": report.d,
        "volume": rational(report.volume),
        "gsw_exact": rational(report.gsw_exact),
        "log_simplex_threshold": interval(report.log_simplex_bound),
        "threshold_ceiling": report.threshold_ceiling,
        "volume_bound": interval(report.volume_bound),
        "kmax": len(report.sequence) - 1,
        "empirical": stabilization(report.empirical),
        "empirical_note": (
            "empirical threshold is confirmed only up to kmax; beyond it the proven bound applies"
        ),
        "verdicts": dict(sorted(report.verdicts.items())),
        "ok": report.ok,
    }


def document(command: str, payload: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **payload}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
