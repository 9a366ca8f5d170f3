"""One-shot verification of every checkable claim, scaled by ``nmax``.

Each criterion returns a ``CriterionResult`` whose details are plain,
deterministically ordered data, so two runs serialize to identical bytes.
Timings go to the log (stderr), never into the results.
"""
from __future__ import annotations

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass, field

from .bounds import default_kmax, log_simplex_threshold, threshold_report
from .cache import ResultCache, mn_ehrhart, mn_sequence
from .lattice import primes_upto
from .oracle import brute_halfspace_points, brute_products
from .points import PointSet
from .polynomials import detect_stabilization
from .polytope import (
    HullSpec,
    closedness_report,
    dilation_lattice_points,
    hull_membership,
    lattice_counts,
    sandwich_check,
)

log = logging.getLogger(__name__)

LEVELS = ("fast", "full")

BG_VERTICES = [(0, 0, 0), (5, 0, 0), (0, 3, 0), (0, 0, 2)]
BG_HALFSPACE = ([6, 10, 15], 30)
BG_MAXIMAL = [(5, 0, 0), (3, 1, 0), (2, 0, 1), (1, 2, 0), (0, 3, 0), (0, 1, 1), (0, 0, 2)]
BG_GAP = (4, 2, 1)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"id": self.number, "title": self.title, "passed": self.passed, "details": self.details}

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title}"


class Verification:
    """Runs the criteria, sharing growth sequences and Ehrhart data across them."""

    def __init__(self, nmax: int, level: str = "fast", cache: ResultCache | None = None):
        if nmax < 1:
            raise ValueError("nmax must be >= 1")
        if level not in LEVELS:
            raise ValueError(f"level must be one of {LEVELS}")
        self.nmax = nmax
        self.level = level
        self.cache = cache or ResultCache()
        self._sequences: dict[int, tuple[int, ...]] = {}
        self._ehrhart = {}

    def sequence(self, n: int, kmax: int) -> tuple[int, ...]:
        have = self._sequences.get(n, ())
        if len(have) <= kmax:
            have = mn_sequence(n, kmax, self.cache)
            self._sequences[n] = have
        return have[: kmax + 1]

    def ehrhart(self, n: int):
        if n not in self._ehrhart:
            self._ehrhart[n] = mn_ehrhart(n, self.cache)
        return self._ehrhart[n]

    def upto(self, cap: int, start: int = 1) -> range:
        return range(start, min(cap, self.nmax) + 1)

    # -- criteria ---------------------------------------------------------------

    def oracle_equivalence(self) -> CriterionResult:
        mismatches = []
        checked = 0
        for n in self.upto(8, start=2):
            seq = self.sequence(n, 5)
            for k in range(6):
                checked += 1
                brute = brute_products(n, k)
                if seq[k] != brute:
                    mismatches.append({"n": n, "k": k, "sumset": seq[k], "brute": brute})
        return CriterionResult(
            1, "|kM_n| equals brute-force distinct products (n <= 8, k <= 5)",
            not mismatches, {"checked": checked, "mismatches": mismatches},
        )

    def closed_forms(self) -> CriterionResult:
        forms: dict[int, Callable[[int], int]] = {
            2: lambda k: k + 1,
            3: lambda k: (k + 1) * (k + 2) // 2,
            4: lambda k: (k + 1) ** 2,
        }
        failures = []
        for n, f in forms.items():
            if n > self.nmax:
                continue
            seq = self.sequence(n, 30)
            failures += [{"n": n, "k": k, "got": seq[k], "want": f(k)} for k in range(31) if seq[k] != f(k)]
        return CriterionResult(2, "closed forms of p(k,2), p(k,3), p(k,4) for k <= 30", not failures, {"failures": failures})

    def degrees(self) -> CriterionResult:
        rows = []
        for n in self.upto(10):
            d = primes_upto(n).d
            fit = detect_stabilization(self.sequence(n, 2 * d + 8), d)
            degree = None if fit is None else fit.polynomial.degree
            rows.append({"n": n, "d": d, "threshold": None if fit is None else fit.threshold, "degree": degree})
        return CriterionResult(
            3, "stabilized p(k,n) has degree pi(n) (n <= 10, kmax = 2d+8)",
            all(r["degree"] == r["d"] for r in rows), {"rows": rows},
        )

    def leading_coefficient(self) -> CriterionResult:
        rows = []
        for n in self.upto(12):
            d = primes_upto(n).d
            fit = detect_stabilization(self.sequence(n, 2 * d + 8), d)
            volume = self.ehrhart(n).volume
            leading = None if fit is None else fit.polynomial.leading
            rows.append({"n": n, "volume": str(volume), "leading": str(leading), "equal": leading == volume})
        return CriterionResult(
            4, "leading coefficient of q_n equals Vol(Q_n) exactly (n <= 12)",
            all(r["equal"] for r in rows), {"rows": rows},
        )

    def sandwich(self) -> CriterionResult:
        bad = []
        checked = 0
        for n in self.upto(10):
            for row in sandwich_check(n, 10):
                checked += 1
                if not row.ok:
                    bad.append({"n": n, "k": row.k, "p_k": row.p_k, "L": row.lattice_count, "p_k_plus_d": row.p_k_plus_d})
        return CriterionResult(
            5, "p(k,n) <= L(Q_n,k) <= p(k+pi(n),n) by direct enumeration (n <= 10, k <= 10)",
            not bad, {"checked": checked, "violations": bad},
        )

    def bg_simplex(self) -> CriterionResult:
        spec = HullSpec.from_points(BG_VERTICES)
        maximal = dilation_lattice_points(spec, 1).maximal()
        coeffs, rhs = BG_HALFSPACE
        brute_maximal = brute_halfspace_points(coeffs, rhs, 1).maximal()
        report = closedness_report(spec, 2)
        row1, row2 = report.rows
        member = hull_membership(BG_GAP, spec, 2)
        checks = {
            "maximal_points_match": maximal == PointSet(BG_MAXIMAL),
            "halfspace_maximal_points_match": brute_maximal == PointSet(BG_MAXIMAL),
            "k1_closed": row1.closed,
            "k2_not_closed": not row2.closed,
            "gap_point_is_witness": BG_GAP in row2.witnesses,
            "gap_point_in_2Q": member,
        }
        return CriterionResult(
            6, "simplex 6x+10y+15z <= 30: 7 maximal points, (4,2,1) in 2Q but not a 2-fold sum",
            all(checks.values()),
            {"checks": checks, "maximal_points": maximal.to_lists(), "k2_witnesses": row2.witnesses.to_lists()},
        )

    def integral_closedness(self) -> CriterionResult:
        cap = 20 if self.level == "full" else 14
        rows = []
        for n in self.upto(cap, start=2):
            d = primes_upto(n).d
            report = closedness_report(HullSpec.for_n(n), d)
            rows.append({"n": n, "kmax": d, "witnesses": sum(r.witness_count for r in report.rows)})
        return CriterionResult(
            7, f"Q_n integrally closed for k <= pi(n), n <= {cap}",
            all(r["witnesses"] == 0 for r in rows), {"rows": rows},
        )

    def bounds(self) -> CriterionResult:
        rows = []
        for n in self.upto(14, start=2):
            d = primes_upto(n).d
            kmax = default_kmax(d)
            report = threshold_report(n, kmax, sequence=self.sequence(n, kmax), ehrhart_result=self.ehrhart(n))
            rows.append({
                "n": n,
                "gsw_exact": str(report.gsw_exact),
                "threshold_ceiling": report.threshold_ceiling,
                "empirical": None if report.empirical is None else report.empirical.threshold,
                "verdicts": dict(sorted(report.verdicts.items())),
            })
        spot2 = log_simplex_threshold(2)
        spots = {
            "n2_exactly_3": spot2.is_point and spot2.lo == 3,
            "n4_ceiling_38": log_simplex_threshold(4).ceil_hi() == 38,
        }
        passed = all(all(r["verdicts"].values()) for r in rows) and all(spots.values())
        return CriterionResult(
            8, "GSW bound, volume bound and empirical threshold below the log-simplex threshold (2 <= n <= 14)",
            passed, {"rows": rows, "spot_values": spots},
        )

    def ehrhart_sanity(self) -> CriterionResult:
        rows = []
        for n in self.upto(14):
            res = self.ehrhart(n)
            # d = 0 interpolates from t = 0 alone; count t = 1 directly
            counts = res.counts if len(res.counts) > 1 else lattice_counts(HullSpec.for_n(n), 1)
            row = {"n": n, "L0": counts[0], "L1": counts[1]}
            row["ok"] = row["L0"] == 1 and row["L1"] == n
            if n <= 10:
                d = primes_upto(n).d
                direct = lattice_counts(HullSpec.for_n(n), d + 1)[d + 1]
                row["direct_at_d_plus_1"] = direct
                row["ok"] = row["ok"] and res.polynomial(d + 1) == direct
            rows.append(row)
        return CriterionResult(
            9, "L(Q_n,0) = 1, L(Q_n,1) = n (n <= 14); polynomial matches enumeration at t = d+1 (n <= 10)",
            all(r["ok"] for r in rows), {"rows": rows},
        )

    def criteria(self) -> list[Callable[[], CriterionResult]]:
        return [
            self.oracle_equivalence,
            self.closed_forms,
            self.degrees,
            self.leading_coefficient,
            self.sandwich,
            self.bg_simplex,
            self.integral_closedness,
            self.bounds,
            self.ehrhart_sanity,
        ]

    def run(self) -> list[CriterionResult]:
        results = []
        for criterion in self.criteria():
            start = time.perf_counter()
            result = criterion()
            log.info("%s (%.2fs)", result.line(), time.perf_counter() - start)
            results.append(result)
        return results
