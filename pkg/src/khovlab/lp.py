"""Exact feasibility of {lambda >= 0 : A lambda = b} by phase-1 simplex.

All arithmetic is over ``Fraction``; Bland's rule picks both the entering
and the leaving variable, so the method terminates without cycling.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from collections.abc import Sequence


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    # a solution lambda when feasible
    weights: tuple[Fraction, ...] | None = None
    # Farkas multipliers y with y.A_j <= 0 for every column and y.b > 0
    certificate: tuple[Fraction, ...] | None = None
    pivots: int = 0


def phase_one(columns: Sequence[Sequence[int]], rhs: Sequence[int]) -> Feasibility:
    """Decide whether ``rhs`` is a nonnegative combination of ``columns``.

    ``columns[j]`` is the j-th column of A (length m = len(rhs)).
    """
    m = len(rhs)
    nvar = len(columns)
    for col in columns:
        if len(col) != m:
            raise ValueError("column length does not match right-hand side")
    if m == 0:
        return Feasibility(True, weights=(Fraction(0),) * nvar)

    signs = [(-1 if r < 0 else 1) for r in rhs]
    width = nvar + m
    rows: list[list[Fraction]] = []
    for i in range(m):
        s = signs[i]
        row = [Fraction(s * columns[j][i]) for j in range(nvar)]
        row.extend(Fraction(1 if k == i else 0) for k in range(m))
        row.append(Fraction(s * rhs[i]))
        rows.append(row)
    # reduced costs of "minimize sum of artificials", last entry = -objective
    cost = [-sum(rows[i][j] for i in range(m)) for j in range(nvar)]
    cost.extend(Fraction(0) for _ in range(m))
    cost.append(-sum(rows[i][width] for i in range(m)))
    basis = [nvar + i for i in range(m)]

    pivots = 0
    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            a = rows[i][entering]
            if a > 0:
                ratio = rows[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        # the phase-1 objective is bounded below by 0, so a pivot row exists
        assert leaving is not None
        _pivot(rows, cost, leaving, entering)
        basis[leaving] = entering
        pivots += 1

    if cost[width] == 0:
        weights = [Fraction(0)] * nvar
        for i, var in enumerate(basis):
            if var < nvar:
                weights[var] = rows[i][width]
        return Feasibility(True, weights=tuple(weights), pivots=pivots)
    # reduced cost of artificial i is 1 - y'_i; undo the row sign flips
    y = tuple(signs[i] * (1 - cost[nvar + i]) for i in range(m))
    return Feasibility(False, certificate=y, pivots=pivots)


def _pivot(rows: list[list[Fraction]], cost: list[Fraction], r: int, c: int) -> None:
    prow = rows[r]
    inv = 1 / prow[c]
    if inv != 1:
        prow[:] = [v * inv for v in prow]
    nz = [(j, v) for j, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                for j, v in nz:
                    row[j] -= f * v
    f = cost[c]
    if f:
        for j, v in nz:
            cost[j] -= f * v
