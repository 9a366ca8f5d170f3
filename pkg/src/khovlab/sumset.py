"""k-fold sumsets kA = {a_1 + ... + a_k} and their growth |kA|.

Internally vectors are packed into single Python ints, one fixed-width bit
field per coordinate (after shifting every coordinate to be nonnegative).
Fields are sized so the k-fold sum never carries across a field boundary,
which turns vector addition into one integer addition and makes
deduplication a plain ``set`` of ints.
"""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .errors import GuardExceeded
from .points import PointSet

# |kA| beyond this is out of scope; a set of this many packed ints is ~1 GB
MAX_SUMSET = 8_000_000


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GrowthSequence:
    label: str
    values: tuple[int, ...]

    @property
    def kmax(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


class _Packing:
    """Bijection between shifted vectors and ints with ``width``-bit fields."""

    def __init__(self, dim: int, width: int):
        self.dim = dim
        self.width = width
        self.mask = (1 << width) - 1
        self.shifts = [width * j for j in range(dim)]

    def pack(self, v) -> int:
        x = 0
        for s, c in zip(self.shifts, v):
            x |= c << s
        return x

    def unpack(self, x: int) -> tuple[int, ...]:
        mask = self.mask
        return tuple((x >> s) & mask for s in self.shifts)


def _offsets(A: PointSet) -> tuple[list[int], list[int]]:
    lows = [min(p[j] for p in A) for j in range(A.dim)]
    spans = [max(p[j] for p in A) - lows[j] for j in range(A.dim)]
    return lows, spans


def _check_dims(A: PointSet, B: PointSet) -> None:
    if A.dim != B.dim:
        raise DimensionMismatch(f"cannot add sets in Z^{A.dim} and Z^{B.dim}")


def add_sets(A: PointSet, B: PointSet) -> PointSet:
    """Minkowski sum {a + b}, deduplicated."""
    _check_dims(A, B)
    if not A or not B:
        return PointSet(dim=A.dim)
    lows_a, spans_a = _offsets(A)
    lows_b, spans_b = _offsets(B)
    width = max([sa + sb for sa, sb in zip(spans_a, spans_b)] + [1]).bit_length()
    pk = _Packing(A.dim, width)
    pa = [pk.pack([c - lo for c, lo in zip(p, lows_a)]) for p in A]
    pb = [pk.pack([c - lo for c, lo in zip(p, lows_b)]) for p in B]
    sums = {a + b for a in pa for b in pb}
    base = [la + lb for la, lb in zip(lows_a, lows_b)]
    return PointSet(
        (tuple(c + o for c, o in zip(pk.unpack(x), base)) for x in sums), dim=A.dim
    )


def _packed_iteration(A: PointSet, kmax: int, prune_downset: bool, limit: int = MAX_SUMSET):
    """Yield (k, packed kA, packing, lows) for k = 0..kmax, incrementally."""
    lows, spans = _offsets(A)
    width = max(kmax * max(spans + [0]), 1).bit_length()
    pk = _Packing(A.dim, width)
    packed_a = [pk.pack([c - lo for c, lo in zip(p, lows)]) for p in A]
    if prune_downset:
        if any(lows):
            raise ValueError("down-set pruning needs a down-set containing 0")
        maximal_a = [pk.pack(p) for p in A.maximal()]
        units = [1 << s for s in pk.shifts]
    current = {0}
    yield 0, current, pk, lows
    for k in range(1, kmax + 1):
        if prune_downset:
            tops = _maximal_packed(current, pk) if k > 1 else [0]
            current = _down_closure({t + m for t in tops for m in maximal_a}, pk, units)
        else:
            current = {x + a for x in current for a in packed_a}
        if len(current) > limit:
            raise GuardExceeded(f"|{k}A| = {len(current)} exceeds the sumset limit {limit}")
        yield k, current, pk, lows


def _maximal_packed(points: set[int], pk: _Packing) -> list[int]:
    # x is non-maximal iff some x + e_j is also present
    units = [1 << s for s in pk.shifts]
    return [x for x in points if not any((x + u) in points for u in units)]


def _down_closure(generators: set[int], pk: _Packing, units: list[int]) -> set[int]:
    seen = set(generators)
    frontier = list(generators)
    shifts, mask = pk.shifts, pk.mask
    while frontier:
        nxt = []
        for x in frontier:
            for s, u in zip(shifts, units):
                if (x >> s) & mask:
                    y = x - u
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
    return seen


def _unpacked(packed: set[int], pk: _Packing, lows: list[int], k: int, dim: int) -> PointSet:
    base = [k * lo for lo in lows]
    return PointSet((tuple(c + o for c, o in zip(pk.unpack(x), base)) for x in packed), dim=dim)


def iter_kfold(A: PointSet, kmax: int, prune_downset: bool = False) -> Iterator[tuple[int, PointSet]]:
    """Yield (k, kA) for k = 0..kmax from a single incremental pass."""
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    if not A:
        raise ValueError("sumsets of the empty set are not supported")
    for k, packed, pk, lows in _packed_iteration(A, kmax, prune_downset):
        yield k, _unpacked(packed, pk, lows, k, A.dim)


def kfold(A: PointSet, k: int, prune_downset: bool = False) -> PointSet:
    """k-fold sumset kA, with 0A = {0}; built as ((k-1)A) + A.

    ``prune_downset`` uses the down-set shortcut kA = down(max((k-1)A) + max(A)),
    valid only when A is a down-set containing 0.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    result = None
    for _, result in iter_kfold(A, k, prune_downset):
        pass
    return result


def growth_sequence(A: PointSet, kmax: int, label: str = "A", prune_downset: bool = False) -> GrowthSequence:
    """|kA| for k = 0..kmax; the sets are never unpacked."""
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    if not A:
        raise ValueError("sumsets of the empty set are not supported")
    values = [len(packed) for _, packed, _, _ in _packed_iteration(A, kmax, prune_downset)]
    return GrowthSequence(label, tuple(values))


def is_downset(A: PointSet) -> bool:
    """True iff every z with 0 <= z <= y lies in A for each y in A."""
    for y in A:
        if any(c < 0 for c in y):
            raise ValueError(f"down-set test needs nonnegative coordinates, got {y}")
    # closure under single unit decrements implies closure under all decrements
    for y in A:
        for j, c in enumerate(y):
            if c > 0 and (y[:j] + (c - 1,) + y[j + 1 :]) not in A:
                return False
    return True
