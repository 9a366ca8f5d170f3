from __future__ import annotations

from collections.abc import Iterable, Iterator

ExponentVector = tuple[int, ...]


class PointSet:
    """Immutable finite set of integer vectors of a common length.

    Iteration, ``elements`` and serialization always use lexicographic order,
    whatever order the points were supplied in.
    """

    __slots__ = ("_elements", "_lookup", "dim")

    def __init__(self, points: Iterable[Iterable[int]] = (), dim: int | None = None):
        lookup = frozenset(tuple(int(c) for c in p) for p in points)
        if dim is None:
            if not lookup:
                raise ValueError("dim is required for an empty PointSet")
            dim = len(next(iter(lookup)))
        for p in lookup:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have length {dim}")
        self.dim = dim
        self._lookup = lookup
        self._elements = tuple(sorted(lookup))

    @classmethod
    def zero(cls, dim: int) -> PointSet:
        return cls([(0,) * dim], dim=dim)

    @property
    def elements(self) -> tuple[ExponentVector, ...]:
        return self._elements

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[ExponentVector]:
        return iter(self._elements)

    def __contains__(self, point) -> bool:
        return tuple(point) in self._lookup

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and self._lookup == other._lookup

    def __hash__(self) -> int:
        return hash((self.dim, self._lookup))

    def __repr__(self) -> str:
        if len(self) <= 8:
            return f"PointSet({list(self._elements)!r})"
        return f"PointSet(<{len(self)} points in Z^{self.dim}>)"

    def issubset(self, other: PointSet) -> bool:
        return self._lookup <= other._lookup

    def difference(self, other: PointSet) -> PointSet:
        return PointSet(self._lookup - other._lookup, dim=self.dim)

    def union(self, other: PointSet) -> PointSet:
        return PointSet(self._lookup | other._lookup, dim=self.dim)

    def maximal(self) -> PointSet:
        """Points not dominated component-wise by another point of the set."""
        pts = self._elements
        keep = []
        # a dominating point is lexicographically >= the point it dominates
        for i, p in enumerate(pts):
            if not any(all(a >= b for a, b in zip(q, p)) for q in pts[i + 1 :]):
                keep.append(p)
        return PointSet(keep, dim=self.dim)

    def to_lists(self) -> list[list[int]]:
        return [list(p) for p in self._elements]
