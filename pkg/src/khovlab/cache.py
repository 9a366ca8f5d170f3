"""On-disk result cache: one JSON file per n.

Each file holds the longest growth sequence computed so far, the Ehrhart
counts of Q_n and the last threshold report.  Files whose schema_version
differs from the current one are ignored, never migrated.  Writes go to a
temporary file that is renamed into place.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from .lattice import build_mn
from .polynomials import newton_interpolate
from .polytope import EhrhartResult, HullSpec, ehrhart
from .serialize import SCHEMA_VERSION, rational
from .sumset import growth_sequence

ENV_VAR = "KHOVLAB_CACHE"

log = logging.getLogger(__name__)


class ResultCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls, directory: str | None = None) -> ResultCache:
        return cls(directory or os.environ.get(ENV_VAR) or None)

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def path(self, n: int) -> Path:
        return self.directory / f"n{n}.json"

    def load(self, n: int) -> dict:
        if not self.enabled:
            return {}
        try:
            record = json.loads(self.path(n).read_text(encoding="utf-8"))
        except FileNotFoundError:
            return {}
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache file %s: %s", self.path(n), exc)
            return {}
        if record.get("schema_version") != SCHEMA_VERSION or record.get("n") != n:
            return {}
        return record

    def update(self, n: int, **fields) -> None:
        if not self.enabled:
            return
        record = self.load(n) or {"schema_version": SCHEMA_VERSION, "n": n}
        record.update(fields)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=f".n{n}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(record, fh, sort_keys=True)
            os.replace(tmp, self.path(n))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise


def mn_sequence(n: int, kmax: int, cache: ResultCache | None = None) -> tuple[int, ...]:
    """p(k, n) for k = 0..kmax, served from the cache when it reaches kmax."""
    cache = cache or ResultCache()
    cached = cache.load(n).get("sequence")
    if cached is not None and len(cached) > kmax:
        return tuple(cached[: kmax + 1])
    values = growth_sequence(build_mn(n), kmax, label=f"M_{n}").values
    if cached is None or len(values) > len(cached):
        cache.update(n, sequence=list(values))
    return values


def mn_ehrhart(n: int, cache: ResultCache | None = None) -> EhrhartResult:
    cache = cache or ResultCache()
    counts = cache.load(n).get("ehrhart_counts")
    if counts is not None:
        poly = newton_interpolate(list(enumerate(counts)))
        # d = 0 has the constant polynomial 1 and volume 1 by convention
        return EhrhartResult(poly, tuple(counts), poly.coefficient(len(counts) - 1))
    result = ehrhart(HullSpec.for_n(n))
    cache.update(
        n,
        ehrhart_counts=list(result.counts),
        ehrhart_coefficients=[rational(c) for c in result.polynomial.coeffs],
    )
    return result
