"""Trial records and their summaries."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InvalidParameterError

OBSERVABLES = ("r", "m", "excess", "tau", "duds", "small")
QUANTILES = (0.01, 0.5, 0.99)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    n: int
    k: int
    r: int
    m: int
    excess: int
    tau: Optional[int] = None
    duds: Optional[int] = None
    small: Optional[int] = None

    def __post_init__(self):
        if self.excess != self.r - self.m or not 1 <= self.m <= self.r <= self.n:
            raise InvalidParameterError(f"inconsistent trial record: {self}")

    def as_dict(self) -> dict:
        return asdict(self)


RECORD_FIELDS = tuple(f.name for f in fields(TrialRecord))


@dataclass(frozen=True)
class Moments:
    """Count, mean, sum of squared deviations, min, max. Mergeable."""

    count: int
    mean: float
    m2: float
    min: float
    max: float

    @classmethod
    def of(cls, values: Iterable[float]) -> "Moments":
        count, mean, m2 = 0, 0.0, 0.0
        lo, hi = math.inf, -math.inf
        for x in values:
            count += 1
            d = x - mean
            mean += d / count
            m2 += d * (x - mean)
            lo = min(lo, x)
            hi = max(hi, x)
        return cls(count, mean, m2, lo, hi)

    def merge(self, other: "Moments") -> "Moments":
        if self.count == 0:
            return other
        if other.count == 0:
            return self
        count = self.count + other.count
        d = other.mean - self.mean
        mean = self.mean + d * other.count / count
        m2 = self.m2 + other.m2 + d * d * self.count * other.count / count
        return Moments(count, mean, m2, min(self.min, other.min), max(self.max, other.max))

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0

    @property
    def stddev(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class Summary:
    observable: str
    trials: int
    mean: float
    stddev: float
    min: float
    max: float
    quantiles: dict
    center: float
    band: float
    deviation_rate: float

    @property
    def stderr(self) -> float:
        return self.stddev / math.sqrt(self.trials)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["quantiles"] = {f"{q:g}": v for q, v in self.quantiles.items()}
        return d


def nearest_rank(sorted_values: Sequence[float], q: float) -> float:
    """Smallest value with at least a fraction ``q`` of the sample at or below it."""
    n = len(sorted_values)
    rank = max(1, math.ceil(q * n))
    return sorted_values[rank - 1]


def describe(values: Sequence[float]) -> dict:
    """Mean, stddev, min, max and nearest-rank quantiles, independent of input order."""
    if len(values) == 0:
        raise InvalidParameterError("cannot describe an empty sample")
    ordered = sorted(float(v) for v in values)
    mom = Moments.of(ordered)
    return {
        "trials": mom.count,
        "mean": mom.mean,
        "stddev": mom.stddev,
        "min": mom.min,
        "max": mom.max,
        "quantiles": {f"{q:g}": nearest_rank(ordered, q) for q in QUANTILES},
    }


def summarize_values(values: Sequence[float], center: float, band: float, observable: str = "") -> Summary:
    if len(values) == 0:
        raise InvalidParameterError("cannot summarize zero records")
    if not band > 0:
        raise InvalidParameterError(f"band must be positive, got {band}")
    ordered = sorted(float(v) for v in values)
    mom = Moments.of(ordered)
    dev = sum(1 for v in ordered if abs(v - center) > band) / len(ordered)
    return Summary(
        observable=observable,
        trials=mom.count,
        mean=mom.mean,
        stddev=mom.stddev,
        min=mom.min,
        max=mom.max,
        quantiles={q: nearest_rank(ordered, q) for q in QUANTILES},
        center=float(center),
        band=float(band),
        deviation_rate=dev,
    )


def summarize(records: Sequence[TrialRecord], center: float, band: float, observable: str) -> Summary:
    if observable not in OBSERVABLES:
        raise InvalidParameterError(f"unknown observable {observable!r}")
    values = [getattr(rec, observable) for rec in records]
    if any(v is None for v in values):
        raise InvalidParameterError(f"observable {observable!r} was not recorded")
    return summarize_values(values, center, band, observable)


def deviation_band(n: int) -> float:
    """``sqrt(n) * ln(n)``, floored at 1 so tiny ``n`` still has a positive band."""
    return max(math.sqrt(n) * math.log(n), 1.0) if n > 1 else 1.0


def column(records: Sequence[TrialRecord], observable: str) -> np.ndarray:
    return np.array([getattr(rec, observable) for rec in records], dtype=float)
