"""Accessibility spectrum, per-state spectra and dud pairs."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .automata import Dfa, Semiautomaton
from .errors import InvalidParameterError


@dataclass(frozen=True)
class ReachResult:
    source: int
    visit_order: np.ndarray

    @property
    def r(self) -> int:
        return int(self.visit_order.size)

    @property
    def reachable(self) -> frozenset[int]:
        return frozenset(int(q) for q in self.visit_order)


@dataclass(frozen=True)
class SpectrumCensus:
    spectra: np.ndarray
    threshold: int
    small_states: tuple[int, ...]

    @property
    def small_count(self) -> int:
        return len(self.small_states)


@dataclass(frozen=True)
class DudCensus:
    duds: tuple[tuple[int, int], ...]

    @property
    def count(self) -> int:
        return len(self.duds)


def _semi(m) -> Semiautomaton:
    return m.base if isinstance(m, Dfa) else m


def reach_from(m: Semiautomaton | Dfa, source: int) -> ReachResult:
    """BFS from ``source``; symbols explored in increasing order."""
    m = _semi(m)
    source = m.check_state(source)
    return ReachResult(source, kernels.bfs_order(m.delta, source))


def accessibility_spectrum(m: Semiautomaton | Dfa) -> int:
    """Number of states reachable from the start state (0 for a bare semiautomaton)."""
    start = m.start if isinstance(m, Dfa) else 0
    return reach_from(m, start).r


def small_threshold(n: int, c: float = 4.0) -> int:
    """Integer form of ``c * log2(n)``: ``S < small_threshold(n, c)`` iff ``S < c*log2(n)``."""
    return max(1, math.ceil(c * math.log2(n))) if n > 1 else 1


def spectrum_census(m: Semiautomaton | Dfa, threshold: int) -> SpectrumCensus:
    if threshold < 1:
        raise InvalidParameterError(f"threshold must be >= 1, got {threshold}")
    spectra = kernels.spectra(_semi(m).delta)
    spectra.setflags(write=False)
    small = tuple(int(q) for q in np.flatnonzero(spectra < threshold))
    return SpectrumCensus(spectra, int(threshold), small)


def dud_census(m: Semiautomaton | Dfa) -> DudCensus:
    """Unordered pairs ``p < q`` whose transition rows agree on every symbol."""
    delta = _semi(m).delta
    n = delta.shape[0]
    pairs: list[tuple[int, int]] = []
    block = 512
    for lo in range(0, n, block):
        rows = delta[lo : lo + block]
        same = (rows[:, None, :] == delta[None, :, :]).all(axis=2)
        p, q = np.nonzero(same)
        keep = q > p + lo
        pairs.extend(zip((p[keep] + lo).tolist(), q[keep].tolist()))
    return DudCensus(tuple(pairs))


def dud_count(m: Semiautomaton | Dfa) -> int:
    """Dud count by bucketing identical rows; ``sum C(bucket, 2)``."""
    _, counts = np.unique(_semi(m).delta, axis=0, return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


def exact_spectrum_law(n: int, k: int) -> dict[int, Fraction]:
    """Law of the accessibility spectrum over all ``n^(n k)`` transition tables."""
    if n < 1 or k < 1:
        raise InvalidParameterError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    counts: Counter = Counter()
    for flat in itertools.product(range(n), repeat=n * k):
        table = np.array(flat, dtype=np.int64).reshape(n, k)
        counts[kernels.bfs_order(table, 0).size] += 1
    total = n ** (n * k)
    return {r: Fraction(c, total) for r, c in counts.items()}
