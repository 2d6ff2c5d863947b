"""The exploration process behind the accessibility spectrum.

States are revealed one open edge at a time. With ``nu_t`` states reached
after ``t`` steps, the next edge lands on an already-reached state with
probability ``nu_t / n``. That is the occupancy process of balls thrown into
``n`` bins, and the simulation is driven by it literally: ``nu_t`` is the
number of distinct values among ``t`` uniform draws from ``[0, n)``. Open
edges number ``omega_t = k nu_t + 1 - t``. At the first zero ``tau`` of
``omega``, ``nu_tau`` has the law of the accessibility spectrum of a uniform
random semiautomaton.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InvalidParameterError
from .random_gen import AUX_STREAM, check_seed, split_seed, substream

NU_CHUNK = 4096


@dataclass(frozen=True)
class ChainTrajectory:
    """``nu[i]`` and ``omega[i]`` hold the values at time ``t = i + 1``."""

    n: int
    k: int
    nu: np.ndarray
    omega: np.ndarray

    @property
    def tau(self) -> int:
        return int(self.omega.size)

    @property
    def nu_tau(self) -> int:
        return int(self.nu[-1])


def _check_nk(n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise InvalidParameterError(f"need n >= 1 and k >= 1, got n={n}, k={k}")


def open_edges(nu: np.ndarray, k: int) -> np.ndarray:
    t = np.arange(1, nu.size + 1, dtype=np.int64)
    return k * nu + 1 - t


def run_chain(n: int, k: int, seed: int) -> ChainTrajectory:
    """Simulate until the open-edge count first hits zero (always by ``t = k n + 1``)."""
    _check_nk(n, k)
    balls = substream(seed, AUX_STREAM).integers(0, n, size=k * n + 1, dtype=np.int64)
    nu = kernels.occupancy(balls, n)
    omega = open_edges(nu, k)
    tau = int(np.argmax(omega == 0)) + 1
    nu, omega = nu[:tau].copy(), omega[:tau].copy()
    nu.setflags(write=False)
    omega.setflags(write=False)
    return ChainTrajectory(n, k, nu, omega)


def sample_nu(n: int, times: Sequence[int], trials: int, seed: int) -> np.ndarray:
    """Unstopped ``nu_t`` at each requested time; shape ``(trials, len(times))``.

    Trials are drawn in fixed chunks of ``NU_CHUNK`` rows, chunk ``c`` from
    ``split_seed(seed, c)``.
    """
    if n < 1 or trials < 1:
        raise InvalidParameterError("need n >= 1 and trials >= 1")
    times_arr = np.asarray(times, dtype=np.int64)
    if times_arr.size == 0 or times_arr.min() < 1:
        raise InvalidParameterError("times must be non-empty and >= 1")
    order = np.argsort(times_arr, kind="stable")
    sorted_times = times_arr[order]
    t_max = int(sorted_times[-1])
    dtype = np.int32 if n < 2**31 else np.int64
    out = np.empty((trials, times_arr.size), dtype=np.int64)
    check_seed(seed)
    for c, lo in enumerate(range(0, trials, NU_CHUNK)):
        rows = min(NU_CHUNK, trials - lo)
        rng = substream(split_seed(seed, c), AUX_STREAM)
        balls = rng.integers(0, n, size=(rows, t_max), dtype=dtype)
        out[lo : lo + rows, order] = kernels.occupancy_at(balls, n, sorted_times)
    return out


def sample_chain_stops(n: int, k: int, trials: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Batch of chain runs; returns ``(tau, nu_tau)`` arrays of length ``trials``."""
    _check_nk(n, k)
    if trials < 1:
        raise InvalidParameterError("trials must be >= 1")
    t_max = k * n + 1
    times = np.arange(1, t_max + 1, dtype=np.int64)
    chunk = max(1, min(NU_CHUNK, (1 << 22) // t_max))
    tau = np.empty(trials, dtype=np.int64)
    nu_tau = np.empty(trials, dtype=np.int64)
    check_seed(seed)
    for c, lo in enumerate(range(0, trials, chunk)):
        rows = min(chunk, trials - lo)
        rng = substream(split_seed(seed, c), AUX_STREAM)
        balls = rng.integers(0, n, size=(rows, t_max), dtype=np.int64)
        nu = kernels.occupancy_at(balls, n, times)
        omega = k * nu + 1 - times
        stop = np.argmax(omega == 0, axis=1)
        tau[lo : lo + rows] = stop + 1
        nu_tau[lo : lo + rows] = nu[np.arange(rows), stop]
    return tau, nu_tau


def balls_in_bins_occupied(n: int, t: int, seed: int) -> int:
    if n < 1 or t < 0:
        raise InvalidParameterError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    balls = substream(seed, AUX_STREAM).integers(0, n, size=t, dtype=np.int64)
    return int(np.unique(balls).size)


# --------------------------------------------------------------------------
# closed forms


def _pow_complement(n: int, t):
    """``(1 - 1/n)^t`` without cancellation; exact 0 for ``n = 1, t > 0``."""
    t = np.asarray(t, dtype=float)
    if n == 1:
        return np.where(t == 0, 1.0, 0.0)
    return np.exp(t * math.log1p(-1.0 / n))


def expected_nu(n: int, t):
    """``E nu_t = n (1 - (1 - 1/n)^t)``."""
    if n < 1 or np.any(np.asarray(t) < 1):
        raise InvalidParameterError("need n >= 1 and t >= 1")
    if n == 1:
        return n * (1.0 - _pow_complement(n, t))
    return -n * np.expm1(np.asarray(t, dtype=float) * math.log1p(-1.0 / n))


def chernoff_bound(t: int, delta: float) -> float:
    """Lower-tail bound ``P(nu_t - E nu_t <= -delta) <= exp(-2 delta^2 / t)``."""
    if t < 1 or delta < 0:
        raise InvalidParameterError(f"need t >= 1 and delta >= 0, got t={t}, delta={delta}")
    return math.exp(-2.0 * delta * delta / t)


def lemma_F(n: int, t, k: int = 2):
    """Expected open edges minus one, divided by k: ``n (1 - (1-1/n)^t) - (t - 1)/k``.

    Defined for ``t >= 0``; at ``t = 0`` it equals ``1/k``.
    """
    if n < 1 or np.any(np.asarray(t) < 0):
        raise InvalidParameterError("need n >= 1 and t >= 0")
    t = np.asarray(t, dtype=float)
    if n == 1:
        filled = 1.0 - _pow_complement(n, t)
    else:
        filled = -n * np.expm1(t * math.log1p(-1.0 / n))
    return filled - (t - 1.0) / k


def lemma_H(n: int, t):
    """Continuum approximation ``n - t/2 - n exp(-t/n)`` of ``lemma_F``."""
    if n < 1:
        raise InvalidParameterError("need n >= 1")
    t = np.asarray(t, dtype=float)
    return -n * np.expm1(-t / n) - t / 2.0


# --------------------------------------------------------------------------
# exact laws by enumeration


def exact_chain_tau_law(n: int, k: int) -> dict[int, Fraction]:
    """Law of ``nu_tau`` from enumerating every chain trajectory, with rational weights."""
    _check_nk(n, k)
    law: Counter = Counter()

    def walk(nu: int, t: int, prob: Fraction) -> None:
        if k * nu + 1 - t == 0:
            law[nu] += prob
            return
        walk(nu, t + 1, prob * Fraction(nu, n))
        if nu < n:
            walk(nu + 1, t + 1, prob * Fraction(n - nu, n))

    walk(1, 1, Fraction(1))
    return dict(law)


def exact_chain_nu_law(n: int, t: int) -> dict[int, Fraction]:
    """Law of the unstopped ``nu_t`` from enumerating chain paths of length ``t``."""
    if n < 1 or t < 1:
        raise InvalidParameterError("need n >= 1 and t >= 1")
    law = {1: Fraction(1)}
    for _ in range(t - 1):
        nxt: Counter = Counter()
        for nu, p in law.items():
            nxt[nu] += p * Fraction(nu, n)
            if nu < n:
                nxt[nu + 1] += p * Fraction(n - nu, n)
        law = dict(nxt)
    return law


def exact_occupancy_law(n: int, t: int) -> dict[int, Fraction]:
    """Law of the number of non-empty bins over all ``n^t`` ways to throw ``t`` balls."""
    if n < 1 or t < 0:
        raise InvalidParameterError("need n >= 1 and t >= 0")
    counts = Counter(len(set(throw)) for throw in itertools.product(range(n), repeat=t))
    total = n**t
    return {v: Fraction(c, total) for v, c in counts.items()}


def total_variation(p: dict, q: dict) -> Fraction | float:
    keys = set(p) | set(q)
    return sum(abs(p.get(x, 0) - q.get(x, 0)) for x in keys) / 2
