"""Uniform sampling of semiautomata and DFAs.

Each seed owns a ``numpy.random.SeedSequence``. The transition table is drawn
from spawn key ``(0,)`` and the accepting flags from ``(1,)``, so
``sample_dfa(n, k, p, s).base == sample_semiautomaton(n, k, s)`` for every seed.
``Generator.integers`` uses Lemire's unbiased integer method, which avoids both
modulo bias and floating point.
"""

from __future__ import annotations

import numpy as np

from .automata import STATE_DTYPE, Dfa, Semiautomaton
from .errors import InvalidParameterError

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

TRANSITIONS_STREAM = 0
ACCEPTING_STREAM = 1
AUX_STREAM = 2


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MASK64:
        raise InvalidParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def check_accept_prob(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"accept probability must lie in (0, 1), got {p}")
    return p


def _check_nk(n: int, k: int) -> tuple[int, int]:
    if int(n) < 1 or int(k) < 1:
        raise InvalidParameterError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    return int(n), int(k)


def _mix64(z: int) -> int:
    # splitmix64 finalizer; a bijection on 64-bit words
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def split_seed(master_seed: int, index: int) -> int:
    """Per-trial seed. Injective in ``index`` for a fixed master seed."""
    master_seed = check_seed(master_seed)
    if index < 0:
        raise InvalidParameterError("trial index must be non-negative")
    return _mix64((master_seed + (index + 1) * _GOLDEN) & MASK64)


def substream(seed: int, stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64(ss))


def sample_transitions(n: int, k: int, seed: int) -> np.ndarray:
    n, k = _check_nk(n, k)
    return substream(seed, TRANSITIONS_STREAM).integers(0, n, size=(n, k), dtype=STATE_DTYPE)


def sample_semiautomaton(n: int, k: int, seed: int) -> Semiautomaton:
    """Uniform draw from ``[n]^([n] x [k])``."""
    return Semiautomaton(sample_transitions(n, k, seed))


def sample_accepting(n: int, p: float, seed: int) -> np.ndarray:
    p = check_accept_prob(p)
    return substream(seed, ACCEPTING_STREAM).random(int(n)) < p


def sample_dfa(n: int, k: int, p: float = 0.5, seed: int = 0) -> Dfa:
    """Uniform transitions, independent Bernoulli(p) accepting flags, start state 0."""
    n, k = _check_nk(n, k)
    return Dfa(Semiautomaton(sample_transitions(n, k, seed)), sample_accepting(n, p, seed), 0)
