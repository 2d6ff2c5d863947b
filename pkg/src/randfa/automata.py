"""Core automaton types.

States are ``0..n-1`` and symbols ``0..k-1``. A transition table is an ``(n, k)``
integer array, row-major by state then symbol; row ``q`` holds
``delta(q, 0) ... delta(q, k-1)``. Arrays are copied and frozen on construction,
so instances can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import InvalidParameterError, InvalidStateError, InvalidWordError

Word = Sequence[int]
WordLike = Union[Word, str]

STATE_DTYPE = np.int64


def as_word(w: WordLike) -> tuple[int, ...]:
    """Normalize a word. Strings are read as one decimal digit per symbol: ``"011"`` -> ``(0, 1, 1)``."""
    if isinstance(w, str):
        if not all(c.isdigit() for c in w):
            raise InvalidWordError(f"word string must be decimal digits, got {w!r}")
        return tuple(int(c) for c in w)
    return tuple(int(s) for s in w)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Semiautomaton:
    """Transition structure only: a k-out-regular directed multigraph on n nodes."""

    delta: np.ndarray

    def __post_init__(self):
        table = np.array(self.delta, dtype=STATE_DTYPE, copy=True)
        if table.ndim != 2:
            raise InvalidParameterError(f"transition table must be 2-D, got shape {table.shape}")
        n, k = table.shape
        if n < 1 or k < 1:
            raise InvalidParameterError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
        if table.min() < 0 or table.max() >= n:
            raise InvalidStateError("transition target outside [0, n)")
        object.__setattr__(self, "delta", _frozen(table))

    @property
    def n(self) -> int:
        return self.delta.shape[0]

    @property
    def k(self) -> int:
        return self.delta.shape[1]

    def check_state(self, q: int) -> int:
        q = int(q)
        if not 0 <= q < self.n:
            raise InvalidStateError(f"state {q} outside [0, {self.n})")
        return q

    def check_word(self, w: WordLike) -> tuple[int, ...]:
        word = as_word(w)
        for s in word:
            if not 0 <= s < self.k:
                raise InvalidWordError(f"symbol {s} outside [0, {self.k})")
        return word

    def __eq__(self, other):
        if not isinstance(other, Semiautomaton):
            return NotImplemented
        return np.array_equal(self.delta, other.delta)

    def __hash__(self):
        return hash((self.delta.shape, self.delta.tobytes()))

    def __repr__(self):
        return f"Semiautomaton(n={self.n}, k={self.k})"


@dataclass(frozen=True, eq=False)
class Dfa:
    """Complete DFA: a semiautomaton plus a start state and an accepting-flag array."""

    base: Semiautomaton
    accepting: np.ndarray
    start: int = 0

    def __post_init__(self):
        if not isinstance(self.base, Semiautomaton):
            object.__setattr__(self, "base", Semiautomaton(self.base))
        acc = np.array(self.accepting, dtype=bool, copy=True)
        if acc.shape != (self.base.n,):
            raise InvalidParameterError(
                f"accepting must have length n={self.base.n}, got shape {acc.shape}"
            )
        object.__setattr__(self, "accepting", _frozen(acc))
        object.__setattr__(self, "start", self.base.check_state(self.start))

    @classmethod
    def from_table(cls, delta, accepting, start: int = 0) -> "Dfa":
        return cls(Semiautomaton(delta), accepting, start)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def delta(self) -> np.ndarray:
        return self.base.delta

    def accepts(self, w: WordLike) -> bool:
        return bool(self.accepting[delta_star(self.base, self.start, w)])

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (
            self.start == other.start
            and self.base == other.base
            and np.array_equal(self.accepting, other.accepting)
        )

    def __hash__(self):
        return hash((self.start, self.base, self.accepting.tobytes()))

    def __repr__(self):
        return f"Dfa(n={self.n}, k={self.k}, start={self.start}, |A|={int(self.accepting.sum())})"


def _semi(m: Semiautomaton | Dfa) -> Semiautomaton:
    return m.base if isinstance(m, Dfa) else m


def delta_star(m: Semiautomaton | Dfa, q: int, w: WordLike) -> int:
    """Run ``w`` from ``q``: ``delta(q, eps) = q`` and ``delta(q, a u) = delta(delta(q, a), u)``."""
    m = _semi(m)
    q = m.check_state(q)
    table = m.delta
    for s in m.check_word(w):
        q = int(table[q, s])
    return q


def distinguishes(d: Dfa, p: int, q: int, w: WordLike) -> bool:
    """True iff exactly one of ``delta(p, w)``, ``delta(q, w)`` is accepting."""
    return bool(d.accepting[delta_star(d, p, w)] != d.accepting[delta_star(d, q, w)])


def self_loop_semiautomaton(n: int, k: int) -> Semiautomaton:
    """Every arrow of every state points back to itself."""
    return Semiautomaton(np.repeat(np.arange(n, dtype=STATE_DTYPE)[:, None], k, axis=1))


def cycle_semiautomaton(n: int, k: int) -> Semiautomaton:
    """``delta(q, a) = q + 1 mod n`` on every symbol."""
    succ = (np.arange(n, dtype=STATE_DTYPE) + 1) % n
    return Semiautomaton(np.repeat(succ[:, None], k, axis=1))
