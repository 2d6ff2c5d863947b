"""DFA minimization: drop unreachable states, then merge equivalent ones.

Three independent ways to compute the state equivalence are provided:

* ``"hopcroft"``: partition refinement splitting on the smaller half (default);
* ``"moore"``: iterated signature refinement, vectorized with numpy;
* ``minimize_bruteforce``: pair-marking table filling in plain Python, for
  small automata only. It shares no code with the other two.

Whichever algorithm runs, classes are numbered canonically: the order in which
a BFS of the quotient automaton (from the start class, symbols ascending)
first reaches them. Minimal DFAs of equal languages therefore come out equal
array for array.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .automata import STATE_DTYPE, Dfa, Semiautomaton
from .errors import ContractViolationError, InvalidParameterError, OracleScaleError

METHODS = ("hopcroft", "moore")
BRUTEFORCE_MAX_N = 12


@dataclass(frozen=True)
class StatePartition:
    class_of: np.ndarray
    num_classes: int

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for q, c in enumerate(self.class_of.tolist()):
            out[c].append(q)
        return out

    def __eq__(self, other):
        if not isinstance(other, StatePartition):
            return NotImplemented
        return self.num_classes == other.num_classes and np.array_equal(
            self.class_of, other.class_of
        )


@dataclass(frozen=True)
class MinimizationReport:
    """``partition`` indexes reachable states in BFS order; ``states[i]`` is the
    original id of the state at position ``i``."""

    reachable_count: int
    minimal_size: int
    partition: StatePartition
    minimal_dfa: Dfa
    states: np.ndarray

    @property
    def excess(self) -> int:
        return self.reachable_count - self.minimal_size

    def summary(self) -> dict:
        return {"r": self.reachable_count, "m": self.minimal_size, "excess": self.excess}


# --------------------------------------------------------------------------
# stage 1


def _accessible(d: Dfa) -> tuple[Dfa, np.ndarray]:
    order = kernels.bfs_order(d.delta, d.start)
    new_id = np.full(d.n, -1, dtype=STATE_DTYPE)
    new_id[order] = np.arange(order.size, dtype=STATE_DTYPE)
    sub = Dfa(Semiautomaton(new_id[d.delta[order]]), d.accepting[order], 0)
    return sub, order


def remove_unreachable(d: Dfa) -> Dfa:
    """Keep only states reachable from the start, renumbered in BFS visit order."""
    return _accessible(d)[0]


# --------------------------------------------------------------------------
# stage 2


def moore_labels(delta: np.ndarray, accepting: np.ndarray) -> np.ndarray:
    """Refine by (own class, successor classes) signatures until the class count stalls."""
    _, labels = np.unique(accepting, return_inverse=True)
    labels = labels.ravel().astype(np.int64)
    count = int(labels.max()) + 1
    while True:
        sig = np.column_stack([labels, labels[delta]])
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.ravel().astype(np.int64)
        new_count = int(new.max()) + 1
        if new_count == count:
            return new
        labels, count = new, new_count


def _raw_labels(d: Dfa, method: str) -> np.ndarray:
    if method == "hopcroft":
        labels, _ = kernels.hopcroft(d.delta, d.accepting)
        return labels
    if method == "moore":
        return moore_labels(d.delta, d.accepting)
    raise InvalidParameterError(f"unknown method {method!r}; choose from {METHODS}")


def _canonical_quotient(d: Dfa, labels: np.ndarray) -> tuple[StatePartition, Dfa]:
    num = int(labels.max()) + 1
    _, rep = np.unique(labels, return_index=True)
    qdelta = labels[d.delta[rep]]
    order = kernels.bfs_order(qdelta, int(labels[d.start]))
    if order.size != num:
        raise ContractViolationError("quotient has unreachable classes; input was not accessible")
    new_id = np.empty(num, dtype=STATE_DTYPE)
    new_id[order] = np.arange(num, dtype=STATE_DTYPE)
    class_of = new_id[labels]
    class_of.setflags(write=False)
    minimal = Dfa(Semiautomaton(new_id[qdelta[order]]), d.accepting[rep[order]], 0)
    return StatePartition(class_of, num), minimal


def collapse_equivalent(d: Dfa, method: str = "hopcroft") -> MinimizationReport:
    """Merge equivalent states of an accessible DFA."""
    if kernels.bfs_order(d.delta, d.start).size != d.n:
        raise ContractViolationError("collapse_equivalent needs an accessible DFA; run remove_unreachable first")
    partition, minimal = _canonical_quotient(d, _raw_labels(d, method))
    states = np.arange(d.n, dtype=STATE_DTYPE)
    states.setflags(write=False)
    return MinimizationReport(d.n, partition.num_classes, partition, minimal, states)


def state_complexity(d: Dfa, method: str = "hopcroft") -> MinimizationReport:
    """Size of the minimal DFA for ``L(d)``, with the intermediate reachable count."""
    sub, order = _accessible(d)
    report = collapse_equivalent(sub, method)
    order.setflags(write=False)
    return MinimizationReport(
        report.reachable_count, report.minimal_size, report.partition, report.minimal_dfa, order
    )


# --------------------------------------------------------------------------
# brute-force oracle


def minimize_bruteforce(d: Dfa, max_n: int = BRUTEFORCE_MAX_N) -> MinimizationReport:
    """Table-filling minimization on Python lists. Refuses ``n > max_n``."""
    if d.n > max_n:
        raise OracleScaleError(f"brute-force oracle limited to n <= {max_n}, got n={d.n}")
    n, k = d.n, d.k
    delta = d.delta.tolist()
    acc = d.accepting.tolist()

    order = [d.start]
    seen = {d.start}
    i = 0
    while i < len(order):
        for a in range(k):
            t = delta[order[i]][a]
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    r = len(order)

    # distinct[p][q] over reachable states; round L marks pairs split by a word of length L
    distinct = [[acc[p] != acc[q] for q in order] for p in order]
    pos = {q: j for j, q in enumerate(order)}
    succ = [[pos[delta[q][a]] for a in range(k)] for q in order]
    for _ in range(max(r - 2, 0)):
        changed = False
        new = [row[:] for row in distinct]
        for p in range(r):
            for q in range(p + 1, r):
                if not distinct[p][q] and any(distinct[succ[p][a]][succ[q][a]] for a in range(k)):
                    new[p][q] = new[q][p] = True
                    changed = True
        distinct = new
        if not changed:
            break

    rep = list(range(r))
    for q in range(r):
        for p in range(q):
            if not distinct[p][q]:
                rep[q] = rep[p]
                break

    # canonical numbering: BFS over classes from the start class
    label = {}
    queue = deque([rep[0]])
    label[rep[0]] = 0
    while queue:
        c = queue.popleft()
        for a in range(k):
            t = rep[succ[c][a]]
            if t not in label:
                label[t] = len(label)
                queue.append(t)
    num = len(label)
    class_of = np.array([label[rep[q]] for q in range(r)], dtype=STATE_DTYPE)
    class_of.setflags(write=False)
    qdelta = [[0] * k for _ in range(num)]
    qacc = [False] * num
    for c, j in label.items():
        qacc[j] = acc[order[c]]
        for a in range(k):
            qdelta[j][a] = label[rep[succ[c][a]]]
    minimal = Dfa(Semiautomaton(np.array(qdelta, dtype=STATE_DTYPE).reshape(num, k)), qacc, 0)
    states = np.array(order, dtype=STATE_DTYPE)
    states.setflags(write=False)
    return MinimizationReport(r, num, StatePartition(class_of, num), minimal, states)


# --------------------------------------------------------------------------
# language equivalence


def distinguishing_word(a: Dfa, b: Dfa) -> Optional[tuple[int, ...]]:
    """Shortest word accepted by exactly one of ``a``, ``b``; ``None`` when ``L(a) == L(b)``."""
    if a.k != b.k:
        raise InvalidParameterError(f"alphabet mismatch: k={a.k} vs k={b.k}")
    da, db = a.delta.tolist(), b.delta.tolist()
    acc_a, acc_b = a.accepting.tolist(), b.accepting.tolist()
    root = (a.start, b.start)
    parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {root: None}
    queue = deque([root])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if acc_a[p] != acc_b[q]:
            word = []
            while parent[pair] is not None:
                pair, sym = parent[pair]
                word.append(sym)
            return tuple(reversed(word))
        for s in range(a.k):
            nxt = (da[p][s], db[q][s])
            if nxt not in parent:
                parent[nxt] = (pair, s)
                queue.append(nxt)
    return None


def dfa_equivalent(a: Dfa, b: Dfa) -> bool:
    """Language equality via reachability in the product automaton."""
    return distinguishing_word(a, b) is None
