from collections import deque
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from randfa.automata import Dfa, Semiautomaton, cycle_semiautomaton, self_loop_semiautomaton
from randfa.errors import InvalidParameterError, InvalidStateError
from randfa.minimize import state_complexity
from randfa.random_gen import sample_semiautomaton, split_seed
from randfa.reachability import (
    accessibility_spectrum,
    dud_census,
    dud_count,
    exact_spectrum_law,
    reach_from,
    small_threshold,
    spectrum_census,
)

from conftest import dfas


def bfs_oracle(table, source):
    seen = {source}
    queue = deque([source])
    while queue:
        q = queue.popleft()
        for t in table[q]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def test_self_loop_and_cycle():
    assert reach_from(self_loop_semiautomaton(6, 2), 0).r == 1
    for k in (1, 2, 3):
        assert reach_from(cycle_semiautomaton(9, k), 0).r == 9
    # only symbol 0 cycles; the rest self-loop
    table = np.array([[(q + 1) % 5, q] for q in range(5)])
    assert reach_from(Semiautomaton(table), 2).r == 5


def test_dstar(dstar_semi):
    res = reach_from(dstar_semi, 0)
    assert res.r == 4 and res.reachable == {0, 1, 2, 3}
    assert res.visit_order.tolist() == [0, 1, 2, 3]
    assert accessibility_spectrum(dstar_semi) == 4
    assert accessibility_spectrum(Semiautomaton([[0]])) == 1


def test_reach_invalid_source(dstar_semi):
    with pytest.raises(InvalidStateError):
        reach_from(dstar_semi, 7)


def test_dfa_start_respected():
    d = Dfa.from_table([[0], [1], [1]], [0, 0, 0], start=2)
    assert accessibility_spectrum(d) == 2


@given(dfas(max_n=10))
def test_reach_matches_oracle(d):
    table = d.delta.tolist()
    for q in range(d.n):
        res = reach_from(d, q)
        assert res.reachable == bfs_oracle(table, q)
        order = res.visit_order.tolist()
        assert order[0] == q and len(set(order)) == len(order)
        # every non-source state has a predecessor among the states visited before it
        for i, s in enumerate(order[1:], start=1):
            assert any(s in table[p] for p in order[:i])


@given(dfas(max_n=10))
def test_reach_idempotent_under_restriction(d):
    res = reach_from(d, 0)
    order = res.visit_order
    relabel = {int(q): i for i, q in enumerate(order)}
    sub = Semiautomaton([[relabel[int(t)] for t in d.delta[q]] for q in order])
    assert reach_from(sub, 0).r == res.r


def test_census_examples(dstar_semi):
    c = spectrum_census(self_loop_semiautomaton(5, 2), 2)
    assert c.spectra.tolist() == [1] * 5 and c.small_states == (0, 1, 2, 3, 4)
    c = spectrum_census(cycle_semiautomaton(7, 2), 7)
    assert c.small_states == () and set(c.spectra.tolist()) == {7}
    c = spectrum_census(dstar_semi, 3)
    # from 2: {2, 1, 3}; from 1: {1, 3}; from 3: {3}
    expected = [len(bfs_oracle(dstar_semi.delta.tolist(), q)) for q in range(4)]
    assert c.spectra.tolist() == expected == [4, 2, 3, 1]
    assert c.small_states == (1, 3)


def test_census_threshold_validation(dstar_semi):
    with pytest.raises(InvalidParameterError):
        spectrum_census(dstar_semi, 0)


def test_small_threshold():
    # S < ceil(4 log2 n) iff S < 4 log2 n for integer S
    assert small_threshold(1024) == 40
    assert small_threshold(1000) == 40  # 4 * 9.97 = 39.86
    assert small_threshold(1) == 1


@given(dfas(max_n=10))
def test_census_agrees_with_reach(d):
    c = spectrum_census(d, 3)
    assert c.spectra[0] == accessibility_spectrum(d.base)
    for q in range(d.n):
        assert c.spectra[q] == len(bfs_oracle(d.delta.tolist(), q))
        assert 1 <= c.spectra[q] <= d.n


def test_dud_examples(dstar_semi):
    c = dud_census(dstar_semi)
    assert c.duds == ((1, 2),) and c.count == 1
    assert dud_census(cycle_semiautomaton(6, 2)).count == 0
    assert dud_census(self_loop_semiautomaton(6, 2)).count == 0
    assert dud_census(Semiautomaton([[0, 0]] * 4)).count == 6


@given(dfas(max_n=12))
def test_dud_implementations_agree(d):
    census = dud_census(d)
    rows = d.delta.tolist()
    brute = tuple((p, q) for p, q in combinations(range(d.n), 2) if rows[p] == rows[q])
    assert census.duds == brute
    assert census.count == dud_count(d)


@settings(max_examples=300)
@given(dfas(max_n=8))
def test_duds_equivalent_iff_same_acceptance(d):
    rep = state_complexity(d)
    pos = {int(q): i for i, q in enumerate(rep.states)}
    for p, q in dud_census(d).duds:
        if p in pos and q in pos:
            same_class = rep.partition.class_of[pos[p]] == rep.partition.class_of[pos[q]]
            assert same_class == (d.accepting[p] == d.accepting[q])


def test_dud_census_large_matches_bucket():
    m = sample_semiautomaton(3000, 1, 5)
    assert dud_census(m).count == dud_count(m)


def test_exact_spectrum_law_small():
    law = exact_spectrum_law(2, 1)
    # tables (d0, d1): start 0 reaches state 1 iff d0 == 1
    assert law == {1: 0.5, 2: 0.5}
    assert sum(exact_spectrum_law(3, 2).values()) == 1


@pytest.mark.slow
def test_mean_dud_count():
    n, trials = 100, 10_000
    counts = np.array([dud_count(sample_semiautomaton(n, 2, split_seed(11, i))) for i in range(trials)])
    expected = (n - 1) / (2 * n)  # C(n, 2) / n^2
    se = counts.std(ddof=1) / np.sqrt(trials)
    assert abs(counts.mean() - expected) < 5 * se
