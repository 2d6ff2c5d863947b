"""Hot inner loops.

Every kernel exists as ``<name>_jit`` (loop form, numba-compiled when numba is
available) and ``<name>_numpy`` (vectorized numpy). The unsuffixed name is
the dispatch choice made by ``RANDFA_DISABLE_NUMBA`` at import time. The two
forms return identical arrays; ``tests/test_kernels.py`` pins that.

Hopcroft refinement has no vectorized form: its fallback is the same loop
run by the interpreter.
"""

import numpy as np

from ._accel import USE_NUMBA, jit

# --------------------------------------------------------------------------
# breadth-first search


def _bfs_loop(delta, source):
    n, k = delta.shape
    order = np.empty(n, np.int64)
    seen = np.zeros(n, np.bool_)
    seen[source] = True
    order[0] = source
    head = 0
    tail = 1
    while head < tail:
        q = order[head]
        head += 1
        for a in range(k):
            t = delta[q, a]
            if not seen[t]:
                seen[t] = True
                order[tail] = t
                tail += 1
    return order[:tail].copy()


bfs_order_jit = jit(_bfs_loop)


def bfs_order_numpy(delta, source):
    """Level-synchronous BFS; a level's new states come out in first-discovery order."""
    n = delta.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[source] = True
    frontier = np.array([source], dtype=np.int64)
    levels = [frontier]
    while True:
        targets = delta[frontier].ravel()
        targets = targets[~seen[targets]]
        if targets.size == 0:
            break
        _, first = np.unique(targets, return_index=True)
        frontier = targets[np.sort(first)].astype(np.int64)
        seen[frontier] = True
        levels.append(frontier)
    return np.concatenate(levels)


# --------------------------------------------------------------------------
# per-state reachable counts S(q)


def _spectra_loop(delta):
    n, k = delta.shape
    out = np.empty(n, np.int64)
    stamp = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    for src in range(n):
        stamp[src] = src
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            q = queue[head]
            head += 1
            for a in range(k):
                t = delta[q, a]
                if stamp[t] != src:
                    stamp[t] = src
                    queue[tail] = t
                    tail += 1
        out[src] = tail
    return out


spectra_jit = jit(_spectra_loop)


def spectra_numpy(delta):
    n = delta.shape[0]
    reach = np.zeros(n, dtype=np.int64)
    for src in range(n):
        reach[src] = bfs_order_numpy(delta, src).size
    return reach


# --------------------------------------------------------------------------
# Hopcroft partition refinement


def _hopcroft_loop(delta, accepting):
    n, k = delta.shape

    # inverse transitions as CSR per symbol, sources in increasing order
    inv_ptr = np.zeros((k, n + 1), np.int64)
    for q in range(n):
        for a in range(k):
            inv_ptr[a, delta[q, a] + 1] += 1
    for a in range(k):
        for q in range(n):
            inv_ptr[a, q + 1] += inv_ptr[a, q]
    inv_src = np.empty((k, n), np.int64)
    fill = inv_ptr[:, :n].copy()
    for q in range(n):
        for a in range(k):
            t = delta[q, a]
            inv_src[a, fill[a, t]] = q
            fill[a, t] += 1

    # partition as contiguous blocks of elems
    elems = np.empty(n, np.int64)
    loc = np.empty(n, np.int64)
    cls = np.empty(n, np.int64)
    first = np.empty(n, np.int64)
    end = np.empty(n, np.int64)
    marked = np.zeros(n, np.int64)
    nc = 0
    pos = 0
    for flag in (False, True):
        start = pos
        for q in range(n):
            if accepting[q] == flag:
                elems[pos] = q
                loc[q] = pos
                cls[q] = nc
                pos += 1
        if pos > start:
            first[nc] = start
            end[nc] = pos
            nc += 1

    # FIFO worklist of (class, symbol) splitters
    cap = n * k
    wq = np.empty(cap, np.int64)
    in_work = np.zeros(cap, np.bool_)
    head = 0
    size = 0
    if nc == 2:
        small = 0 if end[0] - first[0] <= end[1] - first[1] else 1
        for a in range(k):
            wq[(head + size) % cap] = small * k + a
            in_work[small * k + a] = True
            size += 1

    pre = np.empty(n, np.int64)
    touched = np.empty(n, np.int64)
    while size > 0:
        item = wq[head]
        head = (head + 1) % cap
        size -= 1
        in_work[item] = False
        c = item // k
        a = item % k

        npre = 0
        for i in range(first[c], end[c]):
            s = elems[i]
            for j in range(inv_ptr[a, s], inv_ptr[a, s + 1]):
                pre[npre] = inv_src[a, j]
                npre += 1

        ntouched = 0
        for i in range(npre):
            p = pre[i]
            b = cls[p]
            if marked[b] == 0:
                touched[ntouched] = b
                ntouched += 1
            dest = first[b] + marked[b]
            other = elems[dest]
            lp = loc[p]
            elems[lp] = other
            loc[other] = lp
            elems[dest] = p
            loc[p] = dest
            marked[b] += 1

        for i in range(ntouched):
            b = touched[i]
            m = marked[b]
            marked[b] = 0
            size_b = end[b] - first[b]
            if m == size_b:
                continue
            d = nc
            nc += 1
            # the new class always takes the smaller half
            if m <= size_b - m:
                first[d] = first[b]
                end[d] = first[b] + m
                first[b] = first[b] + m
            else:
                first[d] = first[b] + m
                end[d] = end[b]
                end[b] = first[b] + m
            for j in range(first[d], end[d]):
                cls[elems[j]] = d
            for e in range(k):
                wq[(head + size) % cap] = d * k + e
                in_work[d * k + e] = True
                size += 1
    return cls, nc


hopcroft_jit = jit(_hopcroft_loop)
hopcroft_python = _hopcroft_loop


# --------------------------------------------------------------------------
# occupancy / exploration chain


def _occupancy_loop(balls, n):
    out = np.empty(balls.size, np.int64)
    seen = np.zeros(n, np.bool_)
    c = 0
    for i in range(balls.size):
        b = balls[i]
        if not seen[b]:
            seen[b] = True
            c += 1
        out[i] = c
    return out


occupancy_jit = jit(_occupancy_loop)


def occupancy_numpy(balls, n):
    """Running count of distinct values in ``balls``."""
    new = np.zeros(balls.size, dtype=np.int64)
    if balls.size:
        _, first = np.unique(balls, return_index=True)
        new[first] = 1
    return np.cumsum(new)


def _occupancy_at_loop(balls, n, times):
    trials, t_max = balls.shape
    out = np.empty((trials, times.size), np.int64)
    stamp = np.full(n, -1, np.int64)
    for r in range(trials):
        c = 0
        j = 0
        for i in range(t_max):
            b = balls[r, i]
            if stamp[b] != r:
                stamp[b] = r
                c += 1
            while j < times.size and times[j] == i + 1:
                out[r, j] = c
                j += 1
    return out


occupancy_at_jit = jit(_occupancy_at_loop)


def occupancy_at_numpy(balls, n, times):
    """Distinct-value counts of each row's first ``t`` entries, for each ``t`` in sorted ``times``."""
    trials, t_max = balls.shape
    out = np.empty((trials, times.size), dtype=np.int64)
    occupied = np.zeros((trials, n), dtype=bool)
    count = np.zeros(trials, dtype=np.int64)
    rows = np.arange(trials)
    j = 0
    for i in range(t_max):
        col = balls[:, i]
        count += ~occupied[rows, col]
        occupied[rows, col] = True
        while j < times.size and times[j] == i + 1:
            out[:, j] = count
            j += 1
    return out


if USE_NUMBA:
    bfs_order = bfs_order_jit
    spectra = spectra_jit
    hopcroft = hopcroft_jit
    occupancy = occupancy_jit
    occupancy_at = occupancy_at_jit
else:
    bfs_order = bfs_order_numpy
    spectra = spectra_numpy
    hopcroft = hopcroft_python
    occupancy = occupancy_numpy
    occupancy_at = occupancy_at_numpy
