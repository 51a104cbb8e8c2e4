"""Hot loops of the simulator, JIT-compiled.

State layout (all int64 arrays):
  succ[v]        successor of v in the current permutation
  cid[v]         cycle label of v
  csize[label]   cycle size per active label (stale entries are zeroed)
  scount[s]      number of cycles of size s
  free_labels    stack of recycled labels; meta[1] is the stack top
  meta           [0] cycle count, [1] free-stack top, [2] largest component
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _find_root(parent, v):
    root = v
    while parent[root] != root:
        root = parent[root]
    while parent[v] != root:
        nxt = parent[v]
        parent[v] = root
        v = nxt
    return root


@njit(cache=True, nogil=True)
def run_events(succ, cid, csize, scount, free_labels, meta, ev_i, ev_j, buf,
               parent, comp_size, couple):
    """Apply a batch of transpositions with incremental cycle bookkeeping.

    Swapping succ[i] and succ[j] merges the two cycles through i and j when
    their labels differ, else splits their common cycle in two.  For a split
    the two walkers advance alternately from i and from j; whichever closes
    first has traced exactly the smaller new cycle, which is then relabeled,
    so an event costs O(min affected cycle length).
    """
    n = succ.shape[0]
    for e in range(ev_i.shape[0]):
        i = ev_i[e]
        j = ev_j[e]
        li = cid[i]
        lj = cid[j]
        if li != lj:
            si = csize[li]
            sj = csize[lj]
            if si <= sj:
                anchor = i
                small = li
                keep = lj
            else:
                anchor = j
                small = lj
                keep = li
            v = anchor
            while True:
                cid[v] = keep
                v = succ[v]
                if v == anchor:
                    break
            free_labels[meta[1]] = small
            meta[1] += 1
            csize[keep] = si + sj
            csize[small] = 0
            scount[si] -= 1
            scount[sj] -= 1
            scount[si + sj] += 1
            tmp = succ[i]
            succ[i] = succ[j]
            succ[j] = tmp
            meta[0] -= 1
        else:
            lab = li
            s = csize[lab]
            a = i
            b = j
            na = 0
            nb = 0
            take_front = True
            while True:
                a = succ[a]
                buf[na] = a
                na += 1
                if a == j:
                    take_front = True
                    break
                b = succ[b]
                buf[n - 1 - nb] = b
                nb += 1
                if b == i:
                    take_front = False
                    break
            tmp = succ[i]
            succ[i] = succ[j]
            succ[j] = tmp
            meta[1] -= 1
            new_label = free_labels[meta[1]]
            if take_front:
                m = na
                for q in range(na):
                    cid[buf[q]] = new_label
            else:
                m = nb
                for q in range(nb):
                    cid[buf[n - 1 - q]] = new_label
            csize[new_label] = m
            csize[lab] = s - m
            scount[s] -= 1
            scount[m] += 1
            scount[s - m] += 1
            meta[0] += 1
        if couple:
            ri = _find_root(parent, i)
            rj = _find_root(parent, j)
            if ri != rj:
                if comp_size[ri] < comp_size[rj]:
                    ri, rj = rj, ri
                parent[rj] = ri
                comp_size[ri] += comp_size[rj]
                if comp_size[ri] > meta[2]:
                    meta[2] = comp_size[ri]


@njit(cache=True, nogil=True)
def validate_state(succ, cid, csize, scount, ncyc):
    """Full structural audit; returns 0 when consistent, an error code otherwise."""
    n = succ.shape[0]
    seen = np.zeros(n, dtype=np.uint8)
    for v in range(n):
        w = succ[v]
        if w < 0 or w >= n or seen[w] == 1:
            return 1  # not a bijection
        seen[w] = 1
    visited = np.zeros(n, dtype=np.uint8)
    label_used = np.zeros(n, dtype=np.uint8)
    counts = np.zeros(n + 1, dtype=np.int64)
    cycles = 0
    for v in range(n):
        if visited[v] == 1:
            continue
        lab = cid[v]
        if lab < 0 or lab >= n:
            return 2  # label out of range
        if label_used[lab] == 1:
            return 3  # label shared by two cycles
        label_used[lab] = 1
        size = 0
        w = v
        while visited[w] == 0:
            if cid[w] != lab:
                return 4  # label not constant on the orbit
            visited[w] = 1
            size += 1
            w = succ[w]
        if csize[lab] != size:
            return 5  # stored size disagrees with the orbit
        counts[size] += 1
        cycles += 1
    if cycles != ncyc:
        return 6  # cycle count disagrees with the labels
    for s in range(n + 1):
        if counts[s] != scount[s]:
            return 7  # size histogram disagrees
    return 0


_EMPTY = np.empty(0, dtype=np.int64)


def warmup() -> None:
    """Trigger JIT compilation on a tiny case (cached across sessions)."""
    succ = np.arange(4, dtype=np.int64)
    cid = np.arange(4, dtype=np.int64)
    csize = np.ones(4, dtype=np.int64)
    scount = np.zeros(5, dtype=np.int64)
    scount[1] = 4
    free = np.zeros(4, dtype=np.int64)
    meta = np.array([4, 0, 1], dtype=np.int64)
    buf = np.zeros(4, dtype=np.int64)
    ev = np.array([0], dtype=np.int64)
    ev2 = np.array([1], dtype=np.int64)
    run_events(succ, cid, csize, scount, free, meta, ev, ev2, buf, _EMPTY, _EMPTY, False)
    validate_state(succ, cid, csize, scount, meta[0])
