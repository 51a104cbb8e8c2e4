"""Continuous-time simulation of the interchange process on K_n.

Time is parametrized so the total jump rate is n(n-1)/2: a path to time t
carries Poisson(t n(n-1)/2) events, each a uniform transposition.  The
permutation state keeps incremental cycle bookkeeping (merge/split per
event in O(min affected cycle)); an optional coupled union-find graph adds
an edge per event, realizing the random graph whose components dominate
the permutation's cycles.

Replicas are seeded from a counter-based generator keyed on
(base_seed, replica index), so Monte Carlo output is bit-reproducible
regardless of worker scheduling.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels

THREADS_ENV_VAR = "INTERCHANGE_THREADS"

_EMPTY = np.empty(0, dtype=np.int64)


class CoupledGraph:
    """Union-find over the vertices touched by the transposition events."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.parent = np.arange(n, dtype=np.int64)
        self.comp_size = np.ones(n, dtype=np.int64)
        self.largest = 1

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return int(root)

    def component_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for v in range(self.n):
            root = self.find(v)
            sizes[root] = sizes.get(root, 0) + 1
        return sizes


def largest_component(graph: CoupledGraph) -> int:
    return graph.largest


class CycleState:
    """Permutation with incremental cycle-size bookkeeping."""

    def __init__(self, successor: np.ndarray):
        succ = np.asarray(successor, dtype=np.int64).copy()
        n = len(succ)
        if n < 1:
            raise ValueError("n must be positive")
        if not np.array_equal(np.sort(succ), np.arange(n)):
            raise ValueError("successor must be a permutation of 0..n-1")
        self.n = n
        self.successor = succ
        self.cycle_id = np.empty(n, dtype=np.int64)
        self._csize = np.zeros(n, dtype=np.int64)
        self._scount = np.zeros(n + 1, dtype=np.int64)
        self._free = np.zeros(n, dtype=np.int64)
        self._buf = np.empty(n, dtype=np.int64)
        self._meta = np.zeros(3, dtype=np.int64)
        self._meta[2] = 1
        self.graph: CoupledGraph | None = None
        self.event_count = 0
        self._rebuild_labels()

    @classmethod
    def identity(cls, n: int) -> "CycleState":
        return cls(np.arange(n, dtype=np.int64))

    @classmethod
    def from_permutation(cls, perm) -> "CycleState":
        return cls(np.asarray(perm, dtype=np.int64))

    def _rebuild_labels(self) -> None:
        succ = self.successor
        n = self.n
        self.cycle_id.fill(-1)
        self._csize.fill(0)
        self._scount.fill(0)
        label = 0
        for v in range(n):
            if self.cycle_id[v] >= 0:
                continue
            size = 0
            w = v
            while self.cycle_id[w] < 0:
                self.cycle_id[w] = label
                size += 1
                w = succ[w]
            self._csize[label] = size
            self._scount[size] += 1
            label += 1
        self._meta[0] = label
        free = n - label
        self._meta[1] = free
        self._free[:free] = np.arange(label, n, dtype=np.int64)

    # -- observables ---------------------------------------------------

    @property
    def num_cycles(self) -> int:
        return int(self._meta[0])

    @property
    def distance(self) -> int:
        """Cayley distance to the identity: n minus the cycle count."""
        return self.n - self.num_cycles

    def s_k(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise ValueError("k out of range")
        return int(self._scount[k])

    def size_counts(self) -> dict[int, int]:
        return {
            int(s): int(c)
            for s, c in enumerate(self._scount)
            if c > 0
        }

    def cycle_sizes(self) -> dict[int, int]:
        return {
            int(label): int(size)
            for label, size in enumerate(self._csize)
            if size > 0
        }

    def longest_cycle(self) -> int:
        scount = self._scount
        for s in range(self.n, 0, -1):
            if scount[s] > 0:
                return s
        raise AssertionError("unreachable: no cycles recorded")

    def big_cycle_mass(self, eps: float) -> float:
        """Fraction of points in cycles of size >= n * eps."""
        threshold = max(1, math.ceil(self.n * eps))
        sizes = np.arange(self.n + 1)
        mass = int((sizes * self._scount)[threshold:].sum())
        return mass / self.n

    # -- dynamics ------------------------------------------------------

    def apply_transposition(self, i: int, j: int) -> "CycleState":
        if i == j:
            raise ValueError("transposition needs two distinct indices")
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ValueError("index out of range")
        ev_i = np.array([min(i, j)], dtype=np.int64)
        ev_j = np.array([max(i, j)], dtype=np.int64)
        _kernels.run_events(
            self.successor, self.cycle_id, self._csize, self._scount,
            self._free, self._meta, ev_i, ev_j, self._buf, _EMPTY, _EMPTY, False,
        )
        self.event_count += 1
        return self

    def _run(self, ev_i: np.ndarray, ev_j: np.ndarray, graph: CoupledGraph | None) -> None:
        if graph is None:
            _kernels.run_events(
                self.successor, self.cycle_id, self._csize, self._scount,
                self._free, self._meta, ev_i, ev_j, self._buf, _EMPTY, _EMPTY, False,
            )
        else:
            _kernels.run_events(
                self.successor, self.cycle_id, self._csize, self._scount,
                self._free, self._meta, ev_i, ev_j, self._buf,
                graph.parent, graph.comp_size, True,
            )
            graph.largest = int(self._meta[2])
        self.event_count += len(ev_i)

    # -- validation ----------------------------------------------------

    _CHECK_ERRORS = {
        1: "successor is not a bijection",
        2: "cycle label out of range",
        3: "one label used by two distinct cycles",
        4: "cycle label not constant on an orbit",
        5: "stored cycle size disagrees with the orbit",
        6: "cycle count disagrees with the number of labels",
        7: "size counts disagree with the orbit structure",
    }

    def check(self) -> None:
        """Validate every structural invariant; raises on any violation."""
        code = int(_kernels.validate_state(
            self.successor, self.cycle_id, self._csize, self._scount,
            self.num_cycles,
        ))
        if code != 0:
            raise AssertionError(self._CHECK_ERRORS[code])
        if int((np.arange(self.n + 1) * self._scount).sum()) != self.n:
            raise AssertionError("cycle sizes do not sum to n")


def new_identity(n: int) -> CycleState:
    return CycleState.identity(n)


def replica_rng(base_seed: int, index: int) -> tuple[np.random.Generator, int]:
    """Counter-based per-replica generator keyed on (base_seed, index)."""
    seq = np.random.SeedSequence(entropy=base_seed, spawn_key=(index,))
    seed64 = int(seq.generate_state(1, np.uint64)[0])
    return np.random.Generator(np.random.Philox(seq)), seed64


def sample_path(
    n: int, t: float, rng: np.random.Generator, couple: bool = False
) -> CycleState:
    """State at time t from the identity; event count is Poisson(t n(n-1)/2)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    state = CycleState.identity(n)
    graph = CoupledGraph(n) if couple else None
    count = int(rng.poisson(t * n * (n - 1) / 2.0))
    if count > 0:
        first = rng.integers(0, n, size=count)
        other = rng.integers(0, n - 1, size=count)
        other = other + (other >= first)  # uniform over pairs with i != j
        ev_i = np.minimum(first, other).astype(np.int64)
        ev_j = np.maximum(first, other).astype(np.int64)
        state._run(ev_i, ev_j, graph)
    state.graph = graph
    state.check()
    return state


@dataclass(frozen=True)
class ReplicaResult:
    seed: int
    event_count: int
    s_k: dict[int, int]
    num_cycles: int
    distance: int
    longest_cycle: int
    big_cycle_mass: float
    largest_component: int | None


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    replicas: int
    base_seed: int


@dataclass(frozen=True)
class MonteCarloResult:
    n: int
    t: float
    k_list: tuple[int, ...]
    epsilon: float
    replicas: int
    base_seed: int
    coupled: bool
    estimates: dict[str, Estimate]
    results: tuple[ReplicaResult, ...]


def _run_replica(
    n: int, t: float, k_list: tuple[int, ...], epsilon: float,
    base_seed: int, index: int, couple: bool,
) -> ReplicaResult:
    rng, seed64 = replica_rng(base_seed, index)
    state = sample_path(n, t, rng, couple=couple)
    largest_comp = None
    if couple:
        largest_comp = largest_component(state.graph)
        if state.longest_cycle() > largest_comp:
            raise AssertionError(
                "a cycle escaped its component: coupling is broken"
            )
    return ReplicaResult(
        seed=seed64,
        event_count=state.event_count,
        s_k={k: state.s_k(k) for k in k_list},
        num_cycles=state.num_cycles,
        distance=state.distance,
        longest_cycle=state.longest_cycle(),
        big_cycle_mass=state.big_cycle_mass(epsilon),
        largest_component=largest_comp,
    )


def _estimate(values: np.ndarray, base_seed: int) -> Estimate:
    r = len(values)
    return Estimate(
        mean=float(np.mean(values)),
        stderr=float(np.std(values, ddof=1) / math.sqrt(r)),
        replicas=r,
        base_seed=base_seed,
    )


def default_workers() -> int:
    value = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def monte_carlo(
    n: int,
    t: float,
    k_list,
    epsilon: float,
    replicas: int,
    base_seed: int,
    couple_graph: bool = False,
    workers: int | None = None,
) -> MonteCarloResult:
    """Replicated paths with per-quantity means and standard errors.

    Output is a pure function of (n, t, k_list, epsilon, replicas,
    base_seed, couple_graph): replica streams are independent by
    construction and aggregation is ordered by replica index.
    """
    if replicas < 2:
        raise ValueError("need at least 2 replicas for a standard error")
    k_list = tuple(int(k) for k in k_list)
    for k in k_list:
        if not 1 <= k <= n:
            raise ValueError(f"k={k} out of range for n={n}")
    if workers is None:
        workers = default_workers()
    _kernels.warmup()

    def one(index: int) -> ReplicaResult:
        return _run_replica(n, t, k_list, epsilon, base_seed, index, couple_graph)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = tuple(pool.map(one, range(replicas)))
    else:
        results = tuple(one(index) for index in range(replicas))

    estimates: dict[str, Estimate] = {}
    for k in k_list:
        estimates[f"s_{k}"] = _estimate(
            np.array([r.s_k[k] for r in results], dtype=np.float64), base_seed
        )
    estimates["N"] = _estimate(
        np.array([r.num_cycles for r in results], dtype=np.float64), base_seed
    )
    estimates["d"] = _estimate(
        np.array([r.distance for r in results], dtype=np.float64), base_seed
    )
    estimates["C"] = _estimate(
        np.array([r.longest_cycle for r in results], dtype=np.float64), base_seed
    )
    estimates["X"] = _estimate(
        np.array([r.big_cycle_mass for r in results], dtype=np.float64), base_seed
    )
    if couple_graph:
        estimates["Y"] = _estimate(
            np.array([r.largest_component for r in results], dtype=np.float64),
            base_seed,
        )
    return MonteCarloResult(
        n=n,
        t=t,
        k_list=k_list,
        epsilon=epsilon,
        replicas=replicas,
        base_seed=base_seed,
        coupled=couple_graph,
        estimates=estimates,
        results=results,
    )
