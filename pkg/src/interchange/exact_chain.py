"""Exact small-n ground truth via the conjugacy-class Markov chain.

The random-transposition walk projects to a Markov chain on integer
partitions (cycle types), because multiplying by a uniform transposition
moves between conjugacy classes at rates that depend only on the class.
For n <= 8 the chain is small enough to exponentiate directly, which gives
exact expected cycle counts independent of both the closed-form and the
spectral route.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, sqrt

import numpy as np
from scipy.stats import poisson

MAX_EXACT_N = 8


def integer_partitions(n: int) -> list[tuple[int, ...]]:
    """All partitions of n as non-increasing tuples, in reverse-lex order."""
    if n == 0:
        return [()]

    def rec(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return list(rec(n, n))


def canonical_permutation(partition: tuple[int, ...]) -> np.ndarray:
    """Successor array of the permutation with consecutive disjoint cycles."""
    n = sum(partition)
    succ = np.empty(n, dtype=np.int64)
    pos = 0
    for part in partition:
        for v in range(pos, pos + part - 1):
            succ[v] = v + 1
        succ[pos + part - 1] = pos
        pos += part
    return succ


def cycle_type(succ: np.ndarray) -> tuple[int, ...]:
    n = len(succ)
    seen = np.zeros(n, dtype=bool)
    sizes = []
    for v in range(n):
        if seen[v]:
            continue
        size = 0
        w = v
        while not seen[w]:
            seen[w] = True
            size += 1
            w = succ[w]
        sizes.append(size)
    return tuple(sorted(sizes, reverse=True))


def class_size(partition: tuple[int, ...]) -> int:
    """Number of permutations with the given cycle type: n! / prod(k^m_k m_k!)."""
    n = sum(partition)
    z = 1
    for part in set(partition):
        m = partition.count(part)
        z *= part**m * factorial(m)
    return factorial(n) // z


@dataclass(frozen=True)
class ClassChain:
    """Rate matrix of the walk projected onto conjugacy classes."""

    n: int
    partitions: tuple[tuple[int, ...], ...]
    rate_matrix: np.ndarray         # generator Q, diagonal -n(n-1)/2
    jump_counts: np.ndarray         # off-diagonal transposition tallies
    cycle_counts: np.ndarray        # [class, k] -> multiplicity of part k
    class_sizes: np.ndarray


@lru_cache(maxsize=None)
def build_class_chain(n: int) -> ClassChain:
    if not 2 <= n <= MAX_EXACT_N:
        raise ValueError(f"class chain supported for 2 <= n <= {MAX_EXACT_N}, got n={n}")
    parts = integer_partitions(n)
    index = {p: i for i, p in enumerate(parts)}
    m = len(parts)
    tallies = np.zeros((m, m), dtype=np.int64)
    for ci, partition in enumerate(parts):
        rep = canonical_permutation(partition)
        for i in range(n):
            for j in range(i + 1, n):
                moved = rep.copy()
                moved[i], moved[j] = moved[j], moved[i]
                tallies[ci, index[cycle_type(moved)]] += 1
    total = n * (n - 1) // 2
    assert np.all(tallies.sum(axis=1) == total)
    assert np.all(np.diag(tallies) == 0)  # parity flips on every transposition
    rate = tallies.astype(np.float64)
    np.fill_diagonal(rate, -float(total))
    alpha = np.zeros((m, n + 1), dtype=np.float64)
    for ci, partition in enumerate(parts):
        for part in partition:
            alpha[ci, part] += 1.0
    sizes = np.array([class_size(p) for p in parts], dtype=np.float64)
    return ClassChain(
        n=n,
        partitions=tuple(parts),
        rate_matrix=rate,
        jump_counts=tallies,
        cycle_counts=alpha,
        class_sizes=sizes,
    )


def class_probabilities(chain: ClassChain, t: float) -> np.ndarray:
    """Distribution over classes at time t, started from the identity.

    Uses uniformization: with rate L = n(n-1)/2 the stochastic matrix
    P = I + Q/L has zero diagonal here, and p(t) = sum_m Pois(Lt)(m) e0 P^m.
    Truncation at mean + 40*sqrt(mean) keeps the neglected Poisson mass far
    below 1e-12.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    n = chain.n
    rate_total = n * (n - 1) / 2.0
    step = chain.jump_counts / rate_total
    mu = rate_total * t
    cutoff = int(np.ceil(mu + 40.0 * sqrt(mu))) + 20
    weights = poisson.pmf(np.arange(cutoff + 1), mu)
    v = np.zeros(len(chain.partitions))
    v[chain.partitions.index((1,) * n)] = 1.0
    acc = weights[0] * v
    for m in range(1, cutoff + 1):
        v = v @ step
        acc = acc + weights[m] * v
    return acc


def brute_force_expected_cycles(n: int, k: int, t: float) -> float:
    """Exact E(number of k-cycles at time t) for n <= 8."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    chain = build_class_chain(n)
    probs = class_probabilities(chain, t)
    return float(probs @ chain.cycle_counts[:, k])
