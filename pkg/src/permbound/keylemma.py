"""Distinct-prime cycle counts of even permutations and the resulting threshold.

``m(k)`` is the largest number of distinct primes that occur as cycle lengths of
one even permutation on at most ``k`` points. Cycle lengths are primes, repeats
are allowed, and the permutation is even iff the number of 2-cycles is even. The
cheapest witness with ``m`` distinct primes therefore either uses the ``m``
smallest odd primes, or two 2-cycles plus the ``m - 1`` smallest odd primes.
"""
from __future__ import annotations

import math

import numpy as np

EPS = 1e-9


def primes_up_to(n: int) -> np.ndarray:
    """Sieve of Eratosthenes."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def _odd_primes_covering(total: int) -> np.ndarray:
    """Enough odd primes, ascending, that their sum exceeds ``total``."""
    bound = 64
    while True:
        odd = primes_up_to(bound)[1:]
        if odd.sum() > total:
            return odd
        bound *= 2


def min_cost_table(k_max: int) -> np.ndarray:
    """``cost[m]``: fewest points carrying an even permutation with ``m`` distinct
    prime cycle lengths, for every ``m`` with ``cost[m] <= k_max`` plus one more."""
    odd = _odd_primes_covering(max(k_max, 8))
    odd_sum = np.concatenate([[0], np.cumsum(odd)])
    m = np.arange(1, len(odd_sum))
    with_two = 4 + odd_sum[m - 1]
    cost = np.concatenate([[0], np.minimum(odd_sum[m], with_two)])
    last = int(np.searchsorted(cost, k_max, side="right"))
    return cost[:last + 1]


def alt_max_distinct_primes(k: int) -> tuple[int, tuple[int, ...]]:
    """``(m(k), witness cycle type)``, the witness as an ascending tuple of primes.

    Among witnesses of maximal size, one without repeated 2-cycles is preferred.
    """
    if k < 1:
        raise ValueError("k must be positive")
    cost = min_cost_table(k)
    m = int(np.searchsorted(cost, k, side="right")) - 1
    if m == 0:
        return 0, ()
    odd = _odd_primes_covering(max(k, 8))
    odd_only = tuple(int(p) for p in odd[:m])
    if sum(odd_only) <= k:
        return m, odd_only
    return m, (2, 2) + tuple(int(p) for p in odd[:m - 1])


def m_values(k_max: int) -> np.ndarray:
    """``m(k)`` for ``k = 0..k_max``."""
    cost = min_cost_table(k_max)
    ks = np.arange(k_max + 1)
    return np.searchsorted(cost, ks, side="right") - 1


def contradiction_bound(k) -> np.ndarray | float:
    """``2 k^(2/5)``: Theorem-7 bound on |Comp_A| once k > (log n)^5."""
    return 2.0 * np.power(k, 0.4)


def key_lemma_threshold(k_max: int) -> int | None:
    """Least ``k0`` with ``m(k) > 2 k^(2/5)`` for every ``k`` in ``[k0, k_max]``."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    ks = np.arange(2, k_max + 1)
    m = m_values(k_max)[2:]
    bad = np.flatnonzero(m - contradiction_bound(ks.astype(float)) <= EPS)
    if len(bad) == 0:
        return 2
    last_bad = int(ks[bad[-1]])
    return None if last_bad == k_max else last_bad + 1


def threshold_table(k_max: int) -> list[dict]:
    """Rows ``k, m(k), 2 k^(2/5)`` at powers of two and ten up to ``k_max``."""
    points = {k_max}
    p = 2
    while p <= k_max:
        points.add(p)
        p *= 2
    p = 10
    while p <= k_max:
        points.add(p)
        p *= 10
    m = m_values(k_max)
    return [{"k": k, "m": int(m[k]), "bound": float(contradiction_bound(float(k)))}
            for k in sorted(points)]
