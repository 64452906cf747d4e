import numpy as np

import oracles
from permbound import keylemma
from permbound.theorems import alt_max_distinct_primes, key_lemma_threshold


def is_even_type(cycle_type):
    return cycle_type.count(2) % 2 == 0


def test_small_values():
    assert alt_max_distinct_primes(1) == (0, ())
    assert alt_max_distinct_primes(10) == (2, (3, 5))
    assert alt_max_distinct_primes(12) == (3, (2, 2, 3, 5))


def test_matches_brute_force():
    for k in range(1, 61):
        m, witness = alt_max_distinct_primes(k)
        assert m == oracles.max_distinct_primes(k), k
        assert sum(witness) <= k and len(set(witness)) == m and is_even_type(witness)


def test_monotone():
    m = keylemma.m_values(20000)
    assert np.all(np.diff(m) >= 0)


def test_large_k():
    m, witness = alt_max_distinct_primes(10**6)
    assert m > 2 * 10 ** 2.4
    assert sum(witness) <= 10**6 and is_even_type(witness)


def test_threshold():
    assert key_lemma_threshold(10) is None
    k0 = key_lemma_threshold(2 * 10**6)
    assert 10**4 <= k0 <= 2 * 10**6
    m = keylemma.m_values(2 * 10**6)
    ks = np.arange(k0, 2 * 10**6 + 1)
    assert np.all(m[k0:] > 2 * ks ** 0.4)
    assert m[k0 - 1] <= 2 * (k0 - 1) ** 0.4


def test_sieve():
    assert list(keylemma.primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(keylemma.primes_up_to(10**6)) == 78498
