import itertools
import math

import pytest
from hypothesis import given, strategies as st

from symrel.enumeration import (
    is_weakly_monotone,
    kernel_dim,
    monomial_key,
    monomials,
    reduce_exponent,
    weakly_monotone_tuples,
    wm_count,
)
from symrel.gf import field_new


def test_monomials_q2():
    assert monomials(2, 2) == ((0, 0), (1, 0), (0, 1), (1, 1))
    m = monomials(2, 3)
    assert m[4:7] == ((1, 1, 0), (1, 0, 1), (0, 1, 1))
    assert m == ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
                 (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1))


def test_monomials_single_variable():
    assert monomials(3, 1) == ((0,), (1,), (2,))


@pytest.mark.parametrize("q,n", [(2, 5), (3, 4), (4, 3), (5, 3), (7, 2), (2, 10), (9, 3)])
def test_monomials_complete_and_ordered(q, n):
    m = monomials(q, n)
    assert len(m) == q**n == len(set(m))
    keys = [monomial_key(a) for a in m]
    assert all(k1 < k2 for k1, k2 in zip(keys, keys[1:]))


def test_wm_tuples_examples():
    F2 = field_new(2)
    assert weakly_monotone_tuples(F2, 2) == [(0, 0), (0, 1), (1, 1)]
    assert weakly_monotone_tuples(F2, 3) == [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]
    assert weakly_monotone_tuples(field_new(3), 1) == [(0,), (1,), (2,)]


@pytest.mark.parametrize("q,n", [(2, 6), (3, 5), (4, 4), (5, 4), (7, 3), (8, 3), (9, 3), (3, 8)])
def test_counts_against_brute_force(q, n):
    wm = weakly_monotone_tuples(q, n)
    assert len(wm) == wm_count(q, n)
    assert wm == sorted(wm)
    nonmono = sum(1 for a in itertools.product(range(q), repeat=n) if not is_weakly_monotone(a))
    assert wm_count(q, n) + nonmono == q**n
    assert kernel_dim(q, n) == nonmono


def test_count_examples():
    assert wm_count(2, 2) == 3
    assert wm_count(5, 5) == 126
    assert wm_count(7, 4) == 210
    assert kernel_dim(2, 3) == 4
    assert kernel_dim(3, 3) == 17
    for q in (2, 3, 4, 5, 7, 8, 9, 81):
        assert kernel_dim(q, 1) == 0


def test_counts_are_exact_beyond_64_bits():
    q, n = 81, 10
    assert q**n > 2**63
    assert kernel_dim(q, n) == q**n - math.comb(90, 10)


def test_count_rejects_bad_args():
    with pytest.raises(ValueError):
        wm_count(1, 3)
    with pytest.raises(ValueError):
        kernel_dim(3, 0)


def test_reduce_exponent_examples():
    assert reduce_exponent(3, 2) == 1
    assert reduce_exponent(4, 4) == 1
    assert reduce_exponent(0, 5) == 0


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(0, 500))
def test_reduce_exponent_matches_powers(q, e):
    F = field_new(*{2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1),
                    8: (2, 3), 9: (3, 2)}[q])
    r = reduce_exponent(e, q)
    assert 0 <= r < q
    for x in range(q):
        direct = 1
        for _ in range(e):
            direct = F.mul(direct, x)
        assert F.pow(x, r) == direct
