"""Oracle and property tests for the exact combinatorics layer.

The frozen tuples below were produced by the brute-force enumerators at the
bottom of this file (itertools over all subsets); they pin the expected
values independently of the closed forms under test.
"""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtlab.exactcomb import (
    binom,
    binom_ratio,
    log_binom,
    multinom,
    pair_count,
    r_count,
)

# (n, l, m, p) -> number of unordered pairs {T, T'}, |T|=l, |T'|=m, |T∩T'|=p.
# Frozen from brute-force enumeration (see brute_pair_count below).
PAIR_COUNT_FROZEN = [
    (2, 1, 1, 0, 1),
    (3, 2, 1, 1, 6),
    (3, 2, 2, 1, 3),
    (4, 2, 2, 0, 3),
    (4, 2, 2, 1, 12),
    (4, 3, 2, 1, 12),
    (5, 3, 2, 1, 60),
    (5, 3, 3, 1, 15),
    (5, 3, 3, 2, 30),
    (6, 3, 3, 0, 10),
    (6, 3, 3, 1, 90),
    (6, 4, 2, 1, 120),
    (6, 4, 4, 2, 45),
    (7, 3, 3, 1, 315),
    (7, 4, 3, 2, 630),
    (7, 4, 4, 2, 315),
    (8, 4, 4, 0, 35),
    (8, 4, 4, 1, 560),
    (8, 4, 4, 2, 1260),
    (8, 4, 4, 3, 560),
]


def brute_pair_count(n, l, m, p):
    """Count unordered pairs of distinct subsets by direct enumeration."""
    cnt = 0
    for T in itertools.combinations(range(n), l):
        sT = set(T)
        for T2 in itertools.combinations(range(n), m):
            sT2 = set(T2)
            if sT != sT2 and len(sT & sT2) == p:
                cnt += 1
    return cnt // 2 if l == m else cnt


def brute_r_count(n, s, l, m, p, u, v, r):
    """Count s-subsets X with |X∩(T∩T')|=r, |X∩(T\\T')|=u, |X∩(T'\\T)|=v
    for one concrete pair (T, T') realizing (l, m, p)."""
    T = set(range(l))
    T2 = set(range(p)) | set(range(l, l + m - p))
    inter, tonly, t2only = T & T2, T - T2, T2 - T
    cnt = 0
    for X in itertools.combinations(range(n), s):
        sX = set(X)
        if (
            len(sX & inter) == r
            and len(sX & tonly) == u
            and len(sX & t2only) == v
        ):
            cnt += 1
    return cnt


def test_binom_small_values():
    assert binom(0, 0) == 1
    assert binom(5, 2) == 10
    assert binom(10, 10) == 1
    assert binom(52, 5) == 2598960


def test_binom_out_of_range_is_zero():
    assert binom(5, -1) == 0
    assert binom(5, 6) == 0
    assert binom(0, 1) == 0


def test_binom_negative_n_raises():
    with pytest.raises(ValueError):
        binom(-1, 0)


@given(st.integers(0, 400), st.integers(-5, 405))
def test_binom_matches_math_comb(n, k):
    expected = math.comb(n, k) if 0 <= k <= n else 0
    assert binom(n, k) == expected


def test_binom_large_n_uncached_path():
    n = 5000  # above the row-cache limit
    assert binom(n, 3) == math.comb(n, 3)
    assert binom(n, n // 2) == math.comb(n, n // 2)


def test_multinom_matches_factorials():
    for n in range(0, 21):
        for a in range(0, n + 1):
            for b in range(0, n - a + 1):
                c = n - a - b
                expected = math.factorial(n) // (
                    math.factorial(a) * math.factorial(b) * math.factorial(c)
                )
                assert multinom(n, (a, b, c)) == expected


def test_multinom_negative_part_is_zero():
    assert multinom(5, (6, -1)) == 0
    assert multinom(3, (-1, 2, 2)) == 0


def test_multinom_bad_sum_raises():
    with pytest.raises(ValueError):
        multinom(5, (2, 2))


def test_pair_count_frozen_oracle():
    for n, l, m, p, expected in PAIR_COUNT_FROZEN:
        assert pair_count(n, l, m, p) == expected, (n, l, m, p)


def test_pair_count_brute_force_sweep():
    for n in range(2, 9):
        for l in range(1, min(n, 4) + 1):
            for m in range(1, l + 1):
                for p in range(0, m + (0 if l == m else 1)):
                    if n - l - m + p < 0:
                        continue
                    assert pair_count(n, l, m, p) == brute_pair_count(n, l, m, p), (
                        n,
                        l,
                        m,
                        p,
                    )


def test_pair_count_sums_to_all_pairs():
    # summing over intersection sizes gives the number of unordered pairs of
    # distinct d-subsets: C(C(n,d), 2)
    for n in range(2, 9):
        for d in range(1, min(n, 4) + 1):
            total = sum(pair_count(n, d, d, p) for p in range(d))
            assert total == math.comb(math.comb(n, d), 2), (n, d)


def test_pair_count_rejects_equal_sets():
    with pytest.raises(ValueError):
        pair_count(6, 3, 3, 3)


def test_pair_count_rejects_m_greater_than_l():
    with pytest.raises(ValueError):
        pair_count(6, 2, 3, 1)


def test_r_count_brute_force():
    n, s = 9, 4
    for l in (2, 3):
        for m in range(1, l + 1):
            for p in range(0, m + 1):
                if l == m and p == m:
                    continue
                for r in range(0, p + 1):
                    for u in range(0, l - p + 1):
                        for v in range(0, m - p + 1):
                            assert r_count(n, s, l, m, p, u, v, r) == brute_r_count(
                                n, s, l, m, p, u, v, r
                            ), (l, m, p, u, v, r)


def test_r_count_total_is_all_s_subsets():
    # every s-subset lands in exactly one (r, u, v) cell
    for n in range(4, 11):
        for s in range(0, n + 1):
            for (l, m, p) in [(2, 1, 0), (3, 2, 1), (3, 3, 1), (4, 2, 2)]:
                if l > n or n - l - m + p < 0:
                    continue
                total = sum(
                    r_count(n, s, l, m, p, u, v, r)
                    for r in range(p + 1)
                    for u in range(l - p + 1)
                    for v in range(m - p + 1)
                )
                assert total == binom(n, s), (n, s, l, m, p)


def test_log_binom_small_exact():
    for n in range(0, 60):
        for k in range(0, n + 1):
            got = log_binom(n, k)
            want = math.log(math.comb(n, k))
            assert math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-12)


@pytest.mark.parametrize(
    "n,k",
    [
        (10**6, 1),
        (10**6, 37),
        (10**6, 9999),
        (123457, 61728),
        (20001, 301),
        (10001, 5000),
    ],
)
def test_log_binom_large(n, k):
    # bignum log is the reference; exact up to the final float rounding
    want = math.log(math.comb(n, k))
    got = log_binom(n, k)
    assert math.isclose(got, want, rel_tol=1e-12)


def test_log_binom_edges():
    assert log_binom(17, 0) == 0.0
    assert log_binom(17, 17) == 0.0
    assert log_binom(17, -1) == float("-inf")
    assert log_binom(17, 18) == float("-inf")
    with pytest.raises(ValueError):
        log_binom(-1, 0)


@given(
    st.integers(0, 200),
    st.integers(0, 200),
    st.integers(0, 40),
    st.integers(0, 40),
)
@settings(max_examples=200)
def test_binom_ratio_matches_direct_quotient(n, s, w, j):
    if not (0 <= j <= w <= n and 0 <= s <= n):
        return
    from fractions import Fraction

    got = binom_ratio(n, s, w, j)
    if binom(n, s) == 0:
        return
    want = Fraction(binom(n - w, s - j), binom(n, s))
    assert got == want
