"""Exact combinatorial counts used by the bound computations.

Everything in this module is integer-exact (Python bignums).  Floating-point
enters only through ``log_binom``, which is guaranteed to a relative error of
1e-12 over its whole domain.

A per-row cache keeps Pascal rows for small ``n`` (default up to n=2000) so
hot loops over ``k`` do not recompute.  If the environment variable
``GTLAB_CACHE_DIR`` is set, rows for larger ``n`` are additionally spilled to
pickle files in that directory and reloaded on demand.
"""

from __future__ import annotations

import math
import os
import pickle
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

ROW_CACHE_LIMIT = 2000

# Big-row disk spill is opt-in via GTLAB_CACHE_DIR and only worth it for very
# wide rows; below this n math.comb is cheaper than unpickling.
_SPILL_MIN_N = 50_000


@lru_cache(maxsize=None)
def _binom_row(n: int) -> tuple[int, ...]:
    """Row n of Pascal's triangle as a tuple (C(n,0), ..., C(n,n))."""
    row = [1] * (n + 1)
    c = 1
    for k in range(1, n + 1):
        c = c * (n - k + 1) // k
        row[k] = c
    return tuple(row)


def _spill_path(n: int) -> str | None:
    cache_dir = os.environ.get("GTLAB_CACHE_DIR")
    if not cache_dir:
        return None
    return os.path.join(cache_dir, f"binom_row_{n}.pkl")


@lru_cache(maxsize=32)
def _big_row(n: int) -> tuple[int, ...]:
    path = _spill_path(n)
    if path is not None and os.path.exists(path):
        with open(path, "rb") as fh:
            return pickle.load(fh)
    row = _binom_row.__wrapped__(n)
    if path is not None:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            pickle.dump(row, fh)
        os.replace(tmp, path)
    return row


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), exact.

    Returns 0 when k < 0 or k > n.  Raises ValueError for n < 0: a negative
    pool size is always a logic error upstream, never a boundary case.
    """
    if n < 0:
        raise ValueError(f"binom: n must be non-negative, got {n}")
    if k < 0 or k > n:
        return 0
    if n <= ROW_CACHE_LIMIT:
        return _binom_row(n)[k]
    if n >= _SPILL_MIN_N and os.environ.get("GTLAB_CACHE_DIR"):
        return _big_row(n)[k]
    return math.comb(n, k)


def multinom(n: int, parts: Sequence[int]) -> int:
    """Multinomial coefficient n! / (parts[0]! * parts[1]! * ...), exact.

    Returns 0 if any part is negative (the standard out-of-range convention,
    matching ``binom``).  Raises ValueError if the parts are all non-negative
    but do not sum to n: that is a malformed call, not a boundary case.
    """
    total = 0
    for part in parts:
        if part < 0:
            return 0
        total += part
    if total != n:
        raise ValueError(f"multinom: parts sum to {total}, expected {n}")
    out = 1
    remaining = n
    for part in parts:
        out *= binom(remaining, part)
        remaining -= part
    return out


def pair_count(n: int, l: int, m: int, p: int) -> int:
    """Number of unordered pairs {T, T'} of distinct subsets of an n-set with
    |T| = l, |T'| = m (m <= l) and |T ∩ T'| = p.

    For m < l this is the multinomial splitting the n-set into the four cells
    (intersection, T'-only, T-only, neither); for m = l the multinomial counts
    ordered pairs, so it is halved.  Requires p <= m <= l <= n and, when
    m == l, p < m (a pair must be two *different* sets).
    """
    if not 0 <= p <= m <= l <= n:
        raise ValueError(f"pair_count: need 0 <= p <= m <= l <= n, got {(n, l, m, p)}")
    if m < l:
        return multinom(n, (p, m - p, l - p, n - l - m + p))
    if p == m:
        raise ValueError("pair_count: equal sets (p == m == l) do not form a pair")
    ordered = multinom(n, (p, m - p, m - p, n - 2 * m + p))
    assert ordered % 2 == 0
    return ordered // 2


def r_count(n: int, s: int, l: int, m: int, p: int, u: int, v: int, r: int) -> int:
    """Number of s-subsets X of an n-set that meet the four cells of a fixed
    (T, T') pair (sizes l, m, intersection p) in exactly (r, u, v) points:
    r in the intersection, u in T-only, v in T'-only, the rest outside T ∪ T'.

        C(p, r) * C(l-p, u) * C(m-p, v) * C(n-l-m+p, s-r-u-v)

    Out-of-range (r, u, v) give 0 via the binomial convention.
    """
    return (
        binom(p, r)
        * binom(l - p, u)
        * binom(m - p, v)
        * binom(n - l - m + p, s - r - u - v)
    )


def log_binom(n: int, k: int) -> float:
    """Natural log of C(n, k), relative error at most 1e-12.

    Returns -inf when k < 0 or k > n (mirroring ``binom`` returning 0) and
    raises ValueError for n < 0.

    The small-k path sums log((n-i)/(i+1)); every summand is non-negative for
    k <= n/2, so the relative error of the sum is a few ulp regardless of
    length.  Larger k fall back to the exact bignum (math.log accepts
    arbitrarily large ints).
    """
    if n < 0:
        raise ValueError(f"log_binom: n must be non-negative, got {n}")
    if k < 0 or k > n:
        return float("-inf")
    kk = min(k, n - k)
    if kk == 0:
        return 0.0
    if n <= 10_000:
        return math.log(binom(n, k))
    if kk <= 10_000:
        return math.fsum(math.log((n - i) / (i + 1)) for i in range(kk))
    return math.log(math.comb(n, k))


def binom_ratio(n: int, s: int, w: int, j: int) -> Fraction:
    """C(n-w, s-j) / C(n, s) as an exact Fraction, for 0 <= j <= w <= n.

    Uses falling factorials, s_(j) * (n-s)_(w-j) / n_(w), so it stays cheap
    even when n is far too large to expand C(n, s) itself.  Requires j <= w
    (the only regime the bound computations need); returns 0 when the
    numerator binomial would be 0.
    """
    if not 0 <= j <= w <= n:
        raise ValueError(f"binom_ratio: need 0 <= j <= w <= n, got {(n, s, w, j)}")
    if s - j < 0 or s - j > n - w or s < 0 or s > n:
        return Fraction(0)
    num = 1
    for i in range(j):
        num *= s - i
    for i in range(w - j):
        num *= n - s - i
    den = 1
    for i in range(w):
        den *= n - i
    return Fraction(num, den)


def clear_caches() -> None:
    """Drop the in-memory Pascal-row caches (mainly for tests)."""
    _binom_row.cache_clear()
    _big_row.cache_clear()
