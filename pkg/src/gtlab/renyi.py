"""Per-test collision coefficients.

A single group test with pool X applied to target set T returns
``min(h, |X ∩ T|)``: h = 1 is the usual binary (any-positive) readout,
h = infinity reads the full overlap count, intermediate h saturates at h.

For two candidate target sets T, T' with |T| = l, |T'| = m and |T ∩ T'| = p,
these functions count / weight the pools X that *fail to distinguish* the
pair, i.e. return the same value on both.  By exchangeability the count only
depends on (l, m, p), so a canonical pair represents the whole class.

``k_*`` return exact integer counts over all pools of size s; ``q_ratio``
turns them into the per-test collision probability under a design
distribution (uniform fixed-weight pool, Bernoulli pool, or a mixture of
pool sizes).  All rational arithmetic is exact; floats appear only in the
final conversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

from .exactcomb import binom, r_count

__all__ = [
    "ModelSpec",
    "DesignDist",
    "k_general",
    "k_additive",
    "k_binary",
    "QExact",
    "q_ratio",
    "q_ratio_exact",
    "q_ratio_full",
]

# Bernoulli mixture terms whose size-weight falls below this fraction of the
# peak weight are dropped; the neglected mass is reported in QExact.
BERNOULLI_TAIL_CUTOFF = Fraction(1, 10**18)


@dataclass(frozen=True)
class ModelSpec:
    """Test readout: result of a pool X on target T is min(h, |X ∩ T|)."""

    h: float = 1

    def __post_init__(self):
        if self.h == math.inf:
            return
        if not (isinstance(self.h, int) and self.h >= 1):
            raise ValueError(f"h must be an integer >= 1 or inf, got {self.h!r}")

    @classmethod
    def binary(cls) -> "ModelSpec":
        return cls(h=1)

    @classmethod
    def additive(cls) -> "ModelSpec":
        return cls(h=math.inf)

    def effective_h(self, n: int) -> int:
        """h clipped to n; at h >= n the readout is the plain overlap count."""
        return n if self.h == math.inf else min(int(self.h), n)

    @property
    def is_binary(self) -> bool:
        return self.h == 1

    def is_additive_for(self, n: int) -> bool:
        return self.effective_h(n) >= n


def _as_fraction(x) -> Fraction:
    """Exact conversion; strings go through decimal parsing ('0.15' -> 3/20)."""
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(x)  # floats convert to their exact binary value


@dataclass(frozen=True)
class DesignDist:
    """Distribution of a single random pool X over subsets of n items.

    kind = "constant_weight": X uniform over all pools of exactly s items.
    kind = "bernoulli":       each item joins X independently with prob kappa.
    kind = "size_dist":       |X| drawn from pmf (index = size), then uniform.
    """

    kind: str
    s: int | None = None
    kappa: Fraction | None = None
    pmf: tuple[Fraction, ...] | None = None

    @classmethod
    def constant_weight(cls, s: int) -> "DesignDist":
        if not (isinstance(s, int) and s >= 1):
            raise ValueError(f"constant_weight: s must be an integer >= 1, got {s!r}")
        return cls(kind="constant_weight", s=s)

    @classmethod
    def bernoulli(cls, kappa) -> "DesignDist":
        kf = _as_fraction(kappa)
        if not 0 < kf < 1:
            raise ValueError(f"bernoulli: need 0 < kappa < 1, got {kappa!r}")
        return cls(kind="bernoulli", kappa=kf)

    @classmethod
    def size_dist(cls, pmf: Sequence) -> "DesignDist":
        weights = tuple(_as_fraction(w) for w in pmf)
        if any(w < 0 for w in weights):
            raise ValueError("size_dist: negative weight")
        total = sum(weights)
        if abs(float(total) - 1.0) > 1e-12:
            raise ValueError(f"size_dist: weights sum to {float(total)}, expected 1")
        return cls(kind="size_dist", pmf=weights)

    def validate_for(self, n: int) -> None:
        if self.kind == "constant_weight" and not 1 <= self.s <= n:
            raise ValueError(f"constant_weight: need 1 <= s <= n, got s={self.s}, n={n}")
        if self.kind == "size_dist" and len(self.pmf) != n + 1:
            raise ValueError(
                f"size_dist: pmf has {len(self.pmf)} entries, expected n+1={n + 1}"
            )


def _check_class(n: int, l: int, m: int, p: int) -> None:
    if not (0 <= p <= m <= l <= n and l + m - p <= n):
        raise ValueError(
            f"pair class must satisfy 0 <= p <= m <= l <= n and l+m-p <= n, "
            f"got n={n}, l={l}, m={m}, p={p}"
        )


@lru_cache(maxsize=200_000)
def k_general(n: int, s: int, l: int, m: int, p: int, h: int) -> int:
    """Count of s-pools X with min(h,|X∩T|) == min(h,|X∩T'|) for an (l,m,p) pair.

    Splitting on r = |X ∩ T ∩ T'|, u = |X ∩ (T\\T')|, v = |X ∩ (T'\\T)|:
    the readouts agree iff u == v, or both overlaps already saturate
    (r + u >= h and r + v >= h).  Requires m <= l; callers with unordered
    sizes must normalize first (q_ratio does).
    """
    _check_class(n, l, m, p)
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    if h >= s:  # saturation unreachable: plain overlap count
        return k_additive(n, s, l, m, p)
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    total = 0
    for r in range(p + 1):
        w = max(0, h - r)
        for u in range(m - p + 1):
            total += r_count(n, s, l, m, p, u, u, r)
        for u in range(w, l - p + 1):
            for v in range(max(u + 1, w), m - p + 1):
                total += r_count(n, s, l, m, p, u, v, r)
        for v in range(w, m - p + 1):
            for u in range(max(v + 1, w), l - p + 1):
                total += r_count(n, s, l, m, p, u, v, r)
    return total


@lru_cache(maxsize=200_000)
def k_additive(n: int, s: int, l: int, m: int, p: int) -> int:
    """Collision count when the readout is the exact overlap |X ∩ T|.

    Agreement forces |X ∩ (T\\T')| == |X ∩ (T'\\T)| = u; summing the r-split
    with Vandermonde collapses the intersection/outside cells:

        sum_u C(l-p, u) C(m-p, u) C(n-l-m+2p, s-2u)
    """
    _check_class(n, l, m, p)
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    total = 0
    for u in range(min(l - p, m - p, s // 2) + 1):
        total += binom(l - p, u) * binom(m - p, u) * binom(n - l - m + 2 * p, s - 2 * u)
    return total


def k_binary(n: int, s: int, l: int, m: int, p: int) -> int:
    """Collision count for the any-positive readout (h = 1).

    The pool distinguishes the pair iff it hits exactly one of T, T':

        C(n,s) - C(n-l,s) - C(n-m,s) + 2 C(n-l-m+p,s)
    """
    _check_class(n, l, m, p)
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s={s}, n={n}")
    return (
        binom(n, s)
        - binom(n - l, s)
        - binom(n - m, s)
        + 2 * binom(n - l - m + p, s)
    )


def _k_dispatch(n: int, s: int, l: int, m: int, p: int, h: int) -> int:
    if h == 1:
        return k_binary(n, s, l, m, p)
    if h >= n:
        return k_additive(n, s, l, m, p)
    return k_general(n, s, l, m, p, h)


@dataclass(frozen=True)
class QExact:
    """Exact collision probability plus the neglected Bernoulli tail mass.

    value is the exactly-computed (possibly truncated) sum; tail_bound is an
    upper bound on everything dropped, zero for the non-truncated paths.
    """

    value: Fraction
    tail_bound: Fraction = Fraction(0)


def _bernoulli_size_window(
    n: int, kappa: Fraction
) -> tuple[int, int, Fraction, list[Fraction]]:
    """Smallest size window whose complement has negligible Bernoulli mass.

    Weights w_s = C(n,s) kappa^s (1-kappa)^(n-s) are unimodal; walk outward
    from the mode until w_s < cutoff * w_mode, then bound each tail by a
    geometric series with the last ratio.
    """
    w = [Fraction(0)] * (n + 1)
    one_m = 1 - kappa
    mode = min(n, int((n + 1) * kappa))
    w[mode] = Fraction(binom(n, mode)) * kappa**mode * one_m ** (n - mode)
    cutoff = w[mode] * BERNOULLI_TAIL_CUTOFF
    lo = hi = mode
    while lo > 0:
        ratio = Fraction(lo, n - lo + 1) * one_m / kappa  # w_{lo-1} / w_lo
        nxt = w[lo] * ratio
        if nxt < cutoff:
            break
        lo -= 1
        w[lo] = nxt
    while hi < n:
        ratio = Fraction(n - hi, hi + 1) * kappa / one_m  # w_{hi+1} / w_hi
        nxt = w[hi] * ratio
        if nxt < cutoff:
            break
        hi += 1
        w[hi] = nxt
    tail = Fraction(0)
    if lo > 0:
        r = Fraction(lo, n - lo + 1) * one_m / kappa
        tail += w[lo] * r / (1 - r) if r < 1 else w[lo] * lo
    if hi < n:
        r = Fraction(n - hi, hi + 1) * kappa / one_m
        tail += w[hi] * r / (1 - r) if r < 1 else w[hi] * (n - hi)
    return lo, hi, tail, w


def q_ratio_full(
    dist: DesignDist, model: ModelSpec, n: int, l: int, m: int, p: int
) -> QExact:
    """Exact probability that one random pool fails to distinguish an
    (l, m, p) candidate pair.

    Sizes are normalized (order of l, m does not matter).  Identical sets
    (l == m == p) return 0 by convention: there is nothing to distinguish.
    """
    ll, mm = max(l, m), min(l, m)
    if not (0 <= p <= mm and ll <= n and ll + mm - p <= n):
        raise ValueError(f"bad pair class n={n}, l={l}, m={m}, p={p}")
    if ll == mm == p:
        return QExact(Fraction(0))
    h = model.effective_h(n)
    dist.validate_for(n)

    if dist.kind == "constant_weight":
        s = dist.s
        return QExact(Fraction(_k_dispatch(n, s, ll, mm, p, h), binom(n, s)))

    if dist.kind == "size_dist":
        total = Fraction(0)
        for s, weight in enumerate(dist.pmf):
            if weight == 0:
                continue
            total += weight * Fraction(_k_dispatch(n, s, ll, mm, p, h), binom(n, s))
        return QExact(total)

    # bernoulli
    kappa = dist.kappa
    if h == 1:
        # closed form: complement of "pool hits exactly one of T, T'"
        one_m = 1 - kappa
        val = 1 - one_m**ll - one_m**mm + 2 * one_m ** (ll + mm - p)
        return QExact(val)
    lo, hi, tail, w = _bernoulli_size_window(n, kappa)
    total = Fraction(0)
    for s in range(lo, hi + 1):
        total += w[s] * Fraction(_k_dispatch(n, s, ll, mm, p, h), binom(n, s))
    return QExact(total, tail)


def q_ratio_exact(
    dist: DesignDist, model: ModelSpec, n: int, l: int, m: int, p: int
) -> Fraction:
    return q_ratio_full(dist, model, n, l, m, p).value


def q_ratio(
    dist: DesignDist, model: ModelSpec, n: int, l: int, m: int, p: int
) -> float:
    return float(q_ratio_full(dist, model, n, l, m, p).value)
