"""Closed-form maximal-correlation identities.

Each evaluator is a total function of validated scalar parameters and is
cross-checked elsewhere by a brute-force oracle (`discrete` SVDs or
`stable` quadrature).  The 0/0 conventions are implemented as exact zero
branches before any division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .constants import MASS_ATOL
from .errors import BadIndices, MassNotOne, OutOfRange


@dataclass(frozen=True)
class Bernoulli2x2Params:
    """Cell probabilities of a 2x2 joint (rows a/b, columns c/d)."""

    p_ac: float
    p_ad: float
    p_bc: float
    p_bd: float

    def __post_init__(self) -> None:
        cells = (self.p_ac, self.p_ad, self.p_bc, self.p_bd)
        if any(p < 0.0 or p > 1.0 for p in cells):
            raise OutOfRange("cell probabilities must lie in [0, 1]")
        if abs(sum(cells) - 1.0) > MASS_ATOL:
            raise MassNotOne(f"cells sum to {sum(cells)}, expected 1")


def gaussian_mc(rho: float) -> float:
    """Maximal correlation of a jointly Gaussian pair: |rho|."""
    if not -1.0 <= rho <= 1.0:
        raise OutOfRange(f"rho must lie in [-1, 1], got {rho}")
    return abs(rho)


def bernoulli_2x2_mc(p: Bernoulli2x2Params) -> float:
    """Maximal correlation of a 2x2 joint: |det| / sqrt(p_a p_b p_c p_d).

    Returns 0 when either marginal is degenerate.
    """
    p_a = p.p_ac + p.p_ad
    p_b = p.p_bc + p.p_bd
    p_c = p.p_ac + p.p_bc
    p_d = p.p_ad + p.p_bd
    if p_a == 0.0 or p_b == 0.0 or p_c == 0.0 or p_d == 0.0:
        return 0.0
    det = p.p_ac * p.p_bd - p.p_ad * p.p_bc
    return abs(det) / math.sqrt(p_a * p_b * p_c * p_d)


def dksy_mc(l: int, m: int, n: int) -> float:
    """Maximal correlation of overlapping partial sums of i.i.d. variables.

    For sums over windows [1, m] and (l, n]: (m - l) / sqrt(m (n - l)).
    """
    _check_window(l, m, n)
    return (m - l) / math.sqrt(m * (n - l))


def mb_bound(p_in_t: Sequence[float]) -> float:
    """Maximal correlation of a vector with its random subvector.

    Equals sqrt(max_i P(i in T)); 0 for an almost-surely empty subset.
    """
    vals = [float(p) for p in p_in_t]
    if any(p < 0.0 or p > 1.0 for p in vals):
        raise OutOfRange("membership probabilities must lie in [0, 1]")
    if not vals:
        return 0.0
    return math.sqrt(max(vals))


def nested_subsets_mc(n: int, m: int, k: int) -> float:
    """R(S, T) for a uniform m-subset T of [n] and uniform k-subset S of T.

    Equals sqrt(k (n - m) / (m (n - k))), with the 0/0 convention -> 0.
    """
    if not (0 <= k <= m <= n):
        raise BadIndices(f"need 0 <= k <= m <= n, got k={k}, m={m}, n={n}")
    num = k * (n - m)
    den = m * (n - k)
    if num == 0:
        return 0.0
    return math.sqrt(num / den)


def uniform_nested_tag_mc(a: int, b: int) -> float:
    """R of tagged nested subvectors ((U, X_U), (S, X_S)) with |U|=a <= |S|=b.

    Equals sqrt(a / b).
    """
    if not 0 < a <= b:
        raise BadIndices(f"need 0 < a <= b, got a={a}, b={b}")
    return math.sqrt(a / b)


def bdk_mc(alpha: float, lam: float, c_minus: float = 1.0, c_plus: float = 1.0) -> float:
    """Maximal correlation of (X, X + lam*Z) for independent stable copies.

    For lam >= 0 the value is 1/sqrt(1 + lam^alpha) regardless of the
    positive/negative tail weights; for lam < 0 the tail asymmetry enters
    through min(c-, c+) / max(c-, c+).
    """
    if not 0.0 < alpha < 2.0:
        raise OutOfRange(f"alpha must lie in (0, 2), got {alpha}")
    if c_minus < 0.0 or c_plus < 0.0 or c_minus + c_plus <= 0.0:
        raise OutOfRange("tail weights must be nonnegative with positive sum")
    if lam >= 0.0:
        return 1.0 / math.sqrt(1.0 + lam**alpha)
    ratio = min(c_minus, c_plus) / max(c_minus, c_plus)
    return 1.0 / math.sqrt(1.0 + ratio * abs(lam) ** alpha)


def marshall_olkin_mc(l1: float, l2: float, l3: float) -> float:
    """Maximal correlation of a bivariate Marshall-Olkin exponential pair.

    For V1 = min(W1, W3), V2 = min(W2, W3) with independent exponentials of
    rates l1, l2, l3: l3 / sqrt((l1 + l3)(l2 + l3)).
    """
    if l1 <= 0.0 or l2 <= 0.0 or l3 <= 0.0:
        raise OutOfRange("rates must be positive")
    return l3 / math.sqrt((l1 + l3) * (l2 + l3))


def min_window_bound(l: int, m: int, n: int) -> float:
    """Upper bound for R(min over [1, m], min over (l, n]) of i.i.d. variables.

    The bound coincides with the partial-sum value (m - l)/sqrt(m (n - l));
    kept as a named alias so reports can cite the min-version claim.
    """
    _check_window(l, m, n)
    return dksy_mc(l, m, n)


def independent_rj(p_j_in_s: float, p_j_in_t: float) -> float:
    """Per-index constant for independent random subsets: sqrt(P(j in S) P(j in T))."""
    if not (0.0 <= p_j_in_s <= 1.0 and 0.0 <= p_j_in_t <= 1.0):
        raise OutOfRange("membership probabilities must lie in [0, 1]")
    return math.sqrt(p_j_in_s * p_j_in_t)


def _check_window(l: int, m: int, n: int) -> None:
    if not 1 <= l + 1 <= m <= n:
        raise BadIndices(f"need 1 <= l+1 <= m <= n, got l={l}, m={m}, n={n}")
