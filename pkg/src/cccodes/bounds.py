"""Upper bounds on code sizes and block-size congruence arithmetic.

All arithmetic is exact integer arithmetic; the closed-form bounds are
implemented directly rather than by iterating the one-step Johnson
inequality, which avoids any floor-order ambiguity. `johnson_step` is
exposed separately for exploratory chains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .codes import CodeParams


class BoundRule(Enum):
    # declaration order is the tie-break order in upper_bound
    JOHNSON_STEP = "johnson-step"
    JOHNSON_D2W2 = "johnson-closed-d=2w-2"
    JOHNSON_D2W3 = "johnson-closed-d=2w-3"
    SVANSTROM_ODD = "svanstrom-odd"
    WEIGHT45_TABLE = "weight-4-5-table"
    QUATERNARY_W3_TABLE = "quaternary-weight-3-table"
    TRIVIAL = "trivial"


_CITATIONS = {
    BoundRule.JOHNSON_STEP: "Johnson-type bound, one step (Svanstrom-Ostergard-Bogdanova 2002)",
    BoundRule.JOHNSON_D2W2: "Johnson-type closed form at d=2w-2 (Svanstrom-Ostergard-Bogdanova 2002)",
    BoundRule.JOHNSON_D2W3: "Johnson-type closed form at d=2w-3 (Svanstrom-Ostergard-Bogdanova 2002)",
    BoundRule.SVANSTROM_ODD: "odd-length ternary weight-3 bound (Svanstrom 2000)",
    BoundRule.WEIGHT45_TABLE: "Johnson-type table for ternary/quaternary weight 4-5 codes",
    BoundRule.QUATERNARY_W3_TABLE: "Johnson-type table for quaternary weight-3 codes",
    BoundRule.TRIVIAL: "trivial counting bound",
}

_RULE_ORDER = list(BoundRule)


@dataclass(frozen=True)
class BoundResult:
    value: int
    rule: BoundRule
    citation: str


def _result(value: int, rule: BoundRule) -> BoundResult:
    return BoundResult(int(value), rule, _CITATIONS[rule])


def svanstrom_correction(n: int) -> int:
    """Correction term of the odd-length ternary weight-3 bound.

    0 when n = 1 (mod 4); n, n+2, n+4 when n = 3, 7, 11 (mod 12).
    """
    if n % 2 == 0:
        raise ValueError(f"correction defined for odd n only, got {n}")
    if n % 4 == 1:
        return 0
    r = n % 12
    if r == 3:
        return n
    if r == 7:
        return n + 2
    return n + 4


def bound_svanstrom(n: int) -> BoundResult:
    """Upper bound n(n-1)/4 - e(n)/6 for (n, 4, [2,1])_3 codes, n odd."""
    if n % 2 == 0:
        raise ValueError(f"bound defined for odd n only, got {n}")
    numerator = 3 * n * (n - 1) - 2 * svanstrom_correction(n)
    if numerator % 12 != 0:
        raise AssertionError(f"non-integral bound at n={n}")
    return _result(numerator // 12, BoundRule.SVANSTROM_ODD)


def bound_johnson_d2w2(params: CodeParams) -> BoundResult:
    """Closed-form Johnson bound floor((n/w1) floor((n-1)/(w-1))) at d=2w-2."""
    w = params.weight
    if params.d != 2 * w - 2:
        raise ValueError(f"requires d = 2w-2, got d={params.d}, w={w}")
    w1 = params.comp.counts[0]
    inner = (params.n - 1) // (w - 1)
    return _result(params.n * inner // w1, BoundRule.JOHNSON_D2W2)


def bound_johnson_d2w3(params: CodeParams) -> BoundResult:
    """Closed-form Johnson bound floor((n/w1) floor((n-1)/(w1-1))) at d=2w-3."""
    w = params.weight
    w1 = params.comp.counts[0]
    if params.d != 2 * w - 3:
        raise ValueError(f"requires d = 2w-3, got d={params.d}, w={w}")
    if w1 < 2:
        raise ValueError("requires w1 >= 2")
    inner = (params.n - 1) // (w1 - 1)
    return _result(params.n * inner // w1, BoundRule.JOHNSON_D2W3)


#: (q, d, composition counts) -> divisor k in floor(n(n-1)/k)
_WEIGHT45_ROWS = {
    (3, 5, (3, 1)): 6,
    (3, 6, (2, 2)): 6,
    (4, 6, (2, 1, 1)): 6,
    (3, 6, (3, 1)): 9,
    (3, 7, (4, 1)): 12,
}


def bound_weight45(params: CodeParams) -> BoundResult:
    """Table of n(n-1)/k bounds for the listed weight-4 and weight-5 codes."""
    key = (params.q, params.d, params.comp.counts)
    if key not in _WEIGHT45_ROWS:
        raise ValueError(f"no table row for {params}")
    k = _WEIGHT45_ROWS[key]
    return _result(params.n * (params.n - 1) // k, BoundRule.WEIGHT45_TABLE)


def bound_quaternary_w3(n: int, d: int) -> BoundResult:
    """Bounds for (n, d, [1,1,1])_4 codes at d in {3, 4, 5}."""
    if d == 3:
        value = n * (n - 1)
    elif d == 4:
        value = n * ((n - 1) // 2)
    elif d == 5:
        value = n
    else:
        raise ValueError(f"d must be in {{3,4,5}}, got {d}")
    return _result(value, BoundRule.QUATERNARY_W3_TABLE)


def johnson_step(n: int, w1: int, inner: int) -> int:
    """floor((n/w1) * inner): one Johnson step given an inner bound for the
    length-(n-1) code with first count w1-1."""
    if n < 1 or w1 < 1 or inner < 0:
        raise ValueError("requires n >= 1, w1 >= 1, inner >= 0")
    return n * inner // w1


def universe_size(params: CodeParams) -> int:
    """Number of length-n words with the given composition (multinomial)."""
    total = math.factorial(params.n)
    for c in params.comp.counts:
        total //= math.factorial(c)
    return total // math.factorial(params.n - params.weight)


def upper_bound(params: CodeParams) -> BoundResult:
    """Best applicable upper bound; ties broken by rule declaration order.

    Always returns a value: when no listed rule applies, the trivial bound
    is the universe size (1 when d > 2w, since two distinct equal-weight
    words differ in at most 2w positions).
    """
    w = params.weight
    candidates = []
    if params.d > 2 * w:
        candidates.append(_result(1, BoundRule.TRIVIAL))
    else:
        candidates.append(_result(universe_size(params), BoundRule.TRIVIAL))
    if params.q == 3 and params.d == 4 and params.comp.counts == (2, 1) and params.n % 2 == 1:
        candidates.append(bound_svanstrom(params.n))
    if params.d == 2 * w - 2:
        candidates.append(bound_johnson_d2w2(params))
    if params.d == 2 * w - 3 and params.comp.counts[0] >= 2:
        candidates.append(bound_johnson_d2w3(params))
    if (params.q, params.d, params.comp.counts) in _WEIGHT45_ROWS:
        candidates.append(bound_weight45(params))
    if params.q == 4 and params.comp.counts == (1, 1, 1) and params.d in (3, 4, 5):
        candidates.append(bound_quaternary_w3(params.n, params.d))
    return min(candidates, key=lambda r: (r.value, _RULE_ORDER.index(r.rule)))


@dataclass(frozen=True)
class CongruenceProfile:
    alpha: int
    beta: int
    K: frozenset

    def __post_init__(self):
        if self.beta % self.alpha != 0:
            raise AssertionError("alpha must divide beta")


def congruence_profile(K: Iterable[int]) -> CongruenceProfile:
    """alpha = gcd{k-1}, beta = gcd{k(k-1)} over the block sizes K."""
    ks = sorted(set(int(k) for k in K))
    if not ks:
        raise ValueError("empty block-size set")
    if any(k < 2 for k in ks):
        raise ValueError(f"block sizes must be >= 2, got {ks}")
    alpha = math.gcd(*(k - 1 for k in ks)) if len(ks) > 1 else ks[0] - 1
    beta = math.gcd(*(k * (k - 1) for k in ks)) if len(ks) > 1 else ks[0] * (ks[0] - 1)
    return CongruenceProfile(alpha, beta, frozenset(ks))


def pbd_admissible(n: int, K: Iterable[int]) -> bool:
    """Congruence admissibility of order n for block sizes K.

    Necessary for a pairwise balanced design on n points; asymptotically
    sufficient. Existence for a specific n is NOT claimed.
    """
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    prof = congruence_profile(K)
    return (n - 1) % prof.alpha == 0 and (n * (n - 1)) % prof.beta == 0
