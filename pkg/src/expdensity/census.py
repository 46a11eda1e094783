"""Brute-force census of exponentially S-numbers up to x.

A smallest-prime-factor table is built once, then every i <= x is peeled
prime by prime (vectorised over all i at once) and rejected as soon as one
exponent falls outside S.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np
from mpmath import mpf

from .errors import BudgetError
from .exponent_set import ExponentSet

DEFAULT_MAX_LIMIT = 10**8
# reference densities are carried at this precision in reports
_REPORT_PREC = 256
THEOREM1_C = 4 * math.sqrt(2.4 / math.log(2))  # 7.443083..., reported only


def max_limit() -> int:
    env = os.environ.get("EXPDENSITY_MAX_LIMIT")
    if env:
        try:
            return int(env)
        except ValueError:
            raise BudgetError(f"EXPDENSITY_MAX_LIMIT={env!r} is not an integer") from None
    return DEFAULT_MAX_LIMIT


def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[i] = least prime dividing i for 2 <= i <= limit (spf[0] = spf[1] = 0)."""
    dtype = np.int32 if limit < 2**31 else np.int64
    spf = np.zeros(limit + 1, dtype=dtype)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    # anything untouched above sqrt(limit) is its own smallest factor
    idx = np.nonzero(spf == 0)[0]
    spf[idx] = idx
    spf[:2] = 0
    return spf


def tolerance(x: int) -> float:
    """Artifact-chosen census tolerance 5 x^(-1/2) ln x."""
    return 5 * math.log(x) / math.sqrt(x) if x > 1 else 1.0


@dataclass(frozen=True)
class CensusReport:
    x: int
    count: int
    reference_h: Optional[mpf] = None
    passed: Optional[bool] = None
    theorem1_c: float = THEOREM1_C

    @property
    def empirical_density(self) -> Fraction:
        return Fraction(self.count, self.x)

    @property
    def deviation(self) -> Optional[mpf]:
        if self.reference_h is None:
            return None
        with mpmath.workprec(_REPORT_PREC):
            return abs(mpf(self.count) / self.x - self.reference_h)

    def to_dict(self) -> dict:
        with mpmath.workprec(_REPORT_PREC):
            d = {
                "x": self.x,
                "count": self.count,
                "empirical_density": mpmath.nstr(mpf(self.count) / self.x, 15),
            }
            if self.reference_h is not None:
                d["h"] = mpmath.nstr(self.reference_h, 25)
                d["deviation"] = mpmath.nstr(self.deviation, 6)
                d["pass"] = bool(self.passed)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _allowed_exponents(s: ExponentSet, top: int) -> np.ndarray:
    return np.array([0] + [s.u(e) for e in range(1, top + 1)], dtype=bool)


def count_members(s: ExponentSet, x: int) -> CensusReport:
    """Exact number of i <= x whose prime exponents all lie in S (1 included)."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    budget = max_limit()
    if x > budget:
        raise BudgetError(f"census limit {x} exceeds budget {budget} (set EXPDENSITY_MAX_LIMIT)")
    if x < 4 or s.is_all:
        # every i <= 3 has exponents only 1
        return CensusReport(x, x)
    allowed = _allowed_exponents(s, x.bit_length())
    spf = smallest_prime_factors(x)
    rem = np.arange(2, x + 1, dtype=spf.dtype)
    alive = np.ones(x - 1, dtype=bool)
    active = np.arange(x - 1)
    while active.size:
        r = rem[active]
        p = spf[r]
        e = np.zeros(active.size, dtype=np.int64)
        # strip every copy of p; at most log2(x) rounds
        div = np.ones(active.size, dtype=bool)
        while div.any():
            q, m = np.divmod(r, p)
            div = m == 0
            r = np.where(div, q, r)
            e += div
        ok = allowed[e]
        alive[active[~ok]] = False
        rem[active] = r
        keep = ok & (r > 1)
        active = active[keep]
    return CensusReport(x, int(alive.sum()) + 1)


def empirical_density_check(s: ExponentSet, x: int, h) -> CensusReport:
    """Census plus pass/fail: |count/x - h| <= 5 x^(-1/2) ln x."""
    rep = count_members(s, x)
    h = getattr(h, "value", h)
    with mpmath.workprec(_REPORT_PREC):
        h = mpf(h)
        dev = abs(mpf(rep.count) / x - h)
    return CensusReport(x, rep.count, h, bool(dev <= tolerance(x)))
