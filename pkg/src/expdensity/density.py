"""Density h(E(S)) of exponentially S-numbers.

Two routes to ``h = prod_p F_S(1/p)``:

``density_hybrid``
    Euler factors for p <= B are evaluated directly; the remaining primes
    are folded into the fast series ``sum_n f_n/n * P_{>B}(n)``, whose terms
    decay like (2/B)^n.  Production path.

``density_euler_truncated``
    The raw product over p <= X with a bound for the omitted factors.
    Cross-check path; fixed-point integer arithmetic for speed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import mpmath
from mpmath import mpf

from .coefficients import coeff_table
from .errors import BudgetError
from .exponent_set import ExponentSet, v_seq
from .numerics import (
    BigReal,
    bits_for_digits,
    prime_zeta,
    prime_zeta_tail,
    sieve_primes,
    ulp,
)

DEFAULT_DIGITS = 20
DEFAULT_PRIME_CUTOFF = 101
MAX_DIGITS = 1000
EULER_TAIL_CONST = 1.4

LN2 = math.log(2)


@dataclass(frozen=True)
class DensityResult:
    h: BigReal
    log_h: BigReal
    error_bound: mpf
    prime_cutoff_B: int
    series_terms_N: int
    digits_requested: int
    method: str
    set_spec: str = ""

    def h_string(self, digits: Optional[int] = None) -> str:
        return self.h.decimal(digits or self.digits_requested)

    def to_dict(self) -> dict:
        D = self.digits_requested
        return {
            "method": self.method,
            "set": self.set_spec,
            "digits": D,
            "h": self.h.decimal(D + 5),
            "log_h": self.log_h.decimal(D + 5),
            "error_bound": format_bound(self.error_bound),
            "B": self.prime_cutoff_B,
            "N": self.series_terms_N,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def format_bound(x) -> str:
    """Upward-rounded 3-significant-digit scientific string ("0" for zero)."""
    if x == 0:
        return "0"
    exp10 = int(mpmath.floor(mpmath.log10(abs(mpf(x)))))
    mant = mpf(x) / mpf(10) ** exp10
    mant = mpmath.ceil(mant * 100) / 100
    if mant >= 10:
        mant /= 10
        exp10 += 1
    return f"{float(mant):.2f}e{exp10:d}"


def series_tail_bound(B: int, N: int) -> mpf:
    """ln2 * (B/N) * (2/B)^(N+1) / (1 - 2/B): bounds sum_{n>N} |f_n/n| P_{>B}(n)."""
    B = mpf(B)
    r = 2 / B
    return mpf(LN2) * 1.0000001 * (B / N) * r ** (N + 1) / (1 - r)


def default_terms(B: int, digits: int) -> int:
    target = mpf(10) ** -(digits + 5)
    N = 2
    while series_tail_bound(B, N) >= target:
        N += 1
    return N


def _check_digits(digits: int):
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    if digits > MAX_DIGITS:
        raise BudgetError(f"{digits} digits exceeds the configured maximum {MAX_DIGITS}")


def _truncation_order(x_log2: float, target_log2: float) -> int:
    # smallest K with x^(K+1)/(1-x) <= 2^target, x = 2^x_log2, x <= 1/2
    return max(2, math.ceil((target_log2 - 1) / x_log2) - 1)


def F_S_log_at(s: ExponentSet, p: int, prec: int, tol: Optional[mpf] = None) -> BigReal:
    """log F_S(1/p), series truncated once x^(K+1)/(1-x) drops below ``tol``."""
    if s.is_all:
        return BigReal(mpf(0), mpf(0), prec)
    if tol is None:
        tol = mpf(2) ** -prec
    deg = s.degree
    if deg is None:
        K = _truncation_order(-math.log2(p), float(mpmath.log(tol, 2)))
        with mpmath.workprec(prec + 10):
            trunc = (mpf(1) / p) ** (K + 1) / (1 - mpf(1) / p)
    else:
        K = deg
        trunc = mpf(0)
    v = v_seq(s, max(K, 2))
    with mpmath.workprec(prec + 10):
        x = mpf(1) / p
        acc = mpf(0)
        for n in range(K, 1, -1):
            acc = (acc + v[n]) * x
        F = 1 + acc * x
        val = mpmath.log(F)
        # F >= 1/2 on (0, 1/2]; log is 2/(1-2t)-Lipschitz within t of F
        err = 2 * trunc / (1 - 2 * trunc) + ulp(prec) * (2 * K + 8)
    return BigReal(val, err, prec)


def density_hybrid(
    s: ExponentSet,
    digits: int = DEFAULT_DIGITS,
    prime_cutoff: Optional[int] = None,
    terms: Optional[int] = None,
) -> DensityResult:
    """h(E(S)) to ``digits`` significant digits with a guaranteed bound."""
    _check_digits(digits)
    B = DEFAULT_PRIME_CUTOFF if prime_cutoff is None else int(prime_cutoff)
    if B < 3:
        raise ValueError(f"prime cutoff must be >= 3, got {B}")
    N = default_terms(B, digits) if terms is None else int(terms)
    if N < 2:
        raise ValueError(f"series terms must be >= 2, got {N}")
    prec = bits_for_digits(digits)

    if s.is_all:
        one = BigReal(mpf(1), mpf(0), prec)
        zero = BigReal(mpf(0), mpf(0), prec)
        return DensityResult(one, zero, mpf(0), B, N, digits, "hybrid", s.spec)

    primes = [int(p) for p in sieve_primes(B).primes]
    target = mpf(10) ** -(digits + 5)
    table = coeff_table(v_seq(s, N), N)
    # P_{>B}(n) error is amplified by |f_n/n| <= ln2 2^n
    series_prec = prec + N + 8

    with mpmath.workprec(series_prec):
        log_h = mpf(0)
        err = mpf(0)
        for p in primes:
            lf = F_S_log_at(s, p, prec, tol=target / len(primes))
            log_h += lf.value
            err += lf.error
        for n, fn, _ in table.rows():
            if fn == 0:
                continue
            P = prime_zeta_tail(n, B, series_prec)
            coef = mpf(fn) / n
            log_h += coef * P.value
            err += abs(coef) * P.error
        err += series_tail_bound(B, N)
        err += ulp(prec) * (len(primes) + 2 * N + 4)
        h = mpmath.exp(log_h)
        # |exp(a) - exp(a+d)| <= e^a |d| e^|d| <= h |d| (1 + 2|d|) for |d| <= 1
        h_err = h * err * (1 + 2 * err) + ulp(prec) * 4
    return DensityResult(
        BigReal(h, h_err, prec),
        BigReal(log_h, err, prec),
        h_err,
        B,
        N,
        digits,
        "hybrid",
        s.spec,
    )


def log_h_full_series(s: ExponentSet, N: int, prec: int, grouping: str = "f") -> BigReal:
    """Partial sum to N of log h over full prime zeta values.

    ``grouping="f"`` sums (f_n/n) P(n); ``grouping="M"`` sums
    P(2)v_2 + P(3)v_3 + sum_{n>=4} P(n)(v_n + M_n).  The two are equal
    termwise; only the order of exact-to-float conversion differs.
    """
    v = v_seq(s, N)
    table = coeff_table(v, N)
    with mpmath.workprec(prec + 10):
        total = mpf(0)
        err = mpf(0)
        for n, fn, Mn in table.rows():
            P = prime_zeta(n, prec + 10)
            if grouping == "f":
                c = mpf(fn) / n
            elif grouping == "M":
                c = mpf(v[n]) + (mpf(Mn.numerator) / Mn.denominator if n >= 4 else 0)
            else:
                raise ValueError(f"unknown grouping {grouping!r}")
            total += c * P.value
            err += abs(c) * P.error + ulp(prec) * (abs(c) + 1)
    return BigReal(total, err, prec)


def density_euler_truncated(s: ExponentSet, prime_limit: int, digits: int = DEFAULT_DIGITS) -> DensityResult:
    """prod_{p <= X} F_S(1/p) plus a bound 1.4/X on the omitted log-factors."""
    _check_digits(digits)
    X = int(prime_limit)
    if X < 2:
        raise ValueError(f"prime limit must be >= 2, got {X}")
    prec = bits_for_digits(digits)
    if s.is_all:
        one = BigReal(mpf(1), mpf(0), prec)
        zero = BigReal(mpf(0), mpf(0), prec)
        return DensityResult(one, zero, mpf(0), X, 0, digits, "euler-truncated", s.spec)

    primes = sieve_primes(X).primes
    wp = prec + 32
    one = 1 << wp
    tol_log2 = -(wp - 4)
    deg = s.degree
    kmax = deg if deg is not None else _truncation_order(-1.0, tol_log2)
    v = v_seq(s, max(kmax, 2))
    vals = (0, 0) + v.values

    # fixed point: integers scaled by 2^wp, every shift rounds down by < 1 unit
    prod = one
    units = 0
    trunc_sum = mpf(0)
    for p in primes.tolist():
        if deg is None:
            K = _truncation_order(-math.log2(p), tol_log2)
            trunc_sum += 2 * (mpf(1) / p) ** (K + 1) / (1 - mpf(1) / p)
        else:
            K = deg
        x = one // p
        acc = 0
        for n in range(K, 1, -1):
            acc = ((acc + vals[n] * one) * x) >> wp
        F = one + ((acc * x) >> wp)
        prod = (prod * F) >> wp
        # each F carries < 2K units of error, relative <= 4K units since F >= 1/2
        units += 4 * K + 2
    with mpmath.workprec(wp):
        h = mpf(prod) / one
        rel = mpf(units) * mpf(2) ** -wp + trunc_sum
        omitted = mpf(EULER_TAIL_CONST) / X
        delta = rel + omitted
        log_h = mpmath.log(h)
        h_err = h * delta * (1 + 2 * delta)
    return DensityResult(
        BigReal(h, h_err, prec),
        BigReal(log_h, delta, prec),
        h_err,
        X,
        0,
        digits,
        "euler-truncated",
        s.spec,
    )
