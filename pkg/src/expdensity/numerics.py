"""Arbitrary-precision building blocks with explicit error bounds.

Values are mpmath ``mpf`` numbers computed at a fixed binary working
precision; each result is returned as a :class:`BigReal` carrying an
absolute error bound alongside the value.  The bound covers truncation
plus a rounding allowance of ``ops * 2**(1 - prec)`` scaled by magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from mpmath import mpf

from .errors import BudgetError

MAX_SIEVE_LIMIT = 2 * 10**9


def bits_for_digits(digits: int) -> int:
    """Working precision for ``digits`` requested decimals (15 guard digits)."""
    return math.ceil((digits + 15) * math.log2(10))


def ulp(prec: int) -> mpf:
    """Relative rounding error allowance for one operation at ``prec`` bits."""
    return mpf(2) ** (1 - prec)


@dataclass(frozen=True)
class BigReal:
    """A real number at ``prec`` bits with a guaranteed absolute error bound."""

    value: mpf
    error: mpf
    prec: int

    def __float__(self) -> float:
        return float(self.value)

    def decimal(self, digits: int) -> str:
        """Decimal string with ``digits`` significant digits."""
        with mpmath.workprec(self.prec):
            return mpmath.nstr(self.value, digits, strip_zeros=False)

    def __str__(self) -> str:
        digits = max(1, int(self.prec * math.log10(2)) - 1)
        return self.decimal(digits)


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return (int(p) for p in self.primes)

    def upto(self, bound: int) -> np.ndarray:
        return self.primes[: np.searchsorted(self.primes, bound, side="right")]


def sieve_primes(limit: int) -> PrimeTable:
    """Primes <= limit by the sieve of Eratosthenes (odd-only bytearray)."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise BudgetError(f"prime sieve limit {limit} exceeds budget {MAX_SIEVE_LIMIT}")
    # index i stands for 2i + 1
    size = (limit + 1) // 2
    mark = np.ones(size, dtype=bool)
    mark[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if mark[i]:
            p = 2 * i + 1
            mark[p * p // 2 :: p] = False
    primes = np.concatenate(([2], 2 * np.nonzero(mark)[0] + 1)).astype(np.int64)
    primes.flags.writeable = False
    return PrimeTable(limit, primes)


def moebius(k: int) -> int:
    if k < 1:
        raise ValueError(f"moebius needs k >= 1, got {k}")
    sign = 1
    d = 2
    while d * d <= k:
        if k % d == 0:
            k //= d
            if k % d == 0:
                return 0
            sign = -sign
        d += 1
    return -sign if k > 1 else sign


def _zeta_direct(s: int, prec: int, M: int) -> tuple[mpf, mpf]:
    # sum_{m<=M} m^-s, remainder in (0, M^(1-s)/(s-1)]
    with mpmath.workprec(prec):
        total = mpf(0)
        for m in range(M, 0, -1):
            total += mpf(m) ** -s
        tail = mpf(M) ** (1 - s) / (s - 1)
        # the remainder is positive: centre the estimate in its interval
        return total + tail / 2, tail / 2 + ulp(prec) * (2 * M + 4) * total


@lru_cache(maxsize=1024)
def _bernoulli(n: int):
    return mpmath.bernfrac(n)


def _zeta_euler_maclaurin(s: int, prec: int, M: int, target: mpf):
    with mpmath.workprec(prec):
        head = mpf(0)
        for m in range(M - 1, 0, -1):
            head += mpf(m) ** -s
        Mf = mpf(M)
        base = Mf ** (1 - s) / (s - 1) + Mf ** -s / 2
        # T_j = B_2j/(2j)! * s(s+1)...(s+2j-2) * M^(-s-2j+1)
        rising = mpf(s)
        power = Mf ** (-s - 1)
        fact = mpf(2)
        corr = mpf(0)
        prev = None
        j = 1
        ops = 2 * M + 8
        while True:
            p, q = _bernoulli(2 * j)
            term = mpf(p) / q / fact * rising * power
            mag = abs(term)
            if mag < target:
                # remainder after J terms is bounded by the first omitted term
                return head + base + corr, mag + ulp(prec) * (ops + 8 * j) * (head + base)
            if prev is not None and mag > prev:
                return None
            corr += term
            prev = mag
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            power /= Mf * Mf
            fact *= (2 * j + 1) * (2 * j + 2)
            j += 1


@lru_cache(maxsize=8192)
def _zeta_cached(s: int, prec: int) -> BigReal:
    target = mpf(2) ** -prec
    # direct sum + integral tail when a short head suffices
    for M in (2, 3, 4, 6, 8, 12, 16):
        if (s - 1) * math.log2(M) + math.log2(s - 1) >= prec + 2:
            val, err = _zeta_direct(s, prec, M)
            return BigReal(val, err, prec)
    M = max(8, math.ceil(prec * math.log(2) / (2 * math.pi)) + 2)
    while True:
        res = _zeta_euler_maclaurin(s, prec, M, target)
        if res is not None:
            return BigReal(res[0], res[1], prec)
        M *= 2


def zeta(s: int, prec: int) -> BigReal:
    """Riemann zeta at an integer s >= 2 with absolute error ~2**-prec.

    Large s use the plain partial sum with the integral tail bound; small s
    use Euler-Maclaurin summation, whose remainder for real s is bounded by
    the first omitted correction term.
    """
    if s < 2:
        raise ValueError(f"zeta needs s >= 2, got {s}")
    return _zeta_cached(int(s), int(prec))


@lru_cache(maxsize=4096)
def _prime_zeta_cached(n: int, prec: int) -> BigReal:
    target = mpf(2) ** -prec
    with mpmath.workprec(prec + 10):
        total = mpf(0)
        err = mpf(0)
        k = 1
        while True:
            # sum_{k' > k-1} |ln zeta(nk')|/k' <= sum 2^(1-nk') <= 2^(2-nk)
            tail = mpf(2) ** (2 - n * k)
            if tail < target:
                break
            mu = moebius(k)
            if mu:
                z = zeta(n * k, prec + 10)
                lz = mpmath.log(z.value)
                total += mu * lz / k
                err += z.error / z.value / k + ulp(prec + 10) * (lz + 2)
            k += 1
        err += tail
    return BigReal(total, err, prec)


def prime_zeta(n: int, prec: int) -> BigReal:
    """P(n) = sum over primes of p^-n, via P(n) = sum_k mu(k)/k ln zeta(nk)."""
    if n < 2:
        raise ValueError(f"prime_zeta needs n >= 2, got {n}")
    return _prime_zeta_cached(int(n), int(prec))


def prime_zeta_tail(n: int, B: int, prec: int) -> BigReal:
    """P_{>B}(n): the prime zeta sum restricted to primes p > B."""
    if B < 2:
        raise ValueError(f"B must be >= 2, got {B}")
    P = prime_zeta(n, prec)
    small = sieve_primes(B).primes
    with mpmath.workprec(prec + 10):
        head = mpf(0)
        for p in small:
            head += mpf(int(p)) ** -n
        val = P.value - head
        err = P.error + ulp(prec + 10) * (2 * len(small) + 2)
    return BigReal(val, err, prec)


def tail_upper_bound(n: int, B: int) -> mpf:
    """Integral bound: P_{>B}(n) <= sum_{m>B} m^-n <= B^(1-n)/(n-1)."""
    return mpf(B) ** (1 - n) / (n - 1)
