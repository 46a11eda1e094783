"""Exact coefficients of log F_S(x).

Writing ``log F_S(x) = sum_{n>=2} f_n / n * x^n`` the integers ``f_n`` are
produced two ways:

* :func:`f_recursive` - the O(N^2) recurrence obtained by differentiating
  ``log F_S`` (production path);
* :func:`f_partition` - the explicit sum over partitions of n into parts
  >= 2 with integer weights ``t_sigma`` (verification path).

The rationals ``M_n`` satisfy ``f_n = n * (v_n + M_n)`` and are likewise
available by recursion and by explicit partition sum.

Everything here is exact: Python ints and :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, Sequence

from .exponent_set import VSeq

MAX_TERMS = 10_000

# decimal upper approximation of ln 2 = 0.693147180559945309417...
LN2_UPPER = Fraction(69314718055994530942, 10**20)


@dataclass(frozen=True)
class PartitionVector:
    """Multiplicity vector of a partition of ``n`` into parts >= 2.

    ``b[j - 2]`` is the number of parts equal to ``j``.
    """

    n: int
    b: tuple[int, ...]

    def __post_init__(self):
        if sum((j + 2) * bj for j, bj in enumerate(self.b)) != self.n:
            raise ValueError(f"{self.b} is not a partition of {self.n}")
        if any(bj < 0 for bj in self.b) or sum(self.b) < 1:
            raise ValueError(f"invalid multiplicities {self.b}")

    def mult(self, j: int) -> int:
        k = j - 2
        return self.b[k] if 0 <= k < len(self.b) else 0

    @property
    def num_parts(self) -> int:
        return sum(self.b)

    @property
    def parts(self) -> dict[int, int]:
        """Run-length form {part: multiplicity}, zero multiplicities dropped."""
        return {j + 2: bj for j, bj in enumerate(self.b) if bj}

    def monomial(self, v: VSeq) -> int:
        return prod(v[j] ** s for j, s in self.parts.items())


def enumerate_partitions_min2(n: int, max_part: int) -> list[PartitionVector]:
    """All partitions of n into parts in [2, max_part], lexicographic in b."""
    if n < 2 or not 2 <= max_part <= n:
        raise ValueError(f"need 2 <= max_part <= n, got n={n}, max_part={max_part}")
    width = max_part - 1
    out = []
    b = [0] * width

    # fill b_2 first as the outermost loop so the output is lexicographic
    def rec(k: int, remaining: int) -> Iterator[None]:
        j = k + 2
        if k == width - 1:
            if remaining % j == 0:
                b[k] = remaining // j
                yield
            b[k] = 0
            return
        for c in range(remaining // j + 1):
            b[k] = c
            yield from rec(k + 1, remaining - c * j)
        b[k] = 0

    for _ in rec(0, n):
        out.append(PartitionVector(n, tuple(b)))
    return out


def _multinomial_weight(p: PartitionVector) -> Fraction:
    """(-1)^(B-1) (B-1)! / prod b_j! for a partition with B parts."""
    B = p.num_parts
    w = Fraction(factorial(B - 1), prod(factorial(bj) for bj in p.b))
    return -w if B % 2 == 0 else w


def t_coefficient(p: PartitionVector) -> int:
    """Integer weight t_sigma of the monomial v_sigma in f_{|sigma|}."""
    m = p.n
    if p.parts == {m: 1}:
        return m
    t = _multinomial_weight(p) * m
    assert t.denominator == 1, f"non-integral t for {p.b}"
    return t.numerator


def f_recursive(v: VSeq, N: int) -> list[int]:
    """[f_2, ..., f_N] from the recurrence

    f_{n+1} = (n+1) v_{n+1} - sum_{i=1}^{n-2} v_{n-i} f_{i+1}.
    """
    if not 2 <= N <= MAX_TERMS:
        raise ValueError(f"N must be in 2..{MAX_TERMS}, got {N}")
    if v.N < N:
        raise ValueError(f"v only defined up to {v.N}, need {N}")
    vals = (0, 0) + v.values  # vals[n] = v_n
    f = [0, 0]  # f[n] = f_n
    for m in range(2, N + 1):
        n = m - 1
        acc = m * vals[m]
        for i in range(1, n - 1):
            acc -= vals[n - i] * f[i + 1]
        f.append(acc)
    return f[2:]


def f_partition(v: VSeq, n: int) -> int:
    """f_n as the sum over partitions sigma of n (parts >= 2) of t_sigma v_sigma."""
    if n < 2 or v.N < n:
        raise ValueError(f"cannot evaluate f_{n} with v up to {v.N}")
    total = 0
    for p in enumerate_partitions_min2(n, n):
        mono = p.monomial(v)
        if mono:
            total += t_coefficient(p) * mono
    return total


def M_recursive(v: VSeq, N: int) -> list[Fraction]:
    """[M_2, ..., M_N] with M_2 = M_3 = 0 and

    M_n = -(1/n) sum_{j=2}^{n-2} j v_{n-j} (v_j + M_j).
    """
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    if N > MAX_TERMS:
        raise ValueError(f"N must be <= {MAX_TERMS}")
    if N >= 4 and v.N < N - 2:
        raise ValueError(f"v only defined up to {v.N}, need {N - 2}")
    M = [Fraction(0)] * (N + 1)
    for n in range(4, N + 1):
        acc = Fraction(0)
        for j in range(2, n - 1):
            acc += j * v[n - j] * (v[j] + M[j])
        M[n] = -acc / n
    return M[2:]


def M_explicit(v: VSeq, n: int) -> Fraction:
    """M_n as the sum over partitions of n with parts in [2, n-2]."""
    if n < 4:
        raise ValueError(f"M_explicit needs n >= 4, got {n}")
    if v.N < n - 2:
        raise ValueError(f"v only defined up to {v.N}, need {n - 2}")
    total = Fraction(0)
    for p in enumerate_partitions_min2(n, n - 2):
        mono = p.monomial(v)
        if mono:
            total += _multinomial_weight(p) * mono
    return total


def cauchy_ok(n: int, f_n: int) -> bool:
    """|f_n| <= n ln2 2^n, checked in exact arithmetic."""
    return abs(f_n) <= LN2_UPPER * n * 2**n


@dataclass(frozen=True)
class CoeffTable:
    """Exact f_2..f_N and M_2..M_N for one v-sequence."""

    f: tuple[int, ...]
    M: tuple[Fraction, ...]

    @property
    def N(self) -> int:
        return len(self.f) + 1

    def rows(self) -> Iterator[tuple[int, int, Fraction]]:
        for i, (fn, Mn) in enumerate(zip(self.f, self.M)):
            yield i + 2, fn, Mn

    def to_json(self) -> list[dict]:
        return [
            {"n": n, "f": str(fn), "M": {"num": str(Mn.numerator), "den": str(Mn.denominator)}}
            for n, fn, Mn in self.rows()
        ]

    @classmethod
    def from_json(cls, rows: Sequence[dict]) -> "CoeffTable":
        rows = sorted(rows, key=lambda r: r["n"])
        return cls(
            tuple(int(r["f"]) for r in rows),
            tuple(Fraction(int(r["M"]["num"]), int(r["M"]["den"])) for r in rows),
        )


def coeff_table(v: VSeq, N: int) -> CoeffTable:
    """Build and self-check a table: integrality, f = n(v + M), Cauchy bound."""
    f = f_recursive(v, N)
    M = M_recursive(v, N)
    for n, fn, Mn in zip(range(2, N + 1), f, M):
        if n * (v[n] + Mn) != fn:
            raise ArithmeticError(f"f_{n} != n (v_n + M_n)")
        if not cauchy_ok(n, fn):
            raise ArithmeticError(f"|f_{n}| = {abs(fn)} exceeds n ln2 2^n")
    return CoeffTable(tuple(f), tuple(M))
