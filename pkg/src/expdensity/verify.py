"""Cross-checks between the independent computation paths for one set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import mpmath

from .census import empirical_density_check
from .coefficients import M_explicit, M_recursive, coeff_table, f_partition, f_recursive
from .density import density_euler_truncated, density_hybrid
from .exponent_set import ExponentSet, v_seq
from .numerics import bits_for_digits, zeta


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def check_dual_path(s: ExponentSet, max_n: int = 25) -> CheckResult:
    v = v_seq(s, max_n)
    f = f_recursive(v, max_n)
    bad = [n for n in range(2, max_n + 1) if f_partition(v, n) != f[n - 2]]
    coeff_table(v, max_n)  # raises on Cauchy-bound or f = n(v + M) violation
    return CheckResult("dual-path coefficients", not bad, f"n <= {max_n}" if not bad else f"mismatch at n={bad[0]}")


def check_m_path(s: ExponentSet, max_n: int = 20) -> CheckResult:
    v = v_seq(s, max_n)
    M = M_recursive(v, max_n)
    bad = [n for n in range(4, max_n + 1) if M_explicit(v, n) != M[n - 2]]
    return CheckResult("M-path", not bad, f"n <= {max_n}" if not bad else f"mismatch at n={bad[0]}")


def check_cross_method(s: ExponentSet, digits: int = 20, prime_limit: int = 10**6) -> CheckResult:
    hy = density_hybrid(s, digits)
    eu = density_euler_truncated(s, prime_limit, digits)
    with mpmath.workprec(bits_for_digits(digits)):
        diff = abs(hy.h.value - eu.h.value)
        allowed = hy.error_bound + eu.error_bound
    return CheckResult(
        "hybrid vs euler-truncated",
        bool(diff <= allowed),
        f"|diff| = {mpmath.nstr(diff, 3)}, allowed {mpmath.nstr(allowed, 3)}",
    )


def check_range(s: ExponentSet, digits: int = 20) -> CheckResult:
    r = density_hybrid(s, digits)
    prec = bits_for_digits(digits)
    with mpmath.workprec(prec):
        z2 = zeta(2, prec)
        lo = 1 / (z2.value + z2.error) - r.error_bound
        ok = lo <= r.h.value <= 1 + r.error_bound
    return CheckResult("range [6/pi^2, 1]", bool(ok), f"h = {r.h_string()}")


def check_census(s: ExponentSet, x: int = 10**6, digits: int = 20) -> CheckResult:
    r = density_hybrid(s, digits)
    rep = empirical_density_check(s, x, r.h)
    return CheckResult(
        "census", bool(rep.passed), f"x = {x}, count = {rep.count}, deviation = {mpmath.nstr(rep.deviation, 3)}"
    )


CHECKS: list[Callable[[ExponentSet], CheckResult]] = [
    check_dual_path,
    check_m_path,
    check_cross_method,
    check_range,
    check_census,
]


def run_all(s: ExponentSet) -> list[CheckResult]:
    """Run every check in order, stopping after the first failure."""
    out = []
    for check in CHECKS:
        res = check(s)
        out.append(res)
        if not res.ok:
            break
    return out
