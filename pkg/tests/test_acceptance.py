"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary under "acceptance criteria".
"""

import itertools
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from expdensity.census import count_members, empirical_density_check
from expdensity.coefficients import (
    LN2_UPPER,
    M_explicit,
    M_recursive,
    PartitionVector,
    enumerate_partitions_min2,
    f_partition,
    f_recursive,
    t_coefficient,
)
from expdensity.density import density_euler_truncated, density_hybrid
from expdensity.exponent_set import VSeq, make_set, v_seq
from expdensity.numerics import bits_for_digits, zeta

from conftest import ACCEPTANCE_LINES, PRESET_SPECS, random_masks

CORPUS = PRESET_SPECS + random_masks(100)


@pytest.fixture
def record(request):
    name = request.node.name

    def _record(ok, detail=""):
        ACCEPTANCE_LINES.append(f"{name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, detail

    return _record


def _cli(*argv):
    t0 = time.perf_counter()
    res = subprocess.run([sys.executable, "-m", "expdensity", *argv], capture_output=True, text=True)
    return res, time.perf_counter() - t0


def _paper_constant(record, spec, expected):
    res, dt = _cli("density", "--set", spec, "--digits", "20")
    out = res.stdout.strip()
    with mpmath.workprec(200):
        delta = abs(mpf(out) - mpf(expected))
        ok = res.returncode == 0 and delta <= mpf(10) ** -19 and dt < 5
    record(ok, f"h = {out}, |delta| = {mpmath.nstr(delta, 3)}, {dt:.2f} s")


def test_c01_squarefree_density(record):
    _paper_constant(record, "preset:squarefree", "0.95592301586190237688")


def test_c02_pow2_density(record):
    _paper_constant(record, "preset:pow2", "0.87249717935391281355")


def test_c03_primes1_density(record):
    _paper_constant(record, "preset:primes1", "0.94671933735527801046")


def test_c04_analytic_anchor(record):
    r = density_hybrid(make_set("preset:only1"), 30)
    prec = bits_for_digits(30)
    z2 = zeta(2, prec)
    with mpmath.workprec(prec):
        delta = abs(r.h.value - 1 / z2.value)
    a = density_hybrid(make_set("preset:all"), 30)
    ok = delta <= mpf(10) ** -28 and a.h.value == 1 and a.error_bound == 0
    record(ok, f"|h - 1/zeta(2)| = {mpmath.nstr(delta, 3)}; all -> {a.h_string(5)}")


def test_c05_dual_path_coefficients(record):
    t0 = time.perf_counter()
    mismatches = 0
    cauchy_bad = 0
    for spec in CORPUS:
        v = v_seq(make_set(spec), 25)
        f = f_recursive(v, 25)
        for n in range(2, 26):
            mismatches += f_partition(v, n) != f[n - 2]
            cauchy_bad += not abs(f[n - 2]) <= LN2_UPPER * n * 2**n
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and cauchy_bad == 0 and dt < 30
    record(ok, f"{len(CORPUS)} sets, mismatches {mismatches}, Cauchy violations {cauchy_bad}, {dt:.1f} s")


def test_c06_M_paths(record):
    bad = 0
    for spec in CORPUS:
        v = v_seq(make_set(spec), 20)
        M = M_recursive(v, 20)
        f = f_recursive(v, 20)
        bad += sum(M_explicit(v, n) != M[n - 2] for n in range(4, 21))
        bad += sum(n * (v[n] + M[n - 2]) != f[n - 2] for n in range(2, 21))
    printed_bad = 0
    for v2, v3, v4 in itertools.product((-1, 0, 1), repeat=3):
        v = VSeq.from_values((v2, v3, v4))
        M = M_recursive(v, 6)
        printed_bad += M[2] != Fraction(-(v2**2), 2)
        printed_bad += M[3] != -v2 * v3
        printed_bad += M[4] != -v2 * v4 - Fraction(v3**2, 2) + Fraction(v2**3, 3)
        printed_bad += M_explicit(v, 6) != M[4]
    record(bad == 0 and printed_bad == 0, f"corpus mismatches {bad}, printed-polynomial mismatches {printed_bad}/27 points")


def test_c07_partition_census(record):
    got = {p.b for p in enumerate_partitions_min2(6, 4)}
    three = got == {(1, 0, 1), (0, 2, 0), (3, 0, 0)}
    t_v2sq = t_coefficient(PartitionVector(4, (2,)))
    singles = all(t_coefficient(PartitionVector(m, (0,) * (m - 2) + (1,))) == m for m in range(2, 40))
    record(three and t_v2sq == -2 and singles, f"partitions(6, 4) = {sorted(got)}, t(v2^2) = {t_v2sq}")


def test_c08_cross_method(record):
    worst = mpf(0)
    ok = True
    euler_bounds = []
    for spec in PRESET_SPECS:
        s = make_set(spec)
        hy = density_hybrid(s, 20)
        eu = density_euler_truncated(s, 10**6, 20)
        with mpmath.workprec(200):
            diff = abs(hy.h.value - eu.h.value)
            ratio = diff / (hy.error_bound + eu.error_bound) if diff else mpf(0)
        ok &= bool(diff <= hy.error_bound + eu.error_bound)
        if spec != "preset:all":
            ok &= bool(eu.error_bound <= mpf(1.4e-6) * 1.1)
        euler_bounds.append(eu.error_bound)
        worst = max(worst, ratio)
    record(ok, f"max |diff|/bound = {mpmath.nstr(worst, 3)}, max euler bound {mpmath.nstr(max(euler_bounds), 3)}")


def test_c09_census(record):
    t0 = time.perf_counter()
    c = count_members(make_set("preset:only1"), 10**6).count
    dt = time.perf_counter() - t0
    # independent count of squarefree n <= x: sum_{d <= sqrt x} mu(d) floor(x / d^2)
    x = 10**6
    r = 1000
    mu = [1] * (r + 1)
    for p in range(2, r + 1):
        if all(p % q for q in range(2, int(p**0.5) + 1)):
            for k in range(p, r + 1, p):
                mu[k] = -mu[k]
            for k in range(p * p, r + 1, p * p):
                mu[k] = 0
    ref = sum(mu[d] * (x // (d * d)) for d in range(1, r + 1))
    c16 = count_members(make_set("preset:pow2"), 16).count
    checks = []
    for spec in PRESET_SPECS:
        s = make_set(spec)
        checks.append(empirical_density_check(s, 10**6, density_hybrid(s, 20).h).passed)
    ok = c == ref == 607926 and c16 == 15 and all(checks) and dt < 10
    record(ok, f"only1(1e6) = {c} (ref {ref}), pow2(16) = {c16}, empirical checks {sum(checks)}/5, {dt:.2f} s")


def test_c10_determinism_and_refinement(record):
    runs = [_cli("density", "--set", "preset:pow2", "--digits", "20", "--json")[0].stdout for _ in range(2)]
    same = runs[0] == runs[1] and bool(runs[0])
    ok = same
    for spec in PRESET_SPECS:
        s = make_set(spec)
        base = density_hybrid(s, 20)
        for other in (density_hybrid(s, 30), density_hybrid(s, 20, prime_cutoff=211)):
            with mpmath.workprec(200):
                diff = abs(other.h.value - base.h.value)
            ok &= bool(diff < base.error_bound or diff == base.error_bound == 0)
    record(ok, f"byte-identical runs: {same}; refinement D 20->30 and B 101->211 within bound")
