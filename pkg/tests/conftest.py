import random
from fractions import Fraction

import pytest

from expdensity.exponent_set import PRESETS, make_set

PRESET_SPECS = [f"preset:{name}" for name in PRESETS]


def random_masks(count=100, seed=20261016, max_len=30):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_len)
        out.append("mask:" + "".join(rng.choice("01") for _ in range(n)))
    return out


def log_series_oracle(v, N):
    """n * [x^n] log(1 + g(x)) for g = sum v_n x^n, by the Mercator series in Fractions.

    Independent of both production paths: raises g to powers directly.
    """
    g = [Fraction(0)] * (N + 1)
    for n in range(2, N + 1):
        g[n] = Fraction(v[n])
    out = [Fraction(0)] * (N + 1)
    power = [Fraction(1)] + [Fraction(0)] * N
    for m in range(1, N // 2 + 1):
        nxt = [Fraction(0)] * (N + 1)
        for i, a in enumerate(power):
            if a:
                for j in range(2, N + 1 - i):
                    if g[j]:
                        nxt[i + j] += a * g[j]
        power = nxt
        sign = 1 if m % 2 else -1
        for n in range(N + 1):
            out[n] += sign * power[n] / m
    return [n * out[n] for n in range(2, N + 1)]


@pytest.fixture(params=PRESET_SPECS)
def preset(request):
    return make_set(request.param)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
