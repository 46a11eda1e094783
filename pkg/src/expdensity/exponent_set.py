"""Exponent sets S and their characteristic sequences.

A set is described by a short spec string::

    preset:<name>      name in all, only1, squarefree, pow2, primes1
    list:1,2,5         finite list, strictly increasing, must contain 1
    mask:0110          bit i (0-based) gives u(i + 2); u(n) = 0 past the mask

``u(n)`` is the characteristic function of S and ``v_n = u(n) - u(n - 1)``
for n >= 2 are the coefficients of the local Euler factor
``F_S(x) = 1 + sum v_n x^n``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Optional, Sequence

from .errors import SetSpecError

PRESETS = {
    "all": "every positive integer",
    "only1": "S = {1} (squarefree numbers)",
    "squarefree": "squarefree exponents 1, 2, 3, 5, 6, 7, 10, ...",
    "pow2": "powers of two 1, 2, 4, 8, ...",
    "primes1": "1 and the primes",
}

_LIST_RE = re.compile(r"^[0-9]+(,[0-9]+)*$")
_MASK_RE = re.compile(r"^[01]+$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _is_squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


_PRESET_FUNCS = {
    "all": lambda n: True,
    "only1": lambda n: n == 1,
    "squarefree": _is_squarefree,
    "pow2": _is_power_of_two,
    "primes1": lambda n: n == 1 or _is_prime(n),
}


@dataclass(frozen=True)
class ExponentSet:
    """An admissible exponent set (always contains 1). Immutable."""

    kind: str
    preset_name: Optional[str] = None
    members: Optional[tuple[int, ...]] = None
    mask_bits: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind == "preset":
            if self.preset_name not in _PRESET_FUNCS:
                raise SetSpecError(f"unknown preset {self.preset_name!r}")
        elif self.kind == "finite-list":
            m = self.members
            if not m or m[0] != 1:
                raise SetSpecError("a finite list must contain 1")
            if any(a >= b for a, b in zip(m, m[1:])):
                raise SetSpecError("list members must be strictly increasing")
        elif self.kind == "mask":
            if not self.mask_bits or any(b not in (0, 1) for b in self.mask_bits):
                raise SetSpecError("mask must be a non-empty bit sequence")
        else:
            raise SetSpecError(f"unknown set kind {self.kind!r}")

    def u(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"u(n) is defined for n >= 1, got {n}")
        if n == 1:
            return 1
        if self.kind == "preset":
            return int(_PRESET_FUNCS[self.preset_name](n))
        if self.kind == "finite-list":
            return int(n in self.members)
        k = n - 2
        return self.mask_bits[k] if k < len(self.mask_bits) else 0

    def v(self, n: int) -> int:
        if n < 2:
            raise ValueError(f"v_n is defined for n >= 2, got {n}")
        return self.u(n) - self.u(n - 1)

    @property
    def is_all(self) -> bool:
        """True when S is every positive integer, so F_S is identically 1."""
        return self.kind == "preset" and self.preset_name == "all"

    @property
    def degree(self) -> Optional[int]:
        """Largest n with v_n != 0 when F_S is a polynomial, else None."""
        if self.kind == "preset":
            return 0 if self.is_all else None
        if self.kind == "finite-list":
            top = self.members[-1]
        else:
            ones = [i + 2 for i, b in enumerate(self.mask_bits) if b]
            top = ones[-1] if ones else 1
        # u drops to 0 right after the last member, so v_{top+1} = -1
        return top + 1

    @property
    def spec(self) -> str:
        if self.kind == "preset":
            return f"preset:{self.preset_name}"
        if self.kind == "finite-list":
            return "list:" + ",".join(map(str, self.members))
        return "mask:" + "".join(map(str, self.mask_bits))

    def __str__(self) -> str:
        return self.spec


@dataclass(frozen=True)
class VSeq:
    """v_2..v_N for one exponent set. ``vs[n]`` returns v_n."""

    values: tuple[int, ...]

    @property
    def N(self) -> int:
        return len(self.values) + 1

    def __getitem__(self, n: int) -> int:
        if not 2 <= n <= self.N:
            raise IndexError(f"v_{n} outside 2..{self.N}")
        return self.values[n - 2]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "VSeq":
        """Build from an explicit v_2, v_3, ... sequence (used for symbolic checks)."""
        return cls(tuple(int(x) for x in values))


def make_set(spec: str) -> ExponentSet:
    """Parse a set-spec string into an ExponentSet; raises SetSpecError."""
    if not isinstance(spec, str) or ":" not in spec:
        raise SetSpecError(f"malformed set spec {spec!r}")
    kind, _, body = spec.partition(":")
    if kind == "preset":
        if body not in PRESETS:
            raise SetSpecError(
                f"unknown preset {body!r}; choose from {', '.join(PRESETS)}"
            )
        return ExponentSet("preset", preset_name=body)
    if kind == "list":
        if not _LIST_RE.match(body):
            raise SetSpecError(f"malformed list {body!r}")
        members = tuple(int(t) for t in body.split(","))
        if any(m < 1 for m in members):
            raise SetSpecError("list members must be positive")
        if 1 not in members:
            raise SetSpecError("exponent set must contain 1")
        return ExponentSet("finite-list", members=members)
    if kind == "mask":
        if not _MASK_RE.match(body):
            raise SetSpecError(f"malformed mask {body!r}")
        return ExponentSet("mask", mask_bits=tuple(int(c) for c in body))
    raise SetSpecError(f"unknown set kind {kind!r} in {spec!r}")


def u(s: ExponentSet, n: int) -> int:
    return s.u(n)


def v_seq(s: ExponentSet, N: int) -> VSeq:
    """v_2..v_N computed from u."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    us = [s.u(n) for n in range(1, N + 1)]
    return VSeq(tuple(us[i] - us[i - 1] for i in range(1, N)))
