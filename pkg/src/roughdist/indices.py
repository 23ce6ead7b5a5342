"""Rough distribution index over the approximation pairs of rough objects.

Two rough objects contribute 0 when their approximation pairs coincide, 1
when both components differ, 1/pi when only the lower approximations
differ and 1/e when only the upper ones do.  The index is kept as integer
counts of each case, so values compare exactly; floats appear only when
rendering.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .granular import ApproximationPair

__all__ = [
    "NuValue",
    "SymbolicIndex",
    "RelativeIndex",
    "DegenerateDenominator",
    "nu",
    "iota",
    "iota_bruteforce",
    "iota_star",
]


class DegenerateDenominator(ZeroDivisionError):
    pass


class NuValue(enum.Enum):
    ZERO = "0"
    ONE = "1"
    INV_PI = "1/pi"
    INV_E = "1/e"

    @property
    def weight(self) -> float:
        return {"0": 0.0, "1": 1.0, "1/pi": 1 / math.pi, "1/e": 1 / math.e}[self.value]


def nu(a: ApproximationPair, b: ApproximationPair) -> NuValue:
    same_lower = a.lower == b.lower
    same_upper = a.upper == b.upper
    if same_lower and same_upper:
        return NuValue.ZERO
    if not same_lower and not same_upper:
        return NuValue.ONE
    if same_upper:
        return NuValue.INV_PI
    return NuValue.INV_E


def _render(c1, c_pi, c_e) -> str:
    value = float(c1) + float(c_pi) / math.pi + float(c_e) / math.e
    return f"{c1} + {c_pi}/pi + {c_e}/e = {value:.12f}"


@dataclass(frozen=True)
class SymbolicIndex:
    """Counts of ordered pairs per case; value = c1 + c_pi/pi + c_e/e."""

    c0: int = 0
    c1: int = 0
    c_pi: int = 0
    c_e: int = 0

    @property
    def pairs(self) -> int:
        return self.c0 + self.c1 + self.c_pi + self.c_e

    def __float__(self) -> float:
        return self.c1 + self.c_pi / math.pi + self.c_e / math.e

    numeric = __float__

    def __add__(self, other: SymbolicIndex) -> SymbolicIndex:
        return SymbolicIndex(self.c0 + other.c0, self.c1 + other.c1, self.c_pi + other.c_pi, self.c_e + other.c_e)

    @property
    def is_zero(self) -> bool:
        return self.c1 == self.c_pi == self.c_e == 0

    def render(self) -> str:
        return _render(self.c1, self.c_pi, self.c_e)


@dataclass(frozen=True)
class RelativeIndex:
    """Index divided by (n - k)**2, coefficients exact."""

    c1: Fraction
    c_pi: Fraction
    c_e: Fraction

    def __float__(self) -> float:
        return float(self.c1) + float(self.c_pi) / math.pi + float(self.c_e) / math.e

    numeric = __float__

    def render(self) -> str:
        return _render(self.c1, self.c_pi, self.c_e)


def iota(pairs: Iterable[ApproximationPair]) -> SymbolicIndex:
    """Sum of nu over all ordered pairs of rough objects, diagonal included.

    Computed from group sizes rather than a double loop: with N objects,
    ``same_l`` ordered pairs sharing the lower approximation, ``same_u``
    sharing the upper one and ``same`` sharing both, the counts follow by
    inclusion-exclusion.
    """
    pairs = list(pairs)
    n = len(pairs)
    by_pair = Counter((p.lower, p.upper) for p in pairs)
    by_lower = Counter(p.lower for p in pairs)
    by_upper = Counter(p.upper for p in pairs)
    same = sum(v * v for v in by_pair.values())
    same_l = sum(v * v for v in by_lower.values())
    same_u = sum(v * v for v in by_upper.values())
    return SymbolicIndex(
        c0=same,
        c1=n * n - same_l - same_u + same,
        c_pi=same_u - same,
        c_e=same_l - same,
    )


def iota_bruteforce(pairs: Sequence[ApproximationPair]) -> SymbolicIndex:
    """Direct double loop over ordered pairs; reference for :func:`iota`."""
    tally = Counter(nu(a, b) for a in pairs for b in pairs)
    return SymbolicIndex(tally[NuValue.ZERO], tally[NuValue.ONE], tally[NuValue.INV_PI], tally[NuValue.INV_E])


def iota_star(index: SymbolicIndex, n: int, k: int) -> RelativeIndex:
    if n == k:
        raise DegenerateDenominator("n - k = 0")
    if n < k:
        raise ValueError("n must exceed k")
    d = (n - k) ** 2
    return RelativeIndex(Fraction(index.c1, d), Fraction(index.c_pi, d), Fraction(index.c_e, d))
