"""Feasibility of crisp/rough object counts on chains of crisp objects.

Given the total number ``n`` of objects, which counts ``k`` of crisp objects
are compatible with the rough objects being represented by pairs of crisp
objects?  Four scenarios are handled:

* ``Case0``: every ordered pair of crisp objects, diagonal included,
  represents exactly one rough object, so ``n - k = k**2``.
* ``Case1``: off-diagonal pairs only, so ``n - k = k**2 - k`` and ``n``
  must be a perfect square.
* ``Case1PowerSet``: as Case1 with ``n = 2**x`` the size of a power set.
* ``Case2``: only a fraction ``pi`` of the off-diagonal pairs is used,
  ``n - k = pi * (k**2 - k)`` with ``0 < pi <= alpha``.

Everything is exact (``int`` and ``Fraction``); there is no floating point
in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable

__all__ = [
    "CASES",
    "FeasibilityError",
    "DegenerateRange",
    "InvalidConfig",
    "FeasibilityQuery",
    "KEntry",
    "FeasibilityReport",
    "AlphaEntry",
    "AlphaSearchConfig",
    "RefineResult",
    "REPORTED_POWERSET_MODELS",
    "case0_k",
    "case1_k",
    "case1_powerset_models",
    "case2_k_range",
    "case2_admissible_ks",
    "case2_k_from_pi",
    "case2_count_values",
    "alpha_scan",
    "alpha_refine",
    "target_comparator",
    "solution_comparator",
    "solve",
    "as_fraction",
]

CASES = ("Case0", "Case1", "Case1PowerSet", "Case2")

# Count of power-set models for n <= 10**8 quoted in the source material.
# Exact enumeration disagrees; both are reported, neither is adjusted.
REPORTED_POWERSET_MODELS = {10**8: 27}


class FeasibilityError(ValueError):
    pass


class DegenerateRange(FeasibilityError):
    pass


class InvalidConfig(FeasibilityError):
    pass


def as_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction or ``"P/Q"`` string.

    Floats and decimal strings are rejected.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"{value!r}: use P/Q notation, decimals are not exact")
        return Fraction(text)
    raise TypeError(f"{type(value).__name__} is not an exact rational")


def _check_unit(name: str, value: Fraction) -> Fraction:
    value = as_fraction(value)
    if not 0 < value <= 1:
        raise FeasibilityError(f"{name} must lie in (0, 1], got {value}")
    return value


def _floor_sqrt(x: Fraction) -> int:
    # floor(sqrt(x)) == isqrt(floor(x)) for x >= 0
    return isqrt(x.numerator // x.denominator)


@dataclass(frozen=True)
class FeasibilityQuery:
    case: str
    n: int
    alpha: Fraction | None = None
    pi: Fraction | None = None

    def __post_init__(self):
        if self.case not in CASES:
            raise FeasibilityError(f"unknown case {self.case!r}")
        if self.n < 1:
            raise FeasibilityError("n must be positive")
        for name in ("alpha", "pi"):
            v = getattr(self, name)
            if v is not None:
                if self.case != "Case2":
                    raise FeasibilityError(f"{name} only applies to Case2")
                object.__setattr__(self, name, _check_unit(name, v))


@dataclass(frozen=True)
class KEntry:
    k: int
    pi: Fraction | None
    rough_count: int


@dataclass(frozen=True)
class FeasibilityReport:
    """Admissible crisp counts for one query.

    For Case2, ``admissible`` holds the k in the range whose exact fraction
    ``pi(k) = (n-k)/(k**2-k)`` lies in (0, alpha]; ``candidates`` holds every
    k of the range {2, ..., floor(sqrt(n/alpha))} with its pi(k), which is
    the count plotted for the fraction-of-pairs scenario; ``trimmed``
    restricts ``admissible`` to k <= floor(sqrt(n)).
    """

    case: str
    n: int
    admissible: tuple[KEntry, ...]
    infeasible_reason: str | None
    bounds_used: tuple[int, int]
    alpha: Fraction | None = None
    candidates: tuple[KEntry, ...] = ()
    trimmed: tuple[KEntry, ...] = ()

    @property
    def feasible(self) -> bool:
        return bool(self.admissible)

    @property
    def ks(self) -> list[int]:
        return [e.k for e in self.admissible]


# --------------------------------------------------------------------------
# Case 0 and Case 1


def case0_k(n: int) -> int | None:
    """k with n = k**2 + k, i.e. k = (sqrt(1 + 4n) - 1) / 2 when integral."""
    if n < 1:
        raise FeasibilityError("n must be positive")
    d = 1 + 4 * n
    s = isqrt(d)
    if s * s != d:
        return None
    # d is odd, so s is odd and (s - 1) / 2 is an integer >= 1
    return (s - 1) // 2


def case1_k(n: int) -> int | None:
    """k with n - k = k**2 - k, which forces n = k**2."""
    if n < 1:
        raise FeasibilityError("n must be positive")
    s = isqrt(n)
    return s if s * s == n else None


def case1_powerset_models(n_bound: int) -> list[tuple[int, int, int]]:
    """All (x, k, n) with n = 2**x = k**2 and n <= n_bound."""
    if n_bound < 1:
        raise FeasibilityError("n_bound must be positive")
    out = []
    x = 0
    while 1 << x <= n_bound:
        n = 1 << x
        k = isqrt(n)
        if k * k == n:
            out.append((x, k, n))
        x += 1
    return out


# --------------------------------------------------------------------------
# Case 2


def _pi_of(n: int, k: int) -> Fraction:
    return Fraction(n - k, k * k - k)


def case2_k_range(n: int, alpha) -> tuple[int, int]:
    """The candidate range (2, floor(sqrt(n/alpha)))."""
    alpha = _check_unit("alpha", alpha)
    return 2, _floor_sqrt(Fraction(n) / alpha)


def case2_admissible_ks(n: int, alpha) -> FeasibilityReport:
    if n < 3:
        raise FeasibilityError("Case2 needs n >= 3")
    alpha = _check_unit("alpha", alpha)
    lo, hi = case2_k_range(n, alpha)
    if hi < lo:
        raise DegenerateRange(f"k range {lo}..{hi} is empty")
    root = isqrt(n)
    candidates = tuple(KEntry(k, _pi_of(n, k), n - k) for k in range(lo, hi + 1))
    admissible = tuple(e for e in candidates if 0 < e.pi <= alpha)
    trimmed = tuple(e for e in admissible if e.k <= root)
    reason = None if admissible else f"no k in {lo}..{hi} has 0 < (n-k)/(k^2-k) <= {alpha}"
    return FeasibilityReport(
        "Case2", n, admissible, reason, (lo, hi), alpha=alpha, candidates=candidates, trimmed=trimmed
    )


def case2_k_from_pi(n: int, pi) -> list[int]:
    """Positive integer roots k of n - k = pi * (k**2 - k).

    With pi = p/q the equation is p*k**2 + (q - p)*k - q*n = 0; the root is
    ((pi - 1) + sqrt((1 - pi)**2 + 4*n*pi)) / (2*pi), taken only when the
    discriminant is a perfect square and the division is exact.
    """
    if n < 3:
        raise FeasibilityError("Case2 needs n >= 3")
    pi = _check_unit("pi", pi)
    p, q = pi.numerator, pi.denominator
    b = q - p
    disc = b * b + 4 * p * q * n
    s = isqrt(disc)
    if s * s != disc:
        return []
    out = []
    for num in (-b + s, -b - s):
        if num > 0 and num % (2 * p) == 0:
            k = num // (2 * p)
            if n - k == pi * (k * k - k):
                out.append(k)
    return sorted(out)


def case2_count_values(n: int, pi, trimmed: bool = False, strict: bool = False) -> int:
    """Number of candidate k in {2, ..., floor(sqrt(n/pi))}.

    ``trimmed`` also imposes k <= floor(sqrt(n)).  ``strict`` counts only
    the k of that range that solve n - k = pi * (k**2 - k) exactly.
    """
    if n < 3:
        raise FeasibilityError("Case2 needs n >= 3")
    pi = _check_unit("pi", pi)
    hi = _floor_sqrt(Fraction(n) / pi)
    if trimmed:
        hi = min(hi, isqrt(n))
    if strict:
        return sum(1 for k in case2_k_from_pi(n, pi) if 2 <= k <= hi)
    return max(0, hi - 1)


# --------------------------------------------------------------------------
# the two alpha algorithms


@dataclass(frozen=True)
class AlphaEntry:
    k: int
    alpha: Fraction
    admissible: bool


def alpha_scan(n: int, k_range: str = "theorem") -> list[AlphaEntry]:
    """Exact alpha_k = (n - k)/(k**2 - k) for each candidate k.

    ``k_range="theorem"`` scans 2..floor(sqrt(n)); ``"algorithm"`` scans the
    k with k < sqrt(n - 1).  An entry is admissible when alpha_k is in (0, 1].
    """
    if k_range == "theorem":
        hi = isqrt(n) if n >= 0 else 0
    elif k_range == "algorithm":
        hi = isqrt(n - 2) if n >= 2 else 0  # k**2 < n - 1
    else:
        raise ValueError(f"unknown k_range {k_range!r}")
    if hi < 2:
        raise DegenerateRange(f"no k >= 2 in the {k_range} range for n = {n}")
    out = []
    for k in range(2, hi + 1):
        a = _pi_of(n, k)
        out.append(AlphaEntry(k, a, 0 < a <= 1))
    return out


@dataclass(frozen=True)
class AlphaSearchConfig:
    grid_n: int = 10
    epsilon: Fraction = Fraction(1, 10**6)
    max_rounds: int = 50

    def __post_init__(self):
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if self.grid_n < 2:
            raise InvalidConfig("grid_n must be at least 2")
        if self.epsilon <= 0:
            raise InvalidConfig("epsilon must be positive")
        if self.max_rounds < 1:
            raise InvalidConfig("max_rounds must be positive")


@dataclass(frozen=True)
class RefineResult:
    alpha: Fraction | None
    rounds: int
    bracket: tuple[Fraction, Fraction]
    exact: bool = False
    history: tuple[tuple[Fraction, Fraction], ...] = field(default=(), repr=False)

    @property
    def found(self) -> bool:
        return self.alpha is not None


def target_comparator(target) -> Callable[[Fraction], int]:
    target = as_fraction(target)
    return lambda a: (a > target) - (a < target)


def solution_comparator(n: int, k: int) -> Callable[[Fraction], int]:
    """Sign of alpha*(k**2 - k) - (n - k): zero exactly at the Case2 solution for k."""
    slots = k * k - k
    return lambda a: (a * slots > n - k) - (a * slots < n - k)


def alpha_refine(compare: Callable[[Fraction], int], config: AlphaSearchConfig | None = None) -> RefineResult:
    """Grid refinement over (0, 1].

    ``compare(a)`` is negative when the sought alpha lies above ``a``, zero
    when ``a`` is a solution and positive when it lies below.  Each round
    lays ``grid_n`` equal steps over the current bracket; a grid point with
    ``compare == 0`` ends the search exactly, otherwise the search moves into
    the sub-interval where the sign changes.  Once the bracket is no wider
    than ``epsilon`` its midpoint is returned.  Returns ``alpha=None`` when
    no sign change is seen or ``max_rounds`` runs out.
    """
    config = config or AlphaSearchConfig()
    lo, hi = Fraction(0), Fraction(1)
    history = []
    for rnd in range(1, config.max_rounds + 1):
        step = (hi - lo) / config.grid_n
        points = [lo + i * step for i in range(config.grid_n + 1)]
        signs = []
        for p in points:
            if p == 0:
                signs.append(-1)  # alpha = 0 is never a solution
                continue
            s = compare(p)
            if s == 0:
                return RefineResult(p, rnd, (p, p), True, tuple(history))
            signs.append(s)
        bracket = next(
            ((points[i], points[i + 1]) for i in range(config.grid_n) if signs[i] < 0 < signs[i + 1]),
            None,
        )
        if bracket is None:
            return RefineResult(None, rnd, (lo, hi), False, tuple(history))
        lo, hi = bracket
        history.append(bracket)
        if hi - lo <= config.epsilon:
            return RefineResult((lo + hi) / 2, rnd, bracket, False, tuple(history))
    return RefineResult(None, config.max_rounds, (lo, hi), False, tuple(history))


# --------------------------------------------------------------------------


def solve(query: FeasibilityQuery) -> FeasibilityReport:
    """Dispatch a Case0, Case1 or Case2 query to its solver."""
    n = query.n
    if query.case == "Case0":
        k = case0_k(n)
        entries = () if k is None else (KEntry(k, None, n - k),)
        reason = None if entries else "1+4n not a perfect square"
        return FeasibilityReport("Case0", n, entries, reason, (1, n))
    if query.case == "Case1":
        k = case1_k(n)
        entries = () if k is None else (KEntry(k, None, n - k),)
        reason = None if entries else "n not a perfect square"
        return FeasibilityReport("Case1", n, entries, reason, (1, n))
    if query.case == "Case2":
        if query.pi is not None:
            ks = case2_k_from_pi(n, query.pi)
            bound = isqrt(n)
            entries = tuple(KEntry(k, query.pi, n - k) for k in ks)
            reason = None if entries else f"n - k = {query.pi}(k^2 - k) has no positive integer root"
            return FeasibilityReport("Case2", n, entries, reason, (2, max(bound, *ks) if ks else bound))
        return case2_admissible_ks(n, query.alpha if query.alpha is not None else Fraction(1))
    raise FeasibilityError("power-set models are enumerated with case1_powerset_models")
