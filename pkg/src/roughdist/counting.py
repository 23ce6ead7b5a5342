"""Exact model counts for rough objects distributed over crisp pairs.

A chain of ``k`` crisp objects has ``k**2 - k`` ordered off-diagonal pairs
("slots").  Rough objects are indistinguishable; a distribution is a load
vector over the slots.  All counts are Python integers.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb, prod
from typing import Iterator

from .poset import FinitePoset, disjoint_chain_cover

__all__ = [
    "CountingError",
    "InvalidSegment",
    "NoBounds",
    "PartitionConstraint",
    "CountReport",
    "ChainCoverCount",
    "bounded_compositions",
    "composition_count",
    "composition_count_closed_form",
    "bounded_partitions",
    "bounded_model_count",
    "multiset_count",
    "chain_distribution_count",
    "branched_chain_count",
    "comparable_slots",
    "chain_cover_model_count",
    "placement_oracle",
]


class CountingError(ValueError):
    pass


class InvalidSegment(CountingError):
    pass


class NoBounds(CountingError):
    pass


@dataclass(frozen=True)
class PartitionConstraint:
    """Split ``r`` rough objects over ``g`` slots with every load in [a, b]."""

    r: int
    g: int
    a: int
    b: int

    def __post_init__(self):
        if self.r < 0 or self.a < 0 or self.b < 0:
            raise CountingError("r, a, b must be nonnegative")
        if self.g < 1:
            raise CountingError("g must be positive")
        if self.a > self.b:
            raise CountingError(f"lower load bound {self.a} exceeds upper bound {self.b}")

    @classmethod
    def for_chain(cls, r: int, k: int, a: int, b: int) -> PartitionConstraint:
        return cls(r, k * k - k, a, b)

    @property
    def feasible(self) -> bool:
        return self.g * self.a <= self.r <= self.g * self.b


@dataclass(frozen=True)
class CountReport:
    B: int
    n_o: int
    lower: int
    upper: int
    zero_parts: bool = False  # a == 0: compositions with a zero part add nothing to B
    unordered: bool = False

    def __post_init__(self):
        if not self.lower <= self.B <= self.upper:
            raise AssertionError(f"bounds violated: {self.lower} <= {self.B} <= {self.upper}")

    def __str__(self):
        return f"n_o={self.n_o} B={self.B} bounds=[{self.lower},{self.upper}]"


# --------------------------------------------------------------------------
# compositions


def bounded_compositions(c: PartitionConstraint) -> Iterator[tuple[int, ...]]:
    """Length-g sequences with sum r and parts in [a, b], in lexicographic order."""
    if not c.feasible:
        return

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 0:
            if left == 0:
                yield tuple(prefix)
            return
        rest = slots - 1
        lo = max(c.a, left - rest * c.b)
        hi = min(c.b, left - rest * c.a)
        for v in range(lo, hi + 1):
            prefix.append(v)
            yield from rec(prefix, left - v, rest)
            prefix.pop()

    yield from rec([], c.r, c.g)


def bounded_partitions(c: PartitionConstraint) -> Iterator[tuple[int, ...]]:
    """Non-increasing sequences (multisets of parts) with the same constraints."""
    if not c.feasible:
        return

    def rec(prefix: list[int], left: int, slots: int, cap: int):
        if slots == 0:
            if left == 0:
                yield tuple(prefix)
            return
        rest = slots - 1
        hi = min(cap, left - rest * c.a)
        lo = max(c.a, -(-left // slots))  # largest part is at least the mean
        for v in range(hi, lo - 1, -1):
            prefix.append(v)
            yield from rec(prefix, left - v, rest, v)
            prefix.pop()

    yield from rec([], c.r, c.g, c.b)


def _weighted_count(c: PartitionConstraint, weight) -> int:
    """Sum over compositions of prod(weight(part)), by convolution over slots."""
    row = [0] * (c.r + 1)
    row[0] = 1
    for _ in range(c.g):
        nxt = [0] * (c.r + 1)
        for t, val in enumerate(row):
            if val:
                for v in range(c.a, min(c.b, c.r - t) + 1):
                    nxt[t + v] += val * weight(v)
        row = nxt
    return row[c.r]


def composition_count(c: PartitionConstraint) -> int:
    return _weighted_count(c, lambda v: 1)


def composition_count_closed_form(c: PartitionConstraint) -> int:
    """Inclusion-exclusion over slots whose shifted load exceeds b - a."""
    top = c.r - c.g * c.a
    if top < 0 or c.r > c.g * c.b:
        return 0
    span = c.b - c.a + 1
    total = 0
    for j in range(c.g + 1):
        rest = top - j * span
        if rest < 0:
            break
        total += (-1) ** j * comb(c.g, j) * comb(rest + c.g - 1, c.g - 1)
    return total


def bounded_model_count(c: PartitionConstraint, unordered: bool = False) -> CountReport:
    """B = sum over admissible compositions of the product of their parts.

    With ``unordered`` the sum runs over partitions (slots treated as
    interchangeable) instead of compositions.
    """
    if unordered:
        parts = list(bounded_partitions(c))
        n_o = len(parts)
        B = sum(prod(p) for p in parts)
    else:
        n_o = composition_count(c)
        B = _weighted_count(c, lambda v: v)
    return CountReport(B, n_o, n_o * c.a**c.g, n_o * c.b**c.g, zero_parts=c.a == 0, unordered=unordered)


# --------------------------------------------------------------------------
# chains


def multiset_count(slots: int, objects: int) -> int:
    """Ways to put ``objects`` indistinguishable objects into ``slots`` slots."""
    if objects < 0 or slots < 0:
        raise CountingError("counts must be nonnegative")
    if slots == 0:
        return 1 if objects == 0 else 0
    return comb(objects + slots - 1, objects)


def chain_distribution_count(pi_count: int, alpha_len: int) -> int:
    """Distributions of ``pi_count`` rough objects over a chain of ``alpha_len`` crisp objects."""
    if alpha_len < 1:
        raise CountingError("a chain has at least one element")
    return multiset_count(alpha_len * alpha_len - alpha_len, pi_count)


def branched_chain_count(pi_count: int, alpha_len: int, alpha_o_len: int) -> int:
    """n(pi, alpha) - n(pi, alpha_o) for a chain segment cut at a branching point."""
    if not 1 <= alpha_o_len <= alpha_len:
        raise InvalidSegment(f"segment length {alpha_o_len} not in 1..{alpha_len}")
    return chain_distribution_count(pi_count, alpha_len) - chain_distribution_count(pi_count, alpha_o_len)


def comparable_slots(poset: FinitePoset) -> list[tuple]:
    """Ordered pairs (a, b) of distinct comparable elements, in element order."""
    el = poset.elements
    strict = poset.strict_table()
    comp = strict | strict.T
    return [(el[i], el[j]) for i in range(len(el)) for j in range(len(el)) if comp[i, j]]


@dataclass(frozen=True)
class ChainCoverCount:
    total: int
    width: int
    chains: tuple[tuple, ...]
    slots_per_chain: tuple[int, ...]
    n_o: int | None = None
    lower: int | None = None
    upper: int | None = None

    @property
    def slots(self) -> int:
        return sum(self.slots_per_chain)

    def __str__(self):
        s = f"w={self.width} slots={list(self.slots_per_chain)} count={self.total}"
        if self.n_o is not None:
            s += f" n_o={self.n_o} bounds=[{self.lower},{self.upper}]"
        return s


def _convolve(a: list[int], b: list[int], r: int) -> list[int]:
    out = [0] * (r + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(r + 1 - i):
                out[i + j] += x * b[j]
    return out


def chain_cover_model_count(
    poset: FinitePoset, r: int, bounds: tuple[int, int] | None = None
) -> ChainCoverCount:
    """Count distributions of ``r`` rough objects over the crisp poset.

    The poset is cut into a minimum disjoint chain cover, with the chain
    through the bottom element first.  A slot (a, b) on two chains belongs
    to the later chain, so the first chain keeps exactly its own
    ``len**2 - len`` slots and no slot is counted twice.  The total sums,
    over all ways to split ``r`` into ``w`` ordered parts, the product of
    the per-chain counts.  Without ``bounds`` a per-chain count is a
    multiset coefficient; with ``bounds=(a, b)`` it is the bounded model
    count B over the chain's slots.
    """
    if r < 0:
        raise CountingError("r must be nonnegative")
    bottom, top = poset.bottom(), poset.top()
    if bottom is None or top is None:
        raise NoBounds("crisp poset needs a least and a greatest element")
    cover = disjoint_chain_cover(poset)
    chains = sorted(cover.chains, key=lambda ch: bottom not in ch.members)
    owner = {x: i for i, ch in enumerate(chains) for x in ch.members}
    slots = [0] * len(chains)
    for a, b in comparable_slots(poset):
        slots[max(owner[a], owner[b])] += 1

    def per_chain(s: int, weighted: bool) -> list[int]:
        if bounds is None:
            return [multiset_count(s, t) for t in range(r + 1)]
        lo, hi = bounds
        out = []
        for t in range(r + 1):
            if s == 0:
                out.append(1 if t == 0 else 0)
                continue
            c = PartitionConstraint(t, s, lo, hi)
            out.append(bounded_model_count(c).B if weighted else composition_count(c))
        return out

    acc = [1] + [0] * r
    for s in slots:
        acc = _convolve(acc, per_chain(s, True), r)
    total = acc[r]
    members = tuple(ch.members for ch in chains)
    if bounds is None:
        return ChainCoverCount(total, len(chains), members, tuple(slots))
    acc = [1] + [0] * r
    for s in slots:
        acc = _convolve(acc, per_chain(s, False), r)
    n_o = acc[r]
    g = sum(slots)
    lo, hi = bounds
    return ChainCoverCount(total, len(chains), members, tuple(slots), n_o, n_o * lo**g, n_o * hi**g)


def placement_oracle(poset: FinitePoset, r: int, bounds: tuple[int, int] | None = None) -> int:
    """Brute-force count over all multisets of ``r`` comparable slots.

    With ``bounds=(a, b)`` every slot load must lie in [a, b] and each
    placement contributes the product of its loads.
    """
    slots = comparable_slots(poset)
    if bounds is None:
        return sum(1 for _ in itertools.combinations_with_replacement(range(len(slots)), r))
    lo, hi = bounds
    total = 0
    for placement in itertools.combinations_with_replacement(range(len(slots)), r):
        loads = Counter(placement)
        vector = [loads.get(i, 0) for i in range(len(slots))]
        if all(lo <= v <= hi for v in vector):
            total += prod(vector)
    return total
