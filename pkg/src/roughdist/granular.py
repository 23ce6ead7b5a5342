"""Granular operator spaces over a finite universe.

Subsets are exchanged as frozensets.  Internally every subset is a bitmask
over the universe order, which keeps the exhaustive sweeps over the power
set cheap for universes of a dozen or so elements.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .poset import FinitePoset, validate

__all__ = [
    "GranularError",
    "NotAPartition",
    "ConventionMismatch",
    "EmptyScope",
    "UniverseTooLarge",
    "GranularOperatorSpace",
    "ApproximationPair",
    "RoughQuotient",
    "FrameworkInstance",
    "DefinitenessReport",
    "AxiomCheck",
    "SpaceReport",
    "AdmissibilityReport",
    "OracleResult",
    "pawlak_from_partition",
    "iter_set_partitions",
    "validate_space",
    "check_admissible_granulation",
    "classify_definiteness",
    "rough_quotient",
    "roughly_consistent_objects",
    "rough_objects_maximal",
    "definite_rough_objects",
    "is_roughly_consistent",
    "build_framework",
    "lower_definable_scope",
    "upper_definable_scope",
    "representation_count",
    "oracle_classify",
]

MAX_UNIVERSE = 24
ORACLE_MAX_UNIVERSE = 12


class GranularError(ValueError):
    pass


class NotAPartition(GranularError):
    pass


class ConventionMismatch(GranularError):
    pass


class EmptyScope(GranularError):
    pass


class UniverseTooLarge(GranularError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


class GranularOperatorSpace:
    """Universe, granulation and lower/upper approximation operators.

    The operators act on bitmasks; :meth:`lower` and :meth:`upper` are the
    frozenset-facing wrappers.  Build instances with
    :func:`pawlak_from_partition` or :meth:`from_tables`.
    """

    def __init__(
        self,
        universe: Sequence[Hashable],
        granulation: Iterable[Iterable],
        lower_mask: Callable[[int], int],
        upper_mask: Callable[[int], int],
    ):
        universe = tuple(universe)
        if len(set(universe)) != len(universe):
            raise GranularError("universe elements must be distinct")
        if len(universe) > MAX_UNIVERSE:
            raise UniverseTooLarge(f"universe has {len(universe)} elements, limit is {MAX_UNIVERSE}")
        self.universe = universe
        self._pos = {x: i for i, x in enumerate(universe)}
        grans = []
        for g in granulation:
            g = frozenset(g)
            if not g <= set(universe):
                raise GranularError(f"granule {sorted(g, key=repr)} is not inside the universe")
            if g not in grans:
                grans.append(g)
        self.granulation = tuple(grans)
        self._l = lower_mask
        self._u = upper_mask

    @classmethod
    def from_tables(
        cls,
        universe: Sequence[Hashable],
        granulation: Iterable[Iterable],
        lower: Mapping[frozenset, Iterable],
        upper: Mapping[frozenset, Iterable],
    ) -> GranularOperatorSpace:
        """Space given by explicit operator tables, total over the power set."""
        universe = tuple(universe)
        if len(universe) > MAX_UNIVERSE:
            raise UniverseTooLarge(f"universe has {len(universe)} elements, limit is {MAX_UNIVERSE}")
        pos = {x: i for i, x in enumerate(universe)}

        def mask(a):
            try:
                return sum(1 << pos[x] for x in a)
            except KeyError as exc:
                raise GranularError(f"element {exc.args[0]!r} is not in the universe") from None

        size = 1 << len(universe)
        tables = []
        for name, table in (("lower", lower), ("upper", upper)):
            arr = np.full(size, -1, dtype=np.int64)
            for a, b in table.items():
                arr[mask(a)] = mask(b)
            missing = np.nonzero(arr < 0)[0]
            if len(missing):
                raise GranularError(f"{name} table is not total: no entry for a subset of size {_popcount(int(missing[0]))}")
            tables.append(arr)
        lo, up = tables
        space = cls(universe, granulation, lambda m: int(lo[m]), lambda m: int(up[m]))
        return space

    # subsets <-> masks
    @property
    def full_mask(self) -> int:
        return (1 << len(self.universe)) - 1

    def mask(self, subset: Iterable) -> int:
        return sum(1 << self._pos[x] for x in subset)

    def subset(self, mask: int) -> frozenset:
        return frozenset(x for i, x in enumerate(self.universe) if mask >> i & 1)

    def masks(self) -> range:
        return range(1 << len(self.universe))

    def subsets(self) -> Iterator[frozenset]:
        return (self.subset(m) for m in self.masks())

    def lower(self, subset: Iterable) -> frozenset:
        return self.subset(self._l(self.mask(subset)))

    def upper(self, subset: Iterable) -> frozenset:
        return self.subset(self._u(self.mask(subset)))

    def pair(self, subset: Iterable) -> ApproximationPair:
        return ApproximationPair(self.lower(subset), self.upper(subset))

    def is_definite(self, subset: Iterable) -> bool:
        m = self.mask(subset)
        return self._l(m) == m == self._u(m)

    def __repr__(self):
        return f"GranularOperatorSpace(universe={list(self.universe)!r}, granules={len(self.granulation)})"


def _fmt(s: frozenset) -> str:
    return "{" + ",".join(str(x) for x in sorted(s, key=_sort_key)) + "}"


def _sort_key(x):
    return (0, x, "") if isinstance(x, (int, float)) else (1, 0, str(x))


@dataclass(frozen=True)
class ApproximationPair:
    lower: frozenset
    upper: frozenset

    def __post_init__(self):
        object.__setattr__(self, "lower", frozenset(self.lower))
        object.__setattr__(self, "upper", frozenset(self.upper))

    def __str__(self):
        return f"({_fmt(self.lower)}, {_fmt(self.upper)})"

    def __le__(self, other: ApproximationPair) -> bool:
        return self.lower <= other.lower and self.upper <= other.upper


def iter_set_partitions(items: Sequence) -> Iterator[list[frozenset]]:
    """All set partitions of ``items`` (Bell-number many)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in iter_set_partitions(rest):
        yield [frozenset([first])] + part
        for i in range(len(part)):
            yield part[:i] + [part[i] | {first}] + part[i + 1 :]


def pawlak_from_partition(universe: Sequence[Hashable], partition: Iterable[Iterable]) -> GranularOperatorSpace:
    """Classical approximation space of an equivalence relation.

    The lower approximation of A is the union of blocks inside A, the upper
    approximation the union of blocks meeting A.  Both are computed on
    demand, so no tables are materialised.
    """
    universe = tuple(universe)
    blocks = [frozenset(b) for b in partition]
    if any(not b for b in blocks):
        raise NotAPartition("empty block")
    covered = [x for b in blocks for x in b]
    if len(covered) != len(set(covered)):
        raise NotAPartition("blocks overlap")
    if set(covered) != set(universe):
        raise NotAPartition("blocks do not cover the universe exactly")
    pos = {x: i for i, x in enumerate(universe)}
    block_masks = [sum(1 << pos[x] for x in b) for b in blocks]

    def lower(m: int) -> int:
        out = 0
        for b in block_masks:
            if b & ~m == 0:
                out |= b
        return out

    def upper(m: int) -> int:
        out = 0
        for b in block_masks:
            if b & m:
                out |= b
        return out

    return GranularOperatorSpace(universe, blocks, lower, upper)


# --------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    witness: tuple = ()
    required: bool = True

    def __str__(self):
        status = "pass" if self.ok else "FAIL"
        extra = "" if self.ok else " witness " + " ".join(_fmt(w) for w in self.witness)
        note = "" if self.required else " (informational)"
        return f"{self.name}: {status}{extra}{note}"


@dataclass(frozen=True)
class SpaceReport:
    checks: tuple[AxiomCheck, ...]
    upper_fixed_iterates: int  # subsets with A^u == A^uu

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if c.required)

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _first(space, pred, arity=1):
    """First subset mask (or mask tuple) violating ``pred``, as frozensets."""
    for m in space.masks():
        if not pred(m):
            return (space.subset(m),)
    return ()


def _monotone_witness(space: GranularOperatorSpace, op) -> tuple:
    n = len(space.universe)
    for m in space.masks():
        fm = op(m)
        for i in range(n):
            if not m >> i & 1:
                bigger = m | 1 << i
                if fm & ~op(bigger):
                    return (space.subset(m), space.subset(bigger))
    return ()


def validate_space(space: GranularOperatorSpace) -> SpaceReport:
    """Check the operator axioms of a granular operator space.

    ``A^u <= A^uu`` is checked non-strictly; ``upper_fixed_iterates`` counts
    the subsets where it holds with equality.  ``A <= A^u`` is reported as
    an informational entry.
    """
    l, u = space._l, space._u
    full = space.full_mask
    checks = []

    def add(name, witness, required=True):
        checks.append(AxiomCheck(name, not witness, witness, required))

    add("lower_contained", _first(space, lambda m: l(m) & ~m == 0))
    add("lower_idempotent", _first(space, lambda m: l(l(m)) == l(m)))
    add("upper_iterate_increasing", _first(space, lambda m: u(m) & ~u(u(m)) == 0))
    add("lower_monotone", _monotone_witness(space, l))
    add("upper_monotone", _monotone_witness(space, u))
    add("empty_lower", () if l(0) == 0 else (frozenset(),))
    add("empty_upper", () if u(0) == 0 else (frozenset(),))
    add("full_lower", () if l(full) & ~full == 0 else (space.subset(full),))
    add("full_upper", () if u(full) & ~full == 0 else (space.subset(full),))
    add("upper_extensive", _first(space, lambda m: m & ~u(m) == 0), required=False)
    fixed = sum(1 for m in space.masks() if u(m) == u(u(m)))
    return SpaceReport(tuple(checks), fixed)


@dataclass(frozen=True)
class AdmissibilityReport:
    wra: AxiomCheck
    ls: AxiomCheck
    fu: AxiomCheck
    fu_strict: AxiomCheck

    @property
    def ok(self) -> bool:
        return self.wra.ok and self.ls.ok and self.fu.ok

    @property
    def checks(self) -> tuple[AxiomCheck, ...]:
        return (self.wra, self.ls, self.fu, self.fu_strict)


def check_admissible_granulation(space: GranularOperatorSpace) -> AdmissibilityReport:
    """WRA, LS and FU for the space's granulation.

    WRA uses finite unions of granules as the term operation: every lower
    and upper approximation must be the union of the granules it contains.
    FU asks for a definite common upper bound of every two granules; it is
    checked with ``x <= z`` and separately, as ``fu_strict``, with proper
    containment.
    """
    l, u = space._l, space._u
    grans = [space.mask(g) for g in space.granulation]

    def union_of_granules_inside(target: int) -> int:
        out = 0
        for g in grans:
            if g & ~target == 0:
                out |= g
        return out

    wra_w: tuple = ()
    for m in space.masks():
        if union_of_granules_inside(l(m)) != l(m) or union_of_granules_inside(u(m)) != u(m):
            wra_w = (space.subset(m),)
            break

    ls_w: tuple = ()
    for m in space.masks():
        lm = l(m)
        bad = next((g for g in grans if g & ~m == 0 and g & ~lm), None)
        if bad is not None:
            ls_w = (space.subset(bad), space.subset(m))
            break

    definite = [m for m in space.masks() if l(m) == m == u(m)]

    def fu_witness(strict: bool) -> tuple:
        for i, x in enumerate(grans):
            for y in grans[i:]:
                ok = any(
                    (x | y) & ~z == 0 and (not strict or (z != x and z != y)) for z in definite
                )
                if not ok:
                    return (space.subset(x), space.subset(y))
        return ()

    fu_w = fu_witness(False)
    fus_w = fu_witness(True)
    return AdmissibilityReport(
        AxiomCheck("WRA", not wra_w, wra_w),
        AxiomCheck("LS", not ls_w, ls_w),
        AxiomCheck("FU", not fu_w, fu_w),
        AxiomCheck("FU_strict", not fus_w, fus_w, required=False),
    )


# --------------------------------------------------------------------------
# definiteness


@dataclass(frozen=True)
class DefinitenessReport:
    lower_definite: bool
    upper_definite: bool
    definite: bool
    strongly_upper_definite: bool
    pre_strongly_upper_definite: bool
    upper_pre_definite: bool
    stabilization_index: int | None


def classify_definiteness(space: GranularOperatorSpace, subset: Iterable) -> DefinitenessReport:
    m = space.mask(subset)
    l, u = space._l, space._u
    lower_def = l(m) == m
    upper_def = u(m) == m
    # orbit A, A^u, A^uu, ... until a fixed point or a repeat
    orbit = [m]
    seen = {m: 0}
    index = None
    for _ in range(1 << len(space.universe)):
        nxt = u(orbit[-1])
        if nxt == orbit[-1]:
            index = len(orbit) - 1
            break
        if nxt in seen:
            break
        seen[nxt] = len(orbit)
        orbit.append(nxt)
    stabilizes = index is not None
    return DefinitenessReport(
        lower_definite=lower_def,
        upper_definite=upper_def,
        definite=lower_def and upper_def,
        strongly_upper_definite=upper_def and u(u(m)) == m,
        pre_strongly_upper_definite=upper_def and stabilizes,
        upper_pre_definite=stabilizes,
        stabilization_index=index,
    )


# --------------------------------------------------------------------------
# rough quotient


def _pair_key(space, lm: int, um: int):
    return (_popcount(lm) + _popcount(um), lm, um)


@dataclass(frozen=True)
class RoughQuotient:
    classes: tuple[tuple[ApproximationPair, tuple[frozenset, ...]], ...]
    order: FinitePoset
    bottom: ApproximationPair
    top: ApproximationPair

    def __len__(self):
        return len(self.classes)

    def members(self, pair: ApproximationPair) -> tuple[frozenset, ...]:
        for p, ms in self.classes:
            if p == pair:
                return ms
        raise KeyError(pair)


def _classes(space: GranularOperatorSpace) -> dict[tuple[int, int], list[int]]:
    groups: dict[tuple[int, int], list[int]] = {}
    for m in space.masks():
        groups.setdefault((space._l(m), space._u(m)), []).append(m)
    return groups


def rough_quotient(space: GranularOperatorSpace) -> RoughQuotient:
    """Rough-equality classes ordered by the basic rough order.

    Raises :class:`~roughdist.poset.PosetError` if the componentwise order
    fails to be a partial order, and :class:`GranularError` if (0,0) or
    (S^l, S^u) is not its bottom/top.
    """
    groups = _classes(space)
    keys = sorted(groups, key=lambda k: _pair_key(space, *k))
    pairs = [ApproximationPair(space.subset(lm), space.subset(um)) for lm, um in keys]
    table = [[a <= b for b in pairs] for a in pairs]
    order = validate(pairs, table)
    bottom = ApproximationPair(frozenset(), frozenset())
    full = space.full_mask
    top = ApproximationPair(space.subset(space._l(full)), space.subset(space._u(full)))
    if order.bottom() != bottom:
        raise GranularError(f"quotient has no bottom {bottom}")
    if order.top() != top:
        raise GranularError(f"quotient has no top {top}")
    classes = tuple(
        (p, tuple(space.subset(m) for m in groups[k])) for p, k in zip(pairs, keys)
    )
    return RoughQuotient(classes, order, bottom, top)


def roughly_consistent_objects(space: GranularOperatorSpace) -> list[frozenset]:
    """The maximal roughly consistent objects, i.e. the rough-equality classes.

    Every roughly consistent object is a nonempty subfamily of exactly one
    of these.
    """
    groups = _classes(space)
    keys = sorted(groups, key=lambda k: _pair_key(space, *k))
    return [frozenset(space.subset(m) for m in groups[k]) for k in keys]


def is_roughly_consistent(space: GranularOperatorSpace, family: Iterable[Iterable]) -> bool:
    pairs = {space.pair(a) for a in family}
    return len(pairs) <= 1


def rough_objects_maximal(space: GranularOperatorSpace) -> list[frozenset]:
    """Maximal roughly consistent objects whose members have A^l != A^u."""
    out = []
    for cls in roughly_consistent_objects(space):
        p = space.pair(next(iter(cls)))
        if p.lower != p.upper:
            out.append(cls)
    return out


def definite_rough_objects(space: GranularOperatorSpace) -> list[frozenset]:
    def stable(a):
        lo, up = space.lower(a), space.upper(a)
        return space.lower(lo) == lo and space.upper(up) == up

    return [cls for cls in rough_objects_maximal(space) if all(stable(a) for a in cls)]


# --------------------------------------------------------------------------
# crisp / rough framework


@dataclass(frozen=True)
class FrameworkInstance:
    """Crisp objects C, rough objects R and the representation map phi.

    ``all_objects`` is C followed by R.  Subsets that are neither crisp nor
    rough under the chosen convention are kept aside in ``unclassified``.
    """

    crisp: tuple[frozenset, ...]
    rough: tuple
    phi: Mapping
    convention: str
    unclassified: tuple[frozenset, ...] = ()
    allow_diagonal: bool = False

    @property
    def all_objects(self) -> tuple:
        return self.crisp + self.rough

    @property
    def n(self) -> int:
        return len(self.crisp) + len(self.rough)

    @property
    def k(self) -> int:
        return len(self.crisp)

    @property
    def rough_count(self) -> int:
        return len(self.rough)

    def pairs(self) -> list[ApproximationPair]:
        return [ApproximationPair(*self.phi[x]) for x in self.rough]


def build_framework(
    space: GranularOperatorSpace,
    convention: str = "nondefinite",
    phi: Mapping | None = None,
    allow_diagonal: bool = False,
) -> FrameworkInstance:
    """Split the power set into crisp and rough objects and check RO/CO/RC.

    ``convention`` is ``"nondefinite"`` (rough objects are subsets with
    A^l != A^u) or ``"maximal"`` (rough objects are maximal roughly
    consistent objects).  ``phi`` defaults to x -> (x^l, x^u); an explicit
    map must cover every rough object.  With ``allow_diagonal`` a pair
    (a, a) is accepted, as in the reflexive-pairs variant of the chain case.
    """
    crisp_masks = [m for m in space.masks() if space._l(m) == m == space._u(m)]
    crisp = tuple(space.subset(m) for m in crisp_masks)
    crisp_set = set(crisp)
    if convention == "nondefinite":
        rough_masks = [m for m in space.masks() if space._l(m) != space._u(m)]
        rough = tuple(space.subset(m) for m in rough_masks)
        default_phi = {space.subset(m): (space.subset(space._l(m)), space.subset(space._u(m))) for m in rough_masks}
        unclassified = tuple(
            space.subset(m) for m in space.masks() if space._l(m) == space._u(m) != m
        )
    elif convention == "maximal":
        rough = tuple(rough_objects_maximal(space))
        default_phi = {}
        for cls in rough:
            p = space.pair(next(iter(cls)))
            default_phi[cls] = (p.lower, p.upper)
        in_rough = {a for cls in rough for a in cls}
        unclassified = tuple(a for a in space.subsets() if a not in crisp_set and a not in in_rough)
    else:
        raise ValueError(f"unknown convention {convention!r}")

    mapping = dict(default_phi) if phi is None else dict(phi)
    for x in rough:
        if x in crisp_set:
            raise ConventionMismatch(f"object {x} is both crisp and rough")
        if x not in mapping:
            raise ConventionMismatch("phi is not defined on every rough object")
        a, b = (frozenset(v) for v in mapping[x])
        mapping[x] = (a, b)
        if a not in crisp_set or b not in crisp_set:
            raise ConventionMismatch(f"phi maps {x} outside the crisp objects: ({_fmt(a)}, {_fmt(b)})")
        if not (a < b or (allow_diagonal and a == b)):
            raise ConventionMismatch(f"phi({x}) = ({_fmt(a)}, {_fmt(b)}) is not a proper inclusion")
    return FrameworkInstance(crisp, rough, mapping, convention, unclassified, allow_diagonal)


# --------------------------------------------------------------------------
# definable scopes


def lower_definable_scope(x: Iterable, crisp: Iterable[Iterable]) -> frozenset:
    """Maximal crisp sets contained in ``x``."""
    x = frozenset(x)
    below = {frozenset(c) for c in crisp if frozenset(c) <= x}
    scope = frozenset(c for c in below if not any(c < d for d in below))
    if not scope:
        raise EmptyScope(f"no crisp object below {_fmt(x)}")
    return scope


def upper_definable_scope(x: Iterable, crisp: Iterable[Iterable]) -> frozenset:
    """Minimal crisp sets containing ``x``."""
    x = frozenset(x)
    above = {frozenset(c) for c in crisp if x <= frozenset(c)}
    scope = frozenset(c for c in above if not any(d < c for d in above))
    if not scope:
        raise EmptyScope(f"no crisp object above {_fmt(x)}")
    return scope


def representation_count(x: Iterable, crisp: Iterable[Iterable]) -> int:
    """Off-diagonal pairs in SL(x) x SU(x), the choices open to a representation of x."""
    crisp = [frozenset(c) for c in crisp]
    sl = lower_definable_scope(x, crisp)
    su = upper_definable_scope(x, crisp)
    return sum(1 for a in sl for b in su if a != b)


# --------------------------------------------------------------------------
# brute-force oracle


@dataclass(frozen=True)
class OracleResult:
    n: int
    k: int
    rough: int
    multiplicities: dict = field(default_factory=dict)


def oracle_classify(space: GranularOperatorSpace) -> OracleResult:
    """Classify every subset directly from the frozenset operators.

    Independent of the bitmask sweeps above: subsets are enumerated with
    itertools and compared as sets.
    """
    if len(space.universe) > ORACLE_MAX_UNIVERSE:
        raise UniverseTooLarge(
            f"oracle enumerates 2^{len(space.universe)} subsets; limit is 2^{ORACLE_MAX_UNIVERSE}"
        )
    n = k = rough = 0
    tally: Counter = Counter()
    for r in range(len(space.universe) + 1):
        for combo in itertools.combinations(space.universe, r):
            a = frozenset(combo)
            lo, up = space.lower(a), space.upper(a)
            n += 1
            if lo == a and up == a:
                k += 1
            elif lo != up:
                rough += 1
                tally[(lo, up)] += 1
    return OracleResult(n, k, rough, dict(tally))
