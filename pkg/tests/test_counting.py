import itertools
from math import comb, prod

import pytest
from hypothesis import given, strategies as st

from roughdist import counting
from roughdist.counting import (
    PartitionConstraint,
    bounded_compositions,
    bounded_model_count,
    bounded_partitions,
    branched_chain_count,
    chain_cover_model_count,
    chain_distribution_count,
    composition_count,
    composition_count_closed_form,
    multiset_count,
    placement_oracle,
)
from roughdist.poset import antichain_poset, boolean_lattice, chain_poset, from_pairs


@st.composite
def constraints(draw, max_r=12, max_g=5):
    g = draw(st.integers(1, max_g))
    a = draw(st.integers(0, 3))
    b = draw(st.integers(a, 5))
    r = draw(st.integers(0, max_r))
    return PartitionConstraint(r, g, a, b)


def brute_compositions(c):
    return [v for v in itertools.product(range(c.a, c.b + 1), repeat=c.g) if sum(v) == c.r]


# --- compositions -------------------------------------------------------------------


def test_composition_examples():
    assert list(bounded_compositions(PartitionConstraint(4, 2, 1, 3))) == [(1, 3), (2, 2), (3, 1)]
    assert list(bounded_compositions(PartitionConstraint(2, 2, 1, 1))) == [(1, 1)]
    assert list(bounded_compositions(PartitionConstraint(5, 2, 0, 2))) == []
    assert composition_count(PartitionConstraint(5, 2, 0, 2)) == 0


@given(constraints())
def test_compositions_match_brute_force(c):
    brute = brute_compositions(c)
    assert list(bounded_compositions(c)) == brute  # product() is already lexicographic
    assert composition_count(c) == composition_count_closed_form(c) == len(brute)


@given(constraints())
def test_partitions_are_sorted_compositions(c):
    expected = sorted({tuple(sorted(v, reverse=True)) for v in brute_compositions(c)}, reverse=True)
    assert list(bounded_partitions(c)) == expected


def test_constraint_validation():
    with pytest.raises(counting.CountingError):
        PartitionConstraint(3, 2, 3, 1)
    with pytest.raises(counting.CountingError):
        PartitionConstraint(3, 0, 0, 1)
    with pytest.raises(counting.CountingError):
        PartitionConstraint(-1, 2, 0, 1)
    assert PartitionConstraint.for_chain(5, 3, 0, 2).g == 6


# --- B ------------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "r, g, a, b, n_o, B, lower, upper",
    [(4, 2, 1, 3, 3, 10, 3, 27), (2, 2, 1, 1, 1, 1, 1, 1), (0, 3, 0, 0, 1, 0, 0, 0)],
)
def test_bounded_model_count_examples(r, g, a, b, n_o, B, lower, upper):
    rep = bounded_model_count(PartitionConstraint(r, g, a, b))
    assert (rep.n_o, rep.B, rep.lower, rep.upper) == (n_o, B, lower, upper)


def test_report_text():
    assert str(bounded_model_count(PartitionConstraint(4, 2, 1, 3))) == "n_o=3 B=10 bounds=[3,27]"


@given(constraints())
def test_B_matches_brute_force_and_bounds(c):
    brute = brute_compositions(c)
    rep = bounded_model_count(c)
    assert rep.B == sum(prod(v) for v in brute)
    assert rep.n_o * c.a**c.g <= rep.B <= rep.n_o * c.b**c.g


@given(constraints())
def test_unordered_count(c):
    rep = bounded_model_count(c, unordered=True)
    parts = {tuple(sorted(v)) for v in brute_compositions(c)}
    assert rep.n_o == len(parts)
    assert rep.B == sum(prod(p) for p in parts)


def test_zero_lower_bound_flag():
    rep = bounded_model_count(PartitionConstraint(3, 3, 0, 3))
    assert rep.zero_parts
    assert rep.B == 1  # only (1,1,1) has no zero part


# --- chains ------------------------------------------------------------------------------


def test_multiset_examples():
    assert chain_distribution_count(1, 2) == 2
    assert all(chain_distribution_count(0, a) == 1 for a in range(1, 8))
    assert chain_distribution_count(2, 2) == 3
    assert multiset_count(0, 0) == 1 and multiset_count(0, 3) == 0


@given(st.integers(0, 6), st.integers(1, 4))
def test_multiset_matches_enumeration(pi, alpha):
    slots = alpha * alpha - alpha
    brute = sum(1 for _ in itertools.combinations_with_replacement(range(slots), pi))
    assert chain_distribution_count(pi, alpha) == brute
    if slots:
        assert brute == comb(pi + slots - 1, pi)


def test_branched_examples():
    assert branched_chain_count(1, 2, 1) == 2
    assert branched_chain_count(2, 3, 2) == 18
    assert all(branched_chain_count(p, a, a) == 0 for p in range(6) for a in range(1, 6))
    with pytest.raises(counting.InvalidSegment):
        branched_chain_count(1, 2, 3)
    with pytest.raises(counting.InvalidSegment):
        branched_chain_count(1, 2, 0)


@given(st.integers(0, 8), st.integers(1, 8), st.data())
def test_branched_is_nonnegative(pi, alpha, data):
    alpha_o = data.draw(st.integers(1, alpha))
    assert branched_chain_count(pi, alpha, alpha_o) >= 0


# --- chain covers ------------------------------------------------------------------------


def test_chain_cover_on_a_chain():
    c3 = chain_poset(3)
    assert chain_cover_model_count(c3, 1).total == 6
    assert chain_cover_model_count(c3, 0).total == 1


def test_chain_cover_on_b2():
    res = chain_cover_model_count(boolean_lattice(2), 1)
    assert res.width == 2
    assert res.slots_per_chain == (6, 4)
    assert res.total == 10 == placement_oracle(boolean_lattice(2), 1)
    assert str(res) == "w=2 slots=[6, 4] count=10"


def test_chain_cover_needs_bounds():
    with pytest.raises(counting.NoBounds):
        chain_cover_model_count(antichain_poset(2), 1)
    with pytest.raises(counting.CountingError):
        chain_cover_model_count(chain_poset(2), -1)


def test_bounded_chain_cover():
    p = from_pairs("0ab1", [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    res = chain_cover_model_count(p, 10, (1, 1))
    assert res.total == placement_oracle(p, 10, (1, 1)) == 1
    assert res.n_o == 1 and res.lower == res.upper == 1


@given(st.integers(0, 4), st.integers(0, 4), st.sampled_from([None, (0, 2), (1, 3)]))
def test_chain_cover_matches_oracle_on_lattices_with_chains(extra, r, bounds):
    # a 0, a chain of `extra` middle elements next to one side element, a 1
    names = ["0", "1", "s"] + [f"m{i}" for i in range(extra)]
    pairs = [("0", "s"), ("s", "1")]
    chain = ["0"] + names[3:] + ["1"]
    pairs += list(zip(chain, chain[1:]))
    p = from_pairs(names, pairs)
    assert chain_cover_model_count(p, r, bounds).total == placement_oracle(p, r, bounds)
