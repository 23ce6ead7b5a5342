import pytest
from hypothesis import given, strategies as st

from roughdist import granular
from roughdist.granular import (
    ApproximationPair,
    GranularOperatorSpace,
    build_framework,
    check_admissible_granulation,
    classify_definiteness,
    definite_rough_objects,
    lower_definable_scope,
    oracle_classify,
    pawlak_from_partition,
    representation_count,
    rough_objects_maximal,
    rough_quotient,
    roughly_consistent_objects,
    upper_definable_scope,
    validate_space,
)

fs = frozenset
U3 = fs({1, 2, 3})


@pytest.fixture
def running():
    return pawlak_from_partition([1, 2, 3], [{1, 2}, {3}])


@st.composite
def pawlak_spaces(draw, max_size=6):
    size = draw(st.integers(0, max_size))
    labels = draw(st.lists(st.integers(0, size), min_size=size, max_size=size))
    blocks = {}
    for x, lab in zip(range(size), labels):
        blocks.setdefault(lab, set()).add(x)
    return pawlak_from_partition(list(range(size)), list(blocks.values()))


def tables_of(space):
    lower = {a: space.lower(a) for a in space.subsets()}
    upper = {a: space.upper(a) for a in space.subsets()}
    return lower, upper


# --- construction -------------------------------------------------------------


def test_pawlak_operators(running):
    assert running.lower({1, 3}) == fs({3})
    assert running.upper({1}) == fs({1, 2})
    assert running.pair({2}) == ApproximationPair(fs(), fs({1, 2}))
    assert str(running.pair({2})) == "({}, {1,2})"


def test_partition_must_cover_and_be_disjoint():
    with pytest.raises(granular.NotAPartition):
        pawlak_from_partition([1, 2, 3], [{1, 2}])
    with pytest.raises(granular.NotAPartition):
        pawlak_from_partition([1, 2, 3], [{1, 2}, {2, 3}])


def test_tables_must_be_total():
    with pytest.raises(granular.GranularError):
        GranularOperatorSpace.from_tables([1], [{1}], {fs(): fs()}, {fs(): fs(), fs({1}): fs({1})})


def test_universe_limits():
    with pytest.raises(granular.UniverseTooLarge):
        pawlak_from_partition(range(25), [range(25)])
    big = pawlak_from_partition(range(13), [range(13)])
    with pytest.raises(granular.UniverseTooLarge):
        oracle_classify(big)


def test_set_partition_counts():
    bell = [1, 1, 2, 5, 15, 52, 203]
    for n, b in enumerate(bell):
        assert sum(1 for _ in granular.iter_set_partitions(list(range(n)))) == b


# --- axioms ---------------------------------------------------------------------


@given(pawlak_spaces())
def test_pawlak_spaces_pass_axioms_and_admissibility(space):
    assert validate_space(space).ok
    adm = check_admissible_granulation(space)
    assert adm.wra.ok and adm.ls.ok and adm.fu.ok


def test_lower_containment_violation():
    base = pawlak_from_partition([1, 2], [{1}, {2}])
    lower, upper = tables_of(base)
    lower[fs({1})] = fs({1, 2})
    space = GranularOperatorSpace.from_tables([1, 2], base.granulation, lower, upper)
    rep = validate_space(space)
    assert not rep.ok
    assert rep["lower_contained"].witness == (fs({1}),)


def test_empty_upper_violation():
    base = pawlak_from_partition([1], [{1}])
    lower, upper = tables_of(base)
    upper[fs()] = fs({1})
    rep = validate_space(GranularOperatorSpace.from_tables([1], base.granulation, lower, upper))
    assert rep["empty_upper"].witness == (fs(),)
    assert not rep.ok


def test_strict_upper_iterate_audit(running):
    rep = validate_space(running)
    # every Pawlak upper approximation is a fixed point of u
    assert rep.upper_fixed_iterates == 8
    assert rep["upper_iterate_increasing"].ok


def test_wra_fails_when_a_block_is_missing(running):
    partial = GranularOperatorSpace(running.universe, [{1, 2}], running._l, running._u)
    adm = check_admissible_granulation(partial)
    assert not adm.wra.ok
    assert adm.wra.witness == (fs({3}),)


def test_fu_fails_without_definite_upper_bound():
    universe = [1, 2, 3]
    grans = [{1}, {2}]
    base = pawlak_from_partition(universe, [{1}, {2}, {3}])
    # {1} and {2} are definite on their own; every superset of {1,2} is not
    lower = {a: a - {3} for a in base.subsets()}
    upper = {a: a if len(a) <= 1 and 3 not in a else a | {3} for a in base.subsets()}
    space = GranularOperatorSpace.from_tables(universe, grans, lower, upper)
    assert validate_space(space).ok
    adm = check_admissible_granulation(space)
    assert not adm.fu.ok
    assert adm.fu.witness == (fs({1}), fs({2}))


def test_fu_strict_audit_on_one_block():
    space = pawlak_from_partition([1, 2], [{1, 2}])
    adm = check_admissible_granulation(space)
    assert adm.fu.ok and not adm.fu_strict.ok


# --- definiteness ------------------------------------------------------------------


def test_definiteness_classes(running):
    d = classify_definiteness(running, {1, 2})
    assert d.definite and d.strongly_upper_definite and d.stabilization_index == 0
    d = classify_definiteness(running, {1})
    assert not d.upper_definite and d.upper_pre_definite and d.stabilization_index == 1
    d = classify_definiteness(running, set())
    assert d.definite and d.strongly_upper_definite


@given(pawlak_spaces(max_size=5), st.data())
def test_upper_iteration_stabilizes(space, data):
    subsets = list(space.subsets())
    a = data.draw(st.sampled_from(subsets))
    d = classify_definiteness(space, a)
    assert d.stabilization_index is not None
    assert d.stabilization_index <= 2 ** len(space.universe)


# --- quotient and rough objects ------------------------------------------------------


def test_running_quotient(running):
    q = rough_quotient(running)
    sizes = sorted(len(ms) for _, ms in q.classes)
    assert sizes == [1, 1, 1, 1, 2, 2]
    assert set(q.members(ApproximationPair(fs(), fs({1, 2})))) == {fs({1}), fs({2})}
    assert set(q.members(ApproximationPair(fs({3}), U3))) == {fs({1, 3}), fs({2, 3})}
    assert q.bottom == ApproximationPair(fs(), fs())
    assert q.top == ApproximationPair(U3, U3)


def test_one_block_quotient():
    q = rough_quotient(pawlak_from_partition([1, 2], [{1, 2}]))
    assert [set(ms) for _, ms in q.classes] == [{fs()}, {fs({1}), fs({2})}, {fs({1, 2})}]


def test_discrete_quotient_is_the_power_set():
    space = pawlak_from_partition([1, 2, 3], [{1}, {2}, {3}])
    q = rough_quotient(space)
    assert len(q) == 8
    for p, ms in q.classes:
        assert ms == (p.lower,) and p.lower == p.upper
    assert all(len(c) == 1 for c in roughly_consistent_objects(space))
    assert rough_objects_maximal(space) == []


def test_maximal_rough_objects(running):
    assert len(rough_objects_maximal(running)) == 2
    assert len(definite_rough_objects(running)) == 2
    assert len(rough_objects_maximal(pawlak_from_partition([1, 2], [{1, 2}]))) == 1
    assert granular.is_roughly_consistent(running, [{1}, {2}])
    assert not granular.is_roughly_consistent(running, [{1}, {3}])


@given(pawlak_spaces())
def test_quotient_is_bounded_partial_order(space):
    q = rough_quotient(space)
    assert q.order.bottom() == q.bottom and q.order.top() == q.top
    assert sum(len(ms) for _, ms in q.classes) == 2 ** len(space.universe)


# --- framework --------------------------------------------------------------------------


def test_running_framework(running):
    fw = build_framework(running)
    assert (fw.n, fw.k, fw.rough_count) == (8, 4, 4)
    assert set(fw.crisp) == {fs(), fs({1, 2}), fs({3}), U3}
    assert fw.phi[fs({1})] == (fs(), fs({1, 2}))


def test_discrete_and_one_block_frameworks():
    fw = build_framework(pawlak_from_partition([1, 2, 3], [{1}, {2}, {3}]))
    assert fw.rough == () and fw.k == fw.n == 8
    fw = build_framework(pawlak_from_partition([1, 2], [{1, 2}]))
    assert (fw.n, fw.k) == (4, 2)
    assert set(fw.rough) == {fs({1}), fs({2})}
    assert all(fw.phi[x] == (fs(), fs({1, 2})) for x in fw.rough)


def test_maximal_convention(running):
    fw = build_framework(running, "maximal")
    assert fw.rough_count == 2 and fw.k == 4
    assert fw.unclassified == ()


def test_explicit_phi_is_checked(running):
    phi = {x: (fs(), U3) for x in build_framework(running).rough}
    fw = build_framework(running, phi=phi)
    assert all(p == ApproximationPair(fs(), U3) for p in fw.pairs())
    with pytest.raises(granular.ConventionMismatch):
        build_framework(running, phi={fs({1}): (fs(), U3)})
    bad = dict(phi)
    bad[fs({1})] = (fs({1, 2}), fs({1, 2}))
    with pytest.raises(granular.ConventionMismatch):
        build_framework(running, phi=bad)
    build_framework(running, phi=bad, allow_diagonal=True)


@given(pawlak_spaces())
def test_framework_agrees_with_oracle(space):
    fw = build_framework(space)
    oracle = oracle_classify(space)
    assert not set(fw.crisp) & set(fw.rough)
    assert (fw.n, fw.k, fw.rough_count) == (oracle.n, oracle.k, oracle.rough)
    tally = {}
    for p in fw.pairs():
        tally[(p.lower, p.upper)] = tally.get((p.lower, p.upper), 0) + 1
    assert tally == oracle.multiplicities


def test_oracle_examples(running):
    res = oracle_classify(running)
    assert (res.n, res.k, res.rough) == (8, 4, 4)
    assert res.multiplicities == {(fs(), fs({1, 2})): 2, (fs({3}), U3): 2}
    assert oracle_classify(pawlak_from_partition([1, 2], [{1}, {2}])).rough == 0
    assert oracle_classify(pawlak_from_partition([1, 2], [{1, 2}])).multiplicities == {(fs(), fs({1, 2})): 2}


# --- scopes --------------------------------------------------------------------------------


def test_scopes_in_running_instance(running):
    crisp = build_framework(running).crisp
    assert lower_definable_scope({1}, crisp) == {fs()}
    assert upper_definable_scope({1}, crisp) == {fs({1, 2})}
    assert representation_count({1}, crisp) == 1
    assert representation_count({1, 2}, crisp) == 0


def test_scope_product_count():
    crisp = [set(), {1}, {2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 3, 4, 5}]
    assert representation_count({1, 2}, crisp) == 6


def test_empty_scope():
    with pytest.raises(granular.EmptyScope):
        upper_definable_scope({9}, [set(), {1}])


@given(
    st.lists(st.frozensets(st.integers(0, 4)), max_size=8),
    st.frozensets(st.integers(0, 4)),
)
def test_scope_invariants(extra, x):
    crisp = [fs(), fs(range(5)), *extra]
    sl = lower_definable_scope(x, crisp)
    su = upper_definable_scope(x, crisp)
    assert all(c <= x for c in sl) and all(x <= c for c in su)
    assert not any(a < b for a in sl for b in sl)
    assert not any(a < b for a in su for b in su)
