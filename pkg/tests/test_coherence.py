import itertools

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from modelforge.coherence.coherent_family import CoherentFamily, check_coherent, check_coherent_exhaustive, initial_segments
from modelforge.coherence.derivation import (coverage_report, derive_family, family_value, matching_positions,
    restrict_to_predecessors)
from modelforge.coherence.levels import TypeSpace, levels_tree, tuple_type, xi_level, xi_tuple
from modelforge.coherence.pullback import enumerate_generators, pullback
from modelforge.coherence.s_family import build_groups, check_groups, close_under_intersections, derive_s_family
from modelforge.coherence.square_witness import SquareWitness, check_square_witness
from modelforge.coherence.witness_generator import forest_witness, generate_square_witness
from modelforge.errors import DimensionMismatchError, EmptyIntersectionError, GroupConditionError, InvalidWitnessError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.filters.regularity_witness import RegularityWitness
from modelforge.instance_generator import random_filter, random_witness


def test_initial_segments_are_coherent():
    for index_size in range(1, 4):
        family = initial_segments(5, index_size)
        for kernel in ([0], list(range(index_size))):
            assert check_coherent(family, FilterOnIndex(index_size, [kernel])).passed


def test_each_condition_reports_its_counterexample():
    trivial = FilterOnIndex.trivial(1)
    too_large = CoherentFamily(3, 1, [[[]], [[0]], [[0, 1]]], [2])
    assert check_coherent(too_large, trivial)["i"].counterexample == {"zeta": 2, "i": 0, "size": 2, "cap": 2}

    not_below = CoherentFamily(2, 1, [[[1]], [[0]]], [3])
    assert check_coherent(not_below, trivial)["ii"].counterexample == {"zeta": 0, "i": 0, "member": 1}

    uncovered = CoherentFamily(2, 2, [[[], []], [[], [0]]], [2, 2])
    report = check_coherent(uncovered, FilterOnIndex.trivial(2))
    assert report["iii"].counterexample == {"zeta": 1, "B": [0], "agreement": [1]}
    assert check_coherent(uncovered, FilterOnIndex.principal(2, 1)).passed

    incoherent = CoherentFamily(3, 1, [[[]], [[]], [[0, 1]]], [3])
    report = check_coherent(incoherent, trivial)
    assert [c.name for c in report.failures()] == ["iii", "iv"]
    assert report["iv"].counterexample["gamma"] == 1


def test_family_and_filter_must_share_the_index_set():
    with pytest.raises(DimensionMismatchError):
        check_coherent(initial_segments(2, 2), FilterOnIndex.trivial(3))
    with pytest.raises(DimensionMismatchError):
        CoherentFamily(2, 1, [[[]]], [1])


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_kernel_shortcut_matches_enumeration(data):
    Z = data.draw(st.integers(1, 4))
    index_size = data.draw(st.integers(1, 3))
    sets = [[data.draw(st.sets(st.integers(0, zeta - 1), max_size=zeta)) if zeta else set()
        for _ in range(index_size)] for zeta in range(Z)]
    kernel = data.draw(st.sets(st.integers(0, index_size - 1), min_size=1))
    b = data.draw(st.integers(1, 2))
    family = CoherentFamily(Z, index_size, sets, [Z + 1] * index_size)
    index_filter = FilterOnIndex(index_size, [kernel])
    assert check_coherent(family, index_filter, b)["iii"].passed == check_coherent_exhaustive(family, index_filter, b)


# SQUARE WITNESSES
@pytest.mark.parametrize("size", [1, 2, 5])
def test_trivial_witness_satisfies_the_axioms(size):
    report = check_square_witness(SquareWitness.trivial(size))
    assert report.passed
    assert [c.name for c in report.conditions] == ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii"]


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("twin_free", [False, True])
def test_generated_witnesses_satisfy_the_axioms(seed, twin_free):
    witness = generate_square_witness(6, 3, np.random.default_rng(seed), twin_free=twin_free)
    assert check_square_witness(witness).passed
    assert SquareWitness.from_json(witness.to_json()).to_json() == witness.to_json()
    for zeta in range(witness.level_count):
        assert levels_tree(witness, zeta).verdict.passed
    assert TypeSpace(witness, 3).directedness().passed


def test_broken_witness_is_rejected():
    trivial = SquareWitness.trivial(3)
    # 0 in C[0][2] while 0 and 2 share a class
    broken = SquareWitness(3, 1, trivial.C, [[0, 1, 0]], trivial.f)
    report = check_square_witness(broken)
    assert not report["viii"].passed
    with pytest.raises(InvalidWitnessError):
        levels_tree(broken, 0)
    with pytest.raises(InvalidWitnessError):
        derive_family(broken)


def test_levels_tree_of_the_trivial_witness_is_a_chain():
    tree = levels_tree(SquareWitness.trivial(4), 0)
    assert len(tree.classes) == 4
    assert (0, 3) in tree.relation and (3, 0) not in tree.relation
    assert tree.verdict["transitive"].passed and tree.verdict["downward linear"].passed


# DERIVED AND PULLED BACK FAMILIES
def test_derived_family_of_the_trivial_witness():
    witness = SquareWitness.trivial(4)
    derived = derive_family(witness, max_length=3)
    assert derived.space.full_index is not None
    assert check_coherent(derived.family, derived.index_filter).passed
    assert coverage_report(witness, derived)["coverage"].passed
    assert derived.family.u(3, derived.space.full_index) == frozenset({0, 1, 2})


@pytest.mark.parametrize("seed", range(8))
def test_derived_family_is_coherent_on_twin_free_witnesses(seed):
    witness = generate_square_witness(5, 3, np.random.default_rng(seed), twin_free=True)
    derived = derive_family(witness, max_length=3)
    assert check_coherent(derived.family, derived.index_filter).passed
    assert coverage_report(witness, derived).passed
    assert derived.index_filter.generators == derived.generators



def twin_witness():
    """Two trees 0 -> 1 and 2 -> 3 with equal colours, so (0, 1) and (2, 3)
    share their type."""
    return forest_witness([None, 0, None, 2], [0, 1, 0, 1], 2)


def test_twin_witness_values_and_coverage():
    witness = twin_witness()
    assert check_square_witness(witness).passed
    assert TypeSpace(witness).shared_type()["realizations"] == [[0, 1], [2, 3]]
    assert family_value(witness, (0, 1), 0, 3) == frozenset({2})
    assert family_value(witness, (0, 1), 0, 1) == frozenset({0})
    assert family_value(witness, (0, 2, 3), 1, 1) == frozenset()

    derived = derive_family(witness)
    assert check_coherent(derived.family, derived.index_filter).passed
    coverage = coverage_report(witness, derived)["coverage"]
    assert not coverage.passed
    assert coverage.counterexample == {"a": 1, "B": [0], "type": derived.space.index[tuple_type(witness, (0, 2, 3))],
        "u": []}


def twin_witnesses():
    for seed in range(12):
        yield generate_square_witness(3 + seed % 6, 2, np.random.default_rng(seed))
    yield forest_witness([None, 0, 0, None, 3, 3], [0, 1, 1, 0, 1, 1], 3)
    yield forest_witness([None, 0, 1, None, 3, 4, 5], [0, 0, 1, 0, 0, 1, 1], 2)


@pytest.mark.parametrize("witness", list(twin_witnesses()))
def test_levels_and_family_values_on_witnesses_with_twins(witness):
    assert check_square_witness(witness).passed
    space = TypeSpace(witness)
    for length in range(2, min(4, witness.order_size) + 1):
        for elements in itertools.combinations(witness.order, length):
            last = max(xi_level(witness, b, elements[-1]) for b in elements[:-1])
            assert xi_tuple(witness, elements) == last
    for t, elements in zip(space.types, space.realizations):
        level = xi_tuple(witness, elements)
        assert t.xi == level
        for a in witness.order:
            positions = matching_positions(witness, elements, a, level)
            assert len(positions) <= 1
            expected = set()
            if positions:
                k = positions[0]
                expected = {witness.map(level, elements[k], a)[b] for b in elements[:k]}
            assert family_value(witness, elements, level, a) == expected


@pytest.mark.parametrize("seed", range(12))
def test_derived_and_pulled_back_families_with_twins(seed):
    rng = np.random.default_rng(seed)
    witness = generate_square_witness(3 + seed % 6, 2, rng)
    derived = derive_family(witness)
    assert check_coherent(derived.family, derived.index_filter).passed
    if derived.space.shared_type() is None:
        assert coverage_report(witness, derived).passed

    index_size = int(rng.integers(1, 5))
    index_filter = random_filter(index_size, rng)
    regularity = random_witness(index_filter, int(rng.integers(1, 5)), rng)
    generators = enumerate_generators(list(derived.generators), len(regularity))
    assert check_coherent(pullback(derived.family, generators, regularity, index_size).family, index_filter).passed


@pytest.mark.parametrize("seed", range(20))
def test_twin_free_witnesses_realize_types_once(seed):
    witness = generate_square_witness(3 + seed % 6, 2, np.random.default_rng(seed), twin_free=True)
    derived = derive_family(witness)
    assert derived.space.shared_type() is None
    assert coverage_report(witness, derived).passed

@pytest.mark.parametrize("seed", range(8))
def test_pullback_along_a_regularity_witness_is_coherent(seed):
    rng = np.random.default_rng(seed)
    witness = generate_square_witness(5, 2, rng, twin_free=True)
    derived = derive_family(witness, max_length=3)
    index_size = int(rng.integers(1, 6))
    index_filter = random_filter(index_size, rng)
    regularity = random_witness(index_filter, int(rng.integers(1, 5)), rng)
    assert regularity.validate(index_filter).passed

    generators = enumerate_generators(list(derived.generators), len(regularity))
    result = pullback(derived.family, generators, regularity, index_size)
    assert len(result.h) == index_size
    assert result.family.index_size == index_size
    assert check_coherent(result.family, index_filter).passed


def test_pullback_needs_matching_witness_and_generators():
    family = initial_segments(3, 2)
    regularity = RegularityWitness([[0], [0, 1]], 2)
    with pytest.raises(DimensionMismatchError):
        pullback(family, [frozenset({0, 1})], regularity, 2)
    with pytest.raises(EmptyIntersectionError):
        pullback(family, [frozenset({0}), frozenset({1})], regularity, 2)
    result = pullback(family, [frozenset({0, 1}), frozenset({1})], regularity, 2)
    assert result.h == (1, 1)


def test_enumerated_generators_keep_their_intersection():
    generators = [frozenset({0, 1, 2}), frozenset({1, 2, 3}), frozenset({2, 3, 4}), frozenset({0, 2})]
    assert enumerate_generators(generators, 6) == [generators[0], generators[1], generators[2], generators[3],
        generators[0], generators[1]]
    folded = enumerate_generators(generators, 2)
    assert folded == [frozenset({2}), frozenset({2})]
    assert frozenset.intersection(*folded) == frozenset.intersection(*generators)


# S-FAMILIES
def test_s_family_from_derived_generators():
    witness = generate_square_witness(5, 2, np.random.default_rng(3), twin_free=True)
    derived = derive_family(witness, max_length=3)
    closed, groups, caps = build_groups(list(derived.generators), 2, cap_floor=witness.order_size)
    check_groups(closed, groups, caps)
    s_family, report = derive_s_family(derived.family, closed, groups, caps)
    assert s_family.group_count == 2
    assert [c.name for c in report.conditions] == ["increasing", "union", "cap", "coherent", "bounded"]
    assert report.passed


def test_group_conditions():
    generators = [frozenset({0, 1}), frozenset({1, 2}), frozenset({1})]
    check_groups(generators, [[2], [0, 1, 2]], [3, 3])
    with pytest.raises(GroupConditionError):
        check_groups(generators, [[0, 1, 2], [2]], [3, 3])
    with pytest.raises(GroupConditionError):
        check_groups(generators, [[0, 1], [0, 1, 2]], [3, 3])
    with pytest.raises(GroupConditionError):
        check_groups(generators, [[2], [0, 1, 2]], [3, 2])
    with pytest.raises(GroupConditionError):
        check_groups(generators, [[2], [0, 2]], [3, 3])


def test_close_under_intersections():
    sets = [frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3})]
    closed = close_under_intersections(sets)
    assert closed[:3] == sets
    assert set(closed) == set(sets) | {frozenset({1}), frozenset({2})}
    assert restrict_to_predecessors(frozenset({0, 2, 3}), 2) == frozenset({0})


@pytest.mark.slow
def test_square_pipeline_sweep():
    for seed in range(50):
        rng = np.random.default_rng(seed)
        witness = generate_square_witness(3 + seed % 6, 2, rng, twin_free=True)
        assert check_square_witness(witness).passed
        assert all(levels_tree(witness, zeta).verdict.passed for zeta in range(witness.level_count))

        # at the level of a tuple its elements lie in pairwise distinct classes
        for length in range(1, 5):
            for elements in itertools.combinations(witness.order, length):
                level = xi_tuple(witness, elements)
                assert tuple_type(witness, elements).xi == level
                for a in witness.order:
                    assert len(matching_positions(witness, elements, a, level)) <= 1

        derived = derive_family(witness, max_length=3)
        assert check_coherent(derived.family, derived.index_filter).passed
        index_size = int(rng.integers(1, 5))
        index_filter = random_filter(index_size, rng)
        regularity = random_witness(index_filter, int(rng.integers(1, 5)), rng)
        generators = enumerate_generators(list(derived.generators), len(regularity))
        pulled = pullback(derived.family, generators, regularity, index_size)
        assert check_coherent(pulled.family, index_filter).passed

        closed, groups, caps = build_groups(list(derived.generators), 2, cap_floor=witness.order_size)
        assert derive_s_family(derived.family, closed, groups, caps)[1].passed
