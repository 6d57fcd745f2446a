import itertools

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from modelforge.errors import (BudgetExceededError, DimensionMismatchError, ImproperFilterError,
    NotUltrafilterError, VocabularyError)
from modelforge.filters.filter_on_index import FilterOnIndex, generated_by_saturation
from modelforge.filters.los import los_agreement, los_check
from modelforge.filters.reduced_product import ReducedProduct, reduced_power, reduced_product
from modelforge.filters.regularity_witness import RegularityWitness
from modelforge.logic.enumeration import enumerate_sentences
from modelforge.logic.parser import parse_formula
from modelforge.logic.structure import FinStructure, random_structure, strict_chain

from conftest import BINARY


def all_subsets(index_size):
    return [frozenset(c) for size in range(index_size + 1) for c in itertools.combinations(range(index_size), size)]


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_membership_matches_saturation(data):
    index_size = data.draw(st.integers(1, 4))
    subsets = st.sets(st.integers(0, index_size - 1), max_size=index_size)
    generators = data.draw(st.lists(subsets, max_size=4))
    saturated = generated_by_saturation(index_size, generators)
    kernel = frozenset(range(index_size)).intersection(*generators)
    if not kernel:
        with pytest.raises(ImproperFilterError):
            FilterOnIndex(index_size, generators)
        return
    index_filter = FilterOnIndex(index_size, generators)
    assert set(index_filter.members()) == saturated
    for subset in all_subsets(index_size):
        assert index_filter.member(subset) == (subset in saturated)


def test_ultrafilter_characterizations_agree():
    for index_size in range(1, 5):
        full = frozenset(range(index_size))
        for kernel in all_subsets(index_size):
            if not kernel:
                continue
            index_filter = FilterOnIndex(index_size, [kernel])
            decides_everything = all(index_filter.member(A) or index_filter.member(full - A)
                for A in all_subsets(index_size))
            assert index_filter.is_ultrafilter() == decides_everything


def test_special_filters():
    assert FilterOnIndex.trivial(3).kernel == frozenset({0, 1, 2})
    principal = FilterOnIndex.principal(4, 2)
    assert principal.is_ultrafilter() and principal.ultrafilter_index() == 2
    assert principal == FilterOnIndex(4, [[1, 2], [2, 3]])
    with pytest.raises(NotUltrafilterError):
        FilterOnIndex(3, [[0, 1]]).ultrafilter_index()
    assert FilterOnIndex.from_json(principal.to_json()) == principal


def test_reduced_product_classes():
    factors = [strict_chain(2, "R"), strict_chain(3, "R"), strict_chain(2, "R")]
    product = ReducedProduct(factors, FilterOnIndex(3, [[0, 1]]))
    assert product.product_size == 12
    assert product.class_count == 6
    assert product.canonical((1, 2, 1)) == (1, 2, 0)
    assert product.equivalent((1, 2, 0), (1, 2, 1))
    assert not product.equivalent((1, 2, 0), (0, 2, 0))
    for k in range(product.class_count):
        assert product.class_index(product.representative(k)) == k


def test_trivial_filter_gives_the_direct_product():
    factors = [strict_chain(2, "R"), strict_chain(2, "R")]
    product = reduced_product(factors, FilterOnIndex.trivial(2))
    quotient = product.materialize()
    assert quotient.universe_size == 4
    # (0,0) < (1,1) holds coordinatewise, (0,1) and (1,0) are incomparable
    first, second = product.class_index((0, 0)), product.class_index((1, 1))
    assert quotient.holds("R", (first, second))
    assert not quotient.holds("R", (product.class_index((0, 1)), product.class_index((1, 0))))


def test_principal_ultrapower_is_the_factor(rng):
    structure = random_structure(BINARY, 3, 0.5, rng)
    power = reduced_power(structure, FilterOnIndex.principal(3, 1))
    assert power.materialize() == structure


def test_reduced_product_checks_its_inputs():
    with pytest.raises(DimensionMismatchError):
        ReducedProduct([strict_chain(2, "R")], FilterOnIndex.trivial(2))
    with pytest.raises(VocabularyError):
        ReducedProduct([strict_chain(2, "R"), strict_chain(2)], FilterOnIndex.trivial(2))
    with pytest.raises(BudgetExceededError):
        reduced_product([strict_chain(3, "R")] * 3, FilterOnIndex.trivial(3), budget=26)


def test_los_check_on_chains():
    factors = [strict_chain(1), strict_chain(2), strict_chain(3)]
    sentence = parse_formula("exists x0. exists x1. Lt(x0,x1)", factors[0].vocabulary)
    verdict = los_check(factors, FilterOnIndex.principal(3, 0), sentence)
    assert verdict.index == 0 and not verdict.product_verdict and verdict.agrees
    verdict = los_check(factors, FilterOnIndex.principal(3, 2), sentence)
    assert verdict.product_verdict and verdict.agrees
    with pytest.raises(NotUltrafilterError):
        los_check(factors, FilterOnIndex(3, [[1, 2]]), sentence)


@pytest.mark.slow
def test_los_agreement_on_the_rank_two_corpus():
    rng = np.random.default_rng(11)
    sentences = list(enumerate_sentences(BINARY, 2))
    for trial in range(5):
        factors = [random_structure(BINARY, 2, 0.5, rng) for _ in range(3)]
        j = int(rng.integers(3))
        report = los_agreement(factors, FilterOnIndex.principal(3, j), sentences)
        assert report.passed
        assert report["agreement"].details["checked"] == len(sentences)


def test_regularity_witness_validation():
    index_filter = FilterOnIndex(4, [[0, 1]])
    witness = RegularityWitness([[0, 1], [0, 1, 2], [0, 1, 3]], 3)
    assert witness.w(0) == frozenset({0, 1, 2})
    assert witness.w(3) == frozenset({2})
    assert witness.validate(index_filter).passed

    crowded = RegularityWitness(witness.sets, 2).validate(index_filter)
    assert not crowded["cap"].passed
    assert crowded["cap"].counterexample["i"] == 0

    outside = RegularityWitness([[0, 1], [1, 2]], 3).validate(index_filter)
    assert not outside["members"].passed
    assert outside["members"].counterexample == {"alpha": 1, "set": [1, 2]}

    with pytest.raises(DimensionMismatchError):
        RegularityWitness([[0, 5]], 1).validate(index_filter)


def test_structures_are_values():
    first = FinStructure(BINARY, 2, {"R": [(0, 1)]})
    assert first == FinStructure.from_json(first.to_json())
    assert hash(first) == hash(FinStructure(BINARY, 2, {"R": [[0, 1]]}))
