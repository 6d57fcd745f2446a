import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from modelforge.errors import FormulaSyntaxError, InputError, RejectionError, UnboundVariableError, VocabularyError
from modelforge.logic.delta import DeltaSet, atomic_delta, delta_instances, delta_type, is_delta_literal, positive_delta_type
from modelforge.logic.enumeration import enumerate_sentences
from modelforge.logic.evaluator import evaluate, evaluate_tuple
from modelforge.logic.formula import And, Atom, Equals, Exists, Not, Or, substitute, to_text
from modelforge.logic.normal_forms import flatten_to_existential, flatten_to_weakly_existential, normalize, prenex, to_nnf
from modelforge.logic.parser import parse_formula
from modelforge.logic.structure import FinStructure, find_isomorphism, random_structure, strict_chain
from modelforge.logic.vocabulary import Vocabulary

from conftest import BINARY, assignments, binary_structures, formulas, naive_evaluate, small_binary_structures


def test_chain_of_two():
    chain = strict_chain(2)
    vocabulary = chain.vocabulary
    assert evaluate(chain, parse_formula("exists x0. exists x1. Lt(x0,x1)", vocabulary), {})
    assert not evaluate(chain, parse_formula("forall x0. exists x1. Lt(x0,x1)", vocabulary), {})


def test_free_variables_need_an_assignment():
    chain = strict_chain(3)
    formula = parse_formula("exists x1. Lt(x0,x1)", chain.vocabulary)
    assert evaluate(chain, formula, {0: 0})
    assert not evaluate(chain, formula, {0: 2})
    with pytest.raises(UnboundVariableError):
        evaluate(chain, formula, {})


def test_parser_errors():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("exists x0 R(x0,x0)", BINARY)
    with pytest.raises(VocabularyError):
        parse_formula("P(x0)", BINARY)
    with pytest.raises(VocabularyError):
        parse_formula("R(x0)", BINARY)


def test_operator_precedence():
    formula = parse_formula("!R(x0,x0) & R(x0,x1) | x0=x1", BINARY)
    assert to_text(formula) == "!R(x0,x0) & R(x0,x1) | x0=x1"
    structure = FinStructure(BINARY, 2, {"R": [(0, 1)]})
    assert evaluate(structure, formula, {0: 0, 1: 1})
    assert not evaluate(structure, formula, {0: 1, 1: 0})


def test_single_member_connectives_round_trip():
    loop, equal = Atom("R", (0, 0)), Equals(0, 1)
    cases = [And((loop,)), Or((loop,)), Not(And((loop,))), And((Or((loop,)), loop)), Or((And((loop,)), equal)),
        Exists(1, And((Or((equal,)),)))]
    assert to_text(cases[0]) == "&(R(x0,x0))"
    assert to_text(cases[1]) == "|(R(x0,x0))"
    for formula in cases:
        assert parse_formula(to_text(formula), BINARY) == formula


@settings(max_examples=1000, deadline=None)
@given(formulas)
def test_print_parse_round_trip(formula):
    assert parse_formula(to_text(formula), BINARY) == formula


@pytest.mark.slow
def test_evaluator_agrees_with_reference_on_small_structures():
    corpus = [
        "R(x0,x1)",
        "exists x1. R(x0,x1) & !x0=x1",
        "forall x1. R(x0,x1) | R(x1,x0) | x0=x1",
        "exists x0. forall x1. R(x0,x1)",
        "forall x0. exists x1. R(x0,x1) & R(x1,x0)",
        "!(exists x2. R(x0,x2) & R(x2,x1))",
        "forall x0. forall x1. R(x0,x1) & R(x1,x0) | !R(x0,x1)",
        "exists x2. forall x0. x0=x2 | R(x2,x0)",
    ]
    parsed = [parse_formula(text, BINARY) for text in corpus]
    for structure in small_binary_structures(3):
        for formula in parsed:
            for assignment in assignments(structure):
                assert evaluate(structure, formula, assignment) == naive_evaluate(structure, formula, assignment)


@settings(max_examples=300, deadline=None)
@given(binary_structures(), formulas, st.data())
def test_evaluator_agrees_with_reference(structure, formula, data):
    values = data.draw(st.lists(st.integers(0, structure.universe_size - 1), min_size=3, max_size=3))
    assignment = dict(enumerate(values))
    assert evaluate(structure, formula, assignment) == naive_evaluate(structure, formula, assignment)


@settings(max_examples=200, deadline=None)
@given(binary_structures(), formulas)
def test_normal_forms_preserve_truth(structure, formula):
    nnf = to_nnf(formula)
    assert to_nnf(nnf) == nnf
    assert normalize(normalize(formula)) == normalize(formula)
    for assignment in assignments(structure):
        expected = naive_evaluate(structure, formula, assignment)
        assert naive_evaluate(structure, nnf, assignment) == expected
        assert naive_evaluate(structure, prenex(formula), assignment) == expected
        assert naive_evaluate(structure, normalize(formula), assignment) == expected


def test_delta_type_holds_of_its_tuple():
    rng = np.random.default_rng(7)
    vocabulary = Vocabulary.of(("R", 2), ("P", 1))
    delta = atomic_delta(vocabulary, 2)
    for _ in range(20):
        structure = random_structure(vocabulary, 4, 0.5, rng)
        elements = tuple(int(x) for x in rng.integers(0, 4, size=3))
        formula = delta_type(structure, delta.formulas, elements)
        assert len(formula.parts) == len(delta)
        assert evaluate_tuple(structure, formula, elements)
        assert evaluate_tuple(structure, positive_delta_type(structure, delta.formulas, elements), elements)


def test_delta_type_separates_tuples(path_structure):
    delta = atomic_delta(BINARY, 2)
    first = delta_type(path_structure, delta.formulas, (0, 1))
    assert evaluate_tuple(path_structure, first, (0, 1))
    # 1 -> 2 differs from 0 -> 1 by the loop at 2
    assert not evaluate_tuple(path_structure, first, (1, 2))
    assert not evaluate_tuple(path_structure, first, (1, 0))
    with pytest.raises(UnboundVariableError):
        delta_type(path_structure, delta.formulas, (0,))


def test_delta_set_rejects_wide_formulas():
    with pytest.raises(InputError):
        DeltaSet.from_texts(["R(x0,x2)"], BINARY, 2)
    with pytest.raises(InputError):
        DeltaSet.from_texts(["R(x0,x1)", "R(x0,x1)"], BINARY, 2)


def test_flatten_accepts_existential_conjunctions():
    delta = DeltaSet.from_texts(["R(x0,x1)", "x0=x1"], BINARY, 2)
    formula = parse_formula("exists x1. R(x0,x1) & (exists x2. R(x1,x2) & !x1=x2)", BINARY)
    flat = flatten_to_weakly_existential(formula, delta.formulas)
    assert isinstance(flat, Exists) and isinstance(flat.body, Exists)
    structure = FinStructure(BINARY, 3, {"R": [(0, 1), (1, 2)]})
    for a in structure.universe:
        assert evaluate(structure, flat, {0: a}) == evaluate(structure, formula, {0: a})


def test_flatten_rejections():
    delta = DeltaSet.from_texts(["R(x0,x1)"], BINARY, 2)
    with pytest.raises(RejectionError):
        flatten_to_weakly_existential(parse_formula("forall x1. R(x0,x1)", BINARY), delta.formulas)
    with pytest.raises(RejectionError):
        flatten_to_weakly_existential(parse_formula("R(x0,x1) | R(x1,x0)", BINARY), delta.formulas)
    with pytest.raises(RejectionError):
        flatten_to_weakly_existential(parse_formula("x0=x1", BINARY), delta.formulas)
    negated = parse_formula("exists x1. !R(x0,x1)", BINARY)
    assert flatten_to_weakly_existential(negated, delta.formulas) == Exists(1, Not(Atom("R", (0, 1))))
    with pytest.raises(RejectionError):
        flatten_to_existential(negated, delta.formulas)


def test_find_isomorphism(path_structure):
    relabeled = path_structure.relabel([2, 0, 1])
    permutation = find_isomorphism(path_structure, relabeled)
    assert permutation == (2, 0, 1)
    assert find_isomorphism(path_structure, strict_chain(3, "R")) is None


def test_sentence_stream_is_bounded_and_closed():
    stream = enumerate_sentences(BINARY, 1)
    sentences = list(stream)
    assert sentences
    assert all(sentence.is_sentence() and sentence.quantifier_rank() <= 1 for sentence in sentences)
    assert len(set(sentences)) == len(sentences)
    assert len(list(enumerate_sentences(BINARY, 2, budget=5))) == 5


def test_sentence_stream_separates_structures():
    # one loop against no loop differs at rank one
    loop = FinStructure(BINARY, 1, {"R": [(0, 0)]})
    empty = FinStructure(BINARY, 1, {})
    sentences = list(enumerate_sentences(BINARY, 1))
    assert any(evaluate(loop, s, {}) != evaluate(empty, s, {}) for s in sentences)
    assert all(evaluate(loop, s, {}) == evaluate(loop.relabel([0]), s, {}) for s in sentences)


def test_substitution_avoids_capture():
    formula = parse_formula("exists x1. R(x0,x1)", BINARY)
    renamed = substitute(formula, {0: 1})
    assert renamed.free_variables() == frozenset({1})
    for structure in small_binary_structures(2):
        for a in structure.universe:
            assert naive_evaluate(structure, renamed, {1: a}) == naive_evaluate(structure, formula, {0: a})


def test_delta_instances_and_literals():
    delta = DeltaSet.from_texts(["R(x0,x1)"], BINARY, 2)
    instances = delta_instances(delta.formulas, 2)
    assert [to_text(phi) for phi in instances] == ["R(x0,x0)", "R(x0,x1)", "R(x1,x0)", "R(x1,x1)"]
    assert is_delta_literal(Atom("R", (1, 0)), delta.formulas)
    assert is_delta_literal(Not(Atom("R", (1, 0))), delta.formulas)
    assert not is_delta_literal(Not(Atom("R", (1, 0))), delta.formulas, allow_negation=False)
    assert not is_delta_literal(Equals(0, 1), delta.formulas)
