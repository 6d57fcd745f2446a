import numpy as np
import pytest

from modelforge.coherence.coherent_family import CoherentFamily, initial_segments
from modelforge.coherence.derivation import derive_family
from modelforge.coherence.pullback import enumerate_generators, pullback
from modelforge.coherence.square_witness import SquareWitness
from modelforge.embedding.builder import EmbeddingResult, build_embedding, replay_induction_hypothesis
from modelforge.embedding.partition import delta_partition
from modelforge.embedding.theta_ladder import ThetaLadder
from modelforge.embedding.verification import corrupt_embedding, transfer_audit, verify_delta_embedding
from modelforge.errors import DimensionMismatchError, PreconditionError, WitnessNotFound
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.filters.regularity_witness import RegularityWitness
from modelforge.instance_generator import generate_instances
from modelforge.logic.delta import DeltaSet, atomic_delta
from modelforge.logic.evaluator import evaluate_tuple
from modelforge.logic.structure import FinStructure, strict_chain
from modelforge.logic.vocabulary import Vocabulary

from conftest import BINARY


def full_witness(delta, index_size):
    """Every A_alpha is the whole index set."""
    return RegularityWitness([range(index_size)] * len(delta), len(delta))


def test_partition_follows_the_witness():
    delta = DeltaSet.from_texts(["R(x0,x1)", "x0=x1"], BINARY, 2)
    parts = delta_partition(delta, RegularityWitness([[0], [0, 1]], 2), 2)
    assert parts == [tuple(delta.formulas), (delta[1],)]
    with pytest.raises(DimensionMismatchError):
        delta_partition(delta, RegularityWitness([[0]], 1), 2)


def test_ladder_case_labels_on_initial_segments():
    chain = strict_chain(3)
    delta = atomic_delta(chain.vocabulary, 2)
    result = build_embedding(chain, chain, delta, FilterOnIndex.trivial(1), full_witness(delta, 1),
        initial_segments(3, 1))
    assert [entry.case for entry in result.trace] == ["1.1", "2", "1.2"]
    ladder = result.ladder
    assert ladder.extensions(0, 1) == [2]
    assert ladder.contains_extension_conjunct(0, 1, 2)
    for zeta in range(3):
        assert evaluate_tuple(chain, ladder.theta(0, zeta), ladder.parameters(0, zeta))


def test_identity_power_embedding_is_injective_on_classes(path_structure):
    delta = atomic_delta(BINARY, 2)
    index_filter = FilterOnIndex.trivial(2)
    result = build_embedding(path_structure, path_structure, delta, index_filter, full_witness(delta, 2),
        initial_segments(3, 2))
    assert len(set(result.class_map)) == path_structure.universe_size
    assert replay_induction_hypothesis(result, path_structure).passed
    report = verify_delta_embedding(path_structure, path_structure, index_filter, result, delta)
    assert report.passed
    assert report["preservation"].counterexample is None


def test_embedding_into_a_relabeled_copy(path_structure):
    target = path_structure.relabel([1, 2, 0])
    delta = atomic_delta(BINARY, 2)
    index_filter = FilterOnIndex.principal(2, 1)
    result = build_embedding(path_structure, target, delta, index_filter, full_witness(delta, 2),
        initial_segments(3, 2), jobs=2)
    assert result.f[:, 1].tolist() == [1, 2, 0]
    report = verify_delta_embedding(path_structure, target, index_filter, result, delta)
    assert report["preservation"].passed
    assert report["quotient"].passed

    reloaded = EmbeddingResult.from_json(result.to_json(), index_filter)
    assert verify_delta_embedding(path_structure, target, index_filter, reloaded, delta).passed


@pytest.mark.parametrize("seed", range(5))
def test_generated_pipeline_instances(seed):
    instance = generate_instances("embedding", seed=seed)[0]
    source = FinStructure.from_json(instance["source"])
    target = FinStructure.from_json(instance["target"])
    delta = DeltaSet.from_json(instance["delta"])
    index_filter = FilterOnIndex.from_json(instance["filter"])
    witness = RegularityWitness.from_json(instance["witness"])
    square = SquareWitness.from_json(instance["square"])

    assert witness.validate(index_filter).passed
    assert target.universe_size == source.universe_size + 1
    assert transfer_audit(source, target, delta, 2).passed

    derived = derive_family(square)
    generators = enumerate_generators(list(derived.generators), len(witness))
    family = pullback(derived.family, generators, witness, index_filter.index_size).family
    result = build_embedding(source, target, delta, index_filter, witness, family)
    assert replay_induction_hypothesis(result, target).passed
    assert verify_delta_embedding(source, target, index_filter, result, delta).passed

    direct = CoherentFamily.from_json(instance["family"])
    result = build_embedding(source, target, delta, index_filter, witness, direct)
    assert verify_delta_embedding(source, target, index_filter, result, delta).passed


def test_corrupted_embedding_is_detected(path_structure):
    target = path_structure.relabel([2, 0, 1])
    delta = atomic_delta(BINARY, 2)
    index_filter = FilterOnIndex.principal(1, 0)
    result = build_embedding(path_structure, target, delta, index_filter, full_witness(delta, 1),
        initial_segments(3, 1))
    assert verify_delta_embedding(path_structure, target, index_filter, result, delta).passed

    for seed in range(5):
        corrupted = corrupt_embedding(result, target, np.random.default_rng(seed))
        assert np.count_nonzero(corrupted.f != result.f) == 1
        # the single column is a bijection, any change collides with another image
        report = verify_delta_embedding(path_structure, target, index_filter, corrupted, delta)
        assert not report["preservation"].passed
        assert report["preservation"].counterexample["count"] >= 1


def test_missing_witness_is_reported():
    vocabulary = Vocabulary.of(("P", 1))
    source = FinStructure(vocabulary, 1, {"P": [(0,)]})
    target = FinStructure(vocabulary, 2, {})
    delta = DeltaSet.from_texts(["P(x0)"], vocabulary, 1)
    with pytest.raises(WitnessNotFound) as error:
        build_embedding(source, target, delta, FilterOnIndex.trivial(1), full_witness(delta, 1),
            initial_segments(1, 1))
    assert error.value.index == 0 and error.value.element == 0
    assert "P(x0)" in error.value.formula


def test_incoherent_family_is_refused(path_structure):
    delta = atomic_delta(BINARY, 2)
    family = CoherentFamily(3, 1, [[[]], [[]], [[0, 1]]], [3])
    with pytest.raises(PreconditionError):
        build_embedding(path_structure, path_structure, delta, FilterOnIndex.trivial(1), full_witness(delta, 1),
            family)


def test_homomorphism_onto_a_loop():
    chain = strict_chain(3)
    loop = FinStructure(chain.vocabulary, 1, {"Lt": [(0, 0)]})
    delta = DeltaSet.from_texts(["Lt(x0,x1)"], chain.vocabulary, 2)
    index_filter = FilterOnIndex.trivial(1)
    witness = full_witness(delta, 1)

    result = build_embedding(chain, loop, delta, index_filter, witness, initial_segments(3, 1), mode="homomorphism")
    assert result.f[:, 0].tolist() == [0, 0, 0]
    assert verify_delta_embedding(chain, loop, index_filter, result, delta, mode="homomorphism").passed
    assert not verify_delta_embedding(chain, loop, index_filter, result, delta, mode="embedding").passed
    with pytest.raises(WitnessNotFound):
        build_embedding(chain, loop, delta, index_filter, witness, initial_segments(3, 1))


def test_transfer_audit():
    delta = atomic_delta(strict_chain(3).vocabulary, 2)
    assert transfer_audit(strict_chain(3), strict_chain(4), delta, 3).passed
    report = transfer_audit(strict_chain(3), strict_chain(2), delta, 3)
    assert not report["transfer"].passed
    assert report["transfer"].counterexample["sentence"].startswith("exists")
    assert transfer_audit(strict_chain(3), FinStructure(strict_chain(3).vocabulary, 1, {"Lt": [(0, 0)]}),
        delta, 2, mode="homomorphism").passed


def test_ladder_rejects_mismatched_family(path_structure):
    delta = atomic_delta(BINARY, 2)
    parts = delta_partition(delta, full_witness(delta, 1), 1)
    with pytest.raises(DimensionMismatchError):
        ThetaLadder(path_structure, initial_segments(4, 1), parts)


@pytest.mark.slow
def test_embedding_sweep_over_generated_instances():
    for seed in range(200):
        parameters = {"size": 2 + seed % 4, "index_size": 1 + seed % 4, "delta_size": 1 + (seed // 4) % 4}
        instance = generate_instances("embedding", seed=seed, parameters=parameters)[0]
        source = FinStructure.from_json(instance["source"])
        target = FinStructure.from_json(instance["target"])
        delta = DeltaSet.from_json(instance["delta"])
        index_filter = FilterOnIndex.from_json(instance["filter"])
        witness = RegularityWitness.from_json(instance["witness"])

        derived = derive_family(SquareWitness.from_json(instance["square"]), max_length=3)
        generators = enumerate_generators(list(derived.generators), len(witness))
        family = pullback(derived.family, generators, witness, index_filter.index_size).family
        result = build_embedding(source, target, delta, index_filter, witness, family)
        report = verify_delta_embedding(source, target, index_filter, result, delta)
        assert report.passed, (seed, report.to_json())


def test_distinct_formulas_per_index():
    chain = strict_chain(3)
    delta = atomic_delta(chain.vocabulary, 2)
    result = build_embedding(chain, chain, delta, FilterOnIndex.trivial(1), full_witness(delta, 1),
        initial_segments(3, 1))
    assert 1 <= result.ladder.distinct_count(0) <= 3


@pytest.mark.parametrize("seed", range(3))
def test_threaded_build_matches_serial_build(seed):
    instance = generate_instances("embedding", seed=seed, parameters={"size": 5, "index_size": 4})[0]
    source = FinStructure.from_json(instance["source"])
    target = FinStructure.from_json(instance["target"])
    delta = DeltaSet.from_json(instance["delta"])
    index_filter = FilterOnIndex.from_json(instance["filter"])
    witness = RegularityWitness.from_json(instance["witness"])
    family = CoherentFamily.from_json(instance["family"])

    serial = build_embedding(source, target, delta, index_filter, witness, family)
    threaded = build_embedding(source, target, delta, index_filter, witness, family, jobs=3)
    assert np.array_equal(serial.f, threaded.f)
    for i in range(index_filter.index_size):
        for zeta in range(source.universe_size):
            assert serial.ladder.theta(i, zeta) == threaded.ladder.theta(i, zeta)
    assert verify_delta_embedding(source, target, index_filter, threaded, delta).passed
