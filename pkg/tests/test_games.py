import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings

from modelforge.coherence.coherent_family import CoherentFamily, initial_segments
from modelforge.errors import BudgetExceededError, InputError, PreconditionError, StrategyError, VocabularyError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.games.adversary import exhaustive_adversary_check
from modelforge.games.arena import ProductArena, StructureArena
from modelforge.games.composition import compose_strategy, is_good_position
from modelforge.games.interactive import load_transcript, play_interactive, replay_transcript, save_transcript
from modelforge.games.position import GamePosition, Move, Round, Side, is_partial_isomorphism
from modelforge.games.solver import solve_ef
from modelforge.games.strategy import ConstantStrategy, CopyStrategy, MemoStrategy, strategy_from_json
from modelforge.instance_generator import generate_instances
from modelforge.input_reader import InputReader
from modelforge.logic.evaluator import evaluate
from modelforge.logic.enumeration import enumerate_sentences
from modelforge.logic.structure import find_isomorphism, random_structure, strict_chain

from conftest import BINARY, binary_structures, small_binary_structures


def partial_isomorphism_by_definition(source, target, pairs):
    if any((a == a2) != (b == b2) for (a, b), (a2, b2) in itertools.product(pairs, repeat=2)):
        return False
    return all(source.holds("R", (a, a2)) == target.holds("R", (b, b2))
        for (a, b), (a2, b2) in itertools.product(pairs, repeat=2))


def profile(structure, sentences):
    return tuple(evaluate(structure, s, {}) for s in sentences)


# POSITIONS
def test_partial_isomorphism_on_chains():
    chain = strict_chain(3)
    assert is_partial_isomorphism(chain, chain, [])
    assert is_partial_isomorphism(chain, chain, [(0, 1), (2, 2)])
    assert not is_partial_isomorphism(chain, chain, [(0, 2), (2, 0)])
    assert not is_partial_isomorphism(chain, chain, [(0, 1), (1, 1)])
    assert not is_partial_isomorphism(chain, chain, [(0, 1), (0, 2)])
    with pytest.raises(VocabularyError):
        is_partial_isomorphism(chain, strict_chain(3, "R"), [])


@pytest.mark.slow
def test_partial_isomorphism_matches_its_definition():
    structures = list(small_binary_structures(2)) + [random_structure(BINARY, 3, 0.5, np.random.default_rng(k))
        for k in range(6)]
    for source, target in itertools.product(structures, repeat=2):
        all_pairs = list(itertools.product(source.universe, target.universe))
        for size in range(4):
            for pairs in itertools.combinations(all_pairs, size):
                assert is_partial_isomorphism(source, target, pairs) == \
                    partial_isomorphism_by_definition(source, target, pairs)


def test_round_checks_sides():
    with pytest.raises(InputError):
        Round(Move(Side.M, 0), Move(Side.M, 1))
    position = GamePosition().extend(Move(Side.N, 2), Move(Side.M, 0))
    assert position.pairs == [(0, 2)]
    assert GamePosition.from_json(position.to_json()) == position


# SOLVER
@pytest.mark.parametrize("sizes", [(2, 3), (3, 2)])
def test_short_chains(sizes):
    source, target = strict_chain(sizes[0]), strict_chain(sizes[1])
    assert solve_ef(source, target, 1).winner == "II"
    result = solve_ef(source, target, 2)
    assert result.winner == "I"
    assert result.strategy is None and result.spoiler_move is not None


@pytest.mark.slow
def test_linear_order_law():
    for a, b in itertools.product(range(1, 10), repeat=2):
        for n in range(4):
            expected = a == b or min(a, b) >= 2**n - 1
            verdict = solve_ef(strict_chain(a), strict_chain(b), n, size_budget=9, certify=False)
            assert (verdict.winner == "II") == expected, (a, b, n)


@pytest.fixture(scope="module")
def sentences_by_rank():
    return {rank: list(enumerate_sentences(BINARY, rank)) for rank in (1, 2)}


@pytest.mark.slow
def test_solver_matches_sentence_agreement(sentences_by_rank):
    structures = list(small_binary_structures(2))
    profiles = {n: [profile(s, sentences_by_rank[n]) for s in structures] for n in (1, 2)}
    for (j, source), (k, target) in itertools.product(enumerate(structures), repeat=2):
        for n in (1, 2):
            verdict = solve_ef(source, target, n, certify=False)
            assert (verdict.winner == "II") == (profiles[n][j] == profiles[n][k])


@settings(max_examples=30, deadline=None)
@given(binary_structures(), binary_structures())
def test_solver_matches_sentence_agreement_on_three_elements(sentences_by_rank, source, target):
    for n in (1, 2):
        verdict = solve_ef(source, target, n, certify=False)
        agree = profile(source, sentences_by_rank[n]) == profile(target, sentences_by_rank[n])
        assert (verdict.winner == "II") == agree


@pytest.mark.parametrize("seed", range(4))
def test_isomorphic_structures_give_certified_strategies(seed):
    rng = np.random.default_rng(seed)
    source = random_structure(BINARY, 3, 0.5, rng)
    target = source.relabel([int(x) for x in rng.permutation(3)])
    result = solve_ef(source, target, 3)
    assert result.winner == "II" and result.certified
    restored = strategy_from_json(json.loads(json.dumps(result.strategy.to_json())))
    assert isinstance(restored, MemoStrategy) and restored.table == result.strategy.table
    assert exhaustive_adversary_check(StructureArena(source, target), restored, 3).passed


def test_solver_budgets():
    with pytest.raises(BudgetExceededError):
        solve_ef(strict_chain(9), strict_chain(9), 1)
    with pytest.raises(BudgetExceededError):
        solve_ef(strict_chain(2), strict_chain(2), 5)


# ADVERSARY
def test_adversary_against_simple_strategies():
    chain = strict_chain(3)
    arena = StructureArena(chain, chain)
    assert exhaustive_adversary_check(arena, CopyStrategy(), 3).passed

    result = exhaustive_adversary_check(arena, ConstantStrategy(0), 2)
    assert not result.passed
    assert 1 <= len(result.transcript) <= 2
    assert not arena.is_winning(result.transcript)
    report = result.to_report()
    assert not report["wins"].passed
    assert report["wins"].counterexample["transcript"] == result.transcript.to_json()

    parallel = exhaustive_adversary_check(arena, ConstantStrategy(0), 2, jobs=3)
    assert not parallel.passed


def test_adversary_budget_reports_explored_fraction():
    chain = strict_chain(3)
    with pytest.raises(BudgetExceededError) as error:
        exhaustive_adversary_check(StructureArena(chain, chain), CopyStrategy(), 3, budget=10)
    assert 0 < error.value.explored_fraction < 1


def test_memo_strategy_without_entry():
    with pytest.raises(StrategyError):
        MemoStrategy({}).reply(GamePosition(), Move(Side.M, 0))
    with pytest.raises(InputError):
        strategy_from_json({"version": 0, "kind": "copy"})
    with pytest.raises(InputError):
        strategy_from_json({"version": 1, "kind": "mirror"})


# COMPOSITION
def game_inputs(seed):
    reader = InputReader(generate_instances("game", seed=seed)[0])
    return (reader["source_factors"], reader["target_factors"], reader["filter"], reader["family"],
        reader["strategies"])


@pytest.mark.parametrize("seed", range(3))
def test_composed_strategy_wins_on_reduced_products(seed):
    source_factors, target_factors, index_filter, family, strategies = game_inputs(seed)
    composed = compose_strategy(source_factors, target_factors, index_filter, family, strategies)
    assert composed.scope == family.element_count

    def good(position):
        return is_good_position(position, family, strategies)

    result = exhaustive_adversary_check(composed.arena, composed, family.element_count, on_position=good)
    assert result.passed

    full = ProductArena(source_factors, target_factors, index_filter, representatives=False)
    assert exhaustive_adversary_check(full, composed, family.element_count, on_position=good).passed


def test_composition_preconditions():
    source_factors, target_factors, index_filter, family, strategies = game_inputs(0)
    incoherent = CoherentFamily(2, 2, [[[], []], [[], []]], [2, 2])
    with pytest.raises(PreconditionError):
        compose_strategy(source_factors, target_factors, index_filter, incoherent, strategies)
    with pytest.raises(StrategyError):
        compose_strategy(source_factors, target_factors, index_filter, initial_segments(3, 2, 3), strategies)


def test_composition_on_chains_of_different_lengths():
    result = solve_ef(strict_chain(7), strict_chain(8), 3)
    assert result.winner == "II" and result.certified
    source_factors, target_factors = [strict_chain(7)] * 2, [strict_chain(8)] * 2
    family = initial_segments(2, 2, 3)
    strategies = [result.strategy] * 2
    composed = compose_strategy(source_factors, target_factors, FilterOnIndex.trivial(2), family, strategies)
    check = exhaustive_adversary_check(composed.arena, composed, 2,
        on_position=lambda position: is_good_position(position, family, strategies))
    assert check.passed


def test_generated_factors_need_not_be_isomorphic():
    sizes = []
    for seed in range(8):
        reader = InputReader(generate_instances("game", seed=seed)[0])
        sizes += [(M.universe_size, N.universe_size) for M, N in
            zip(reader["source_factors"], reader["target_factors"])]
    assert any(m != n for m, n in sizes)
    assert all(min(m, n) >= 3 or m == n for m, n in sizes)


# TRANSCRIPTS AND PLAY
def test_transcript_save_and_replay(tmp_path):
    chain = strict_chain(3)
    arena = StructureArena(chain, chain)
    failure = exhaustive_adversary_check(arena, ConstantStrategy(0), 2)
    path = str(tmp_path / "transcript.jsonl")
    save_transcript(path, failure.transcript)
    loaded = load_transcript(path)
    assert loaded == failure.transcript

    report = replay_transcript(arena, ConstantStrategy(0), loaded)
    assert report["legal"].passed and report["replies"].passed
    assert not report["winner"].passed
    assert not replay_transcript(arena, CopyStrategy(), loaded)["replies"].passed


def test_transcript_rounds_must_be_numbered(tmp_path):
    path = tmp_path / "broken.jsonl"
    path.write_text('{"round": 1, "I": {"side": "M", "elem": 0}, "II": {"side": "N", "elem": 0}}\n')
    with pytest.raises(InputError):
        load_transcript(str(path))


def test_scripted_play_as_player_one():
    chain = strict_chain(3)
    arena = StructureArena(chain, chain)
    answers = iter(["Q 1", "M 7", "M 1", "N 2"])
    lines = []
    transcript = play_interactive(arena, CopyStrategy(), 2, "I", input_fn=lambda prompt: next(answers),
        output_fn=lines.append)
    assert transcript.pairs == [(1, 1), (2, 2)]
    assert sum(line.startswith("illegal move") for line in lines) == 2
    assert lines[-1] == "winner: II"
    assert replay_transcript(arena, CopyStrategy(), transcript).passed


def test_scripted_play_as_player_two():
    chain = strict_chain(2)
    arena = StructureArena(chain, chain)
    lines = []
    # the replies copy whatever the seeded computer plays
    def mirror(prompt):
        played = [line for line in lines if line.startswith("I plays")][-1].split()
        return played[2]

    transcript = play_interactive(arena, None, 3, "II", input_fn=mirror, output_fn=lines.append, seed=5)
    assert len(transcript) == 3
    assert all(a == b for a, b in transcript.pairs)
    assert lines[-1] == "winner: II"


@pytest.mark.slow
def test_composition_sweep():
    for seed in range(100):
        cap = 2 + (seed // 3) % 2
        # chains for cap 3 have seven or more elements, too many for the product arenas here
        parameters = {"index_size": 1 + seed % 3, "size": 2 + seed % 2, "cap": cap,
            "chain_probability": 0.5 if cap == 2 else 0.0}
        reader = InputReader(generate_instances("game", seed=seed, parameters=parameters)[0])
        family, strategies = reader["family"], reader["strategies"]
        composed = compose_strategy(reader["source_factors"], reader["target_factors"], reader["filter"], family,
            strategies)
        result = exhaustive_adversary_check(composed.arena, composed, family.element_count,
            on_position=lambda position: is_good_position(position, family, strategies))
        assert result.passed, (seed, result.reason)


@pytest.mark.slow
def test_long_games_detect_isomorphism():
    structures = list(small_binary_structures(2))
    for source, target in itertools.product(structures, repeat=2):
        rounds = source.universe_size + target.universe_size
        verdict = solve_ef(source, target, rounds, certify=False)
        assert (verdict.winner == "II") == (find_isomorphism(source, target) is not None)
