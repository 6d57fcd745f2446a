import json
import os

import h5py
import pytest

from modelforge.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_SUCCESS, EXIT_VIOLATION, RunConfig, main
from modelforge.coherence.coherent_family import CoherentFamily, initial_segments
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.instance_generator import generate_instances
from modelforge.logic.delta import DeltaSet
from modelforge.logic.structure import strict_chain

from conftest import BINARY


def write_json(folder, name, data):
    path = os.path.join(str(folder), name + ".json")
    with open(path, "w") as file:
        json.dump(data, file)
    return path


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def coherent_inputs(tmp_path):
    return (write_json(tmp_path, "family", initial_segments(3, 2).to_json()),
        write_json(tmp_path, "filter", FilterOnIndex.trivial(2).to_json()))


def test_check_coherent_succeeds(capsys, coherent_inputs):
    family, index_filter = coherent_inputs
    code, envelope = run_cli(capsys, "check-coherent", "--family", family, "--filter", index_filter)
    assert code == EXIT_SUCCESS
    assert envelope["subcommand"] == "check-coherent" and envelope["status"] == "success"
    assert [c["name"] for c in envelope["report"]["conditions"]] == ["i", "ii", "iii", "iv"]
    assert envelope["result"]["caps"] == [3, 3]


def test_violation_exit_code(capsys, tmp_path):
    uncovered = CoherentFamily(2, 2, [[[], []], [[], [0]]], [2, 2])
    code, envelope = run_cli(capsys, "check-coherent",
        "--family", write_json(tmp_path, "family", uncovered.to_json()),
        "--filter", write_json(tmp_path, "filter", FilterOnIndex.trivial(2).to_json()))
    assert code == EXIT_VIOLATION
    assert envelope["status"] == "violation"
    failed = [c for c in envelope["report"]["conditions"] if not c["passed"]]
    assert failed[0]["name"] == "iii" and failed[0]["counterexample"]["B"] == [0]


def test_los_check_needs_an_ultrafilter(capsys, tmp_path):
    factors = {"factors": [strict_chain(2).to_json(), strict_chain(3).to_json()]}
    code, error = run_cli(capsys, "los-check",
        "--source-factors", write_json(tmp_path, "factors", factors),
        "--filter", write_json(tmp_path, "filter", FilterOnIndex.trivial(2).to_json()),
        "--formula", "exists x0. exists x1. Lt(x0,x1)")
    assert code == EXIT_INPUT
    assert error["error"] == "not-ultrafilter"


def test_los_check_on_a_principal_ultrafilter(capsys, tmp_path):
    factors = {"factors": [strict_chain(1).to_json(), strict_chain(3).to_json()]}
    code, envelope = run_cli(capsys, "los-check",
        "--source-factors", write_json(tmp_path, "factors", factors),
        "--filter", write_json(tmp_path, "filter", FilterOnIndex.principal(2, 1).to_json()),
        "--formula", "exists x0. exists x1. Lt(x0,x1)", "--formula", "forall x0. exists x1. Lt(x0,x1)")
    assert code == EXIT_SUCCESS
    assert envelope["result"]["index"] == 1
    assert envelope["report"]["conditions"][0]["details"]["checked"] == 2


def test_invalid_budget_variable(capsys, monkeypatch, coherent_inputs):
    monkeypatch.setenv("MODELFORGE_BUDGET_MS", "soon")
    family, index_filter = coherent_inputs
    code, error = run_cli(capsys, "check-coherent", "--family", family, "--filter", index_filter)
    assert code == EXIT_INPUT
    assert error["error"] == "input-error" and "MODELFORGE_BUDGET_MS" in error["message"]


def test_wall_time_budget_that_suffices(capsys, monkeypatch, coherent_inputs):
    monkeypatch.setenv("MODELFORGE_BUDGET_MS", "60000")
    family, index_filter = coherent_inputs
    code, envelope = run_cli(capsys, "check-coherent", "--family", family, "--filter", index_filter)
    assert code == EXIT_SUCCESS and envelope["status"] == "success"


def test_budget_exit_code(capsys, tmp_path):
    chain = write_json(tmp_path, "chain", strict_chain(9).to_json())
    code, error = run_cli(capsys, "solve-ef", "--source", chain, "--target", chain, "--rounds", "1")
    assert code == EXIT_BUDGET
    assert error["error"] == "budget-exceeded"
    assert "explored_fraction" in error


def test_missing_inputs_and_flags(capsys, tmp_path):
    chain = write_json(tmp_path, "chain", strict_chain(3).to_json())
    code, error = run_cli(capsys, "solve-ef", "--source", chain, "--target", chain)
    assert code == EXIT_INPUT and "--rounds" in error["message"]
    code, error = run_cli(capsys, "solve-ef", "--source", chain, "--rounds", "1")
    assert code == EXIT_INPUT and "target" in error["message"]
    code, error = run_cli(capsys, "eval", "--structure", chain, "--formula", "Lt(x0,", "--tuple", "0")
    assert code == EXIT_INPUT and error["error"] == "syntax-error"


def test_reports_are_deterministic(capsys, tmp_path):
    structure = write_json(tmp_path, "structure", strict_chain(4).to_json())
    argv = ["eval", "--structure", structure, "--formula", "exists x1. Lt(x0,x1)", "--formula", "x0=x0",
        "--tuple", "1"]
    assert main(argv) == EXIT_SUCCESS
    first = capsys.readouterr().out
    assert main(argv) == EXIT_SUCCESS
    assert capsys.readouterr().out == first
    values = json.loads(first)["result"]["values"]
    assert [entry["value"] for entry in values] == [True, True]


def test_flatten_rejection_is_a_violation(capsys, tmp_path):
    delta = write_json(tmp_path, "delta", DeltaSet.from_texts(["R(x0,x1)"], BINARY, 2).to_json())
    code, envelope = run_cli(capsys, "flatten", "--delta", delta, "--formula", "exists x1. R(x0,x1)")
    assert code == EXIT_SUCCESS
    assert envelope["result"]["formulas"][0]["flattened"].startswith("exists x1.")
    code, envelope = run_cli(capsys, "flatten", "--delta", delta, "--formula", "forall x1. R(x0,x1)")
    assert code == EXIT_VIOLATION
    assert envelope["result"]["formulas"][0]["flattened"] is None


def test_output_folder_and_h5_dump(capsys, tmp_path, coherent_inputs):
    family, index_filter = coherent_inputs
    output = str(tmp_path / "runs")
    for _ in range(2):
        assert main(["check-coherent", "--family", family, "--filter", index_filter, "--output", output, "--h5"]) \
            == EXIT_SUCCESS
    printed = capsys.readouterr().out.splitlines()
    assert sorted(os.listdir(output)) == ["check-coherent", "check-coherent-1"]
    folder = os.path.join(output, "check-coherent")
    with open(os.path.join(folder, "check-coherent.json")) as file:
        assert file.read().strip() == printed[0]
    with open(os.path.join(folder, "run_config.json")) as file:
        assert json.load(file)["inputs"] == {"family": family, "filter": index_filter}
    with h5py.File(os.path.join(folder, "check-coherent.h5"), "r") as h5file:
        assert h5file["incidence"].shape == (3, 2, 3)


def test_solver_strategy_feeds_the_adversary(capsys, tmp_path):
    chain = write_json(tmp_path, "chain", strict_chain(3).to_json())
    output = str(tmp_path / "runs")
    code, envelope = run_cli(capsys, "solve-ef", "--source", chain, "--target", chain, "--rounds", "2",
        "--output", output)
    assert code == EXIT_SUCCESS and envelope["result"]["winner"] == "II"
    report = os.path.join(output, "solve-ef", "solve-ef.json")
    code, envelope = run_cli(capsys, "adversary", "--source", chain, "--target", chain, "--strategy", report,
        "--rounds", "2")
    assert code == EXIT_SUCCESS and envelope["status"] == "success"


@pytest.mark.slow
def test_embedding_pipeline_through_files(capsys, tmp_path):
    output = str(tmp_path / "runs")
    assert main(["gen-instances", "--kind", "embedding", "--seed", "3", "--output", output]) == EXIT_SUCCESS
    capsys.readouterr()
    instance = os.path.join(output, "gen-instances", "instance-0")

    def role(name):
        return os.path.join(instance, name + ".json")

    def report(subcommand):
        return os.path.join(output, subcommand, subcommand + ".json")

    assert main(["derive-family", "--square", role("square"), "--max-type-length", "3",
        "--output", output]) == EXIT_SUCCESS
    assert main(["pullback", "--derived", report("derive-family"), "--witness", role("witness"),
        "--filter", role("filter"), "--output", output]) == EXIT_SUCCESS
    assert main(["build-embedding", "--source", role("source"), "--target", role("target"),
        "--delta", role("delta"), "--filter", role("filter"), "--witness", role("witness"),
        "--family", report("pullback"), "--audit-vars", "2", "--output", output]) == EXIT_SUCCESS
    capsys.readouterr()
    code, envelope = run_cli(capsys, "verify-embedding", "--source", role("source"), "--target", role("target"),
        "--delta", role("delta"), "--filter", role("filter"), "--embedding", report("build-embedding"))
    assert code == EXIT_SUCCESS
    assert envelope["report"]["conditions"][0]["name"] == "preservation"


def test_strict_reading_of_type_up_sets_is_refused(capsys, tmp_path):
    from modelforge.coherence.square_witness import SquareWitness

    square = write_json(tmp_path, "square", SquareWitness.trivial(3).to_json())
    code, error = run_cli(capsys, "derive-family", "--square", square, "--strict-paper")
    assert code == EXIT_INPUT and error["error"] == "precondition-error"


def test_derive_family_refuses_shared_types(capsys, tmp_path):
    from modelforge.coherence.witness_generator import forest_witness

    twins = forest_witness([None, 0, None, 2], [0, 1, 0, 1], 2)
    square = write_json(tmp_path, "square", twins.to_json())
    code, envelope = run_cli(capsys, "check-square", "--square", square)
    assert code == EXIT_SUCCESS
    assert envelope["result"]["shared"]["realizations"] == [[0, 1], [2, 3]]
    code, error = run_cli(capsys, "derive-family", "--square", square)
    assert code == EXIT_INPUT and error["error"] == "precondition-error"


@pytest.mark.parametrize("seed", range(6))
def test_generated_squares_pass_derive_family(capsys, tmp_path, seed):
    instance = generate_instances("square", seed=seed, parameters={"size": 3 + seed % 6})[0]
    square = write_json(tmp_path, "square", instance["square"])
    code, envelope = run_cli(capsys, "check-square", "--square", square)
    assert code == EXIT_SUCCESS and envelope["result"]["shared"] is None
    code, envelope = run_cli(capsys, "derive-family", "--square", square)
    assert code == EXIT_SUCCESS and envelope["status"] == "success"


def test_run_config_checks():
    with pytest.raises(AssertionError):
        RunConfig("unknown")
    with pytest.raises(AssertionError):
        RunConfig("solve-ef", jobs=0)
    assert RunConfig("solve-ef").to_dict()["budget_depth"] == 4
