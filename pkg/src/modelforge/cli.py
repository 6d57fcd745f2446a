#*------------------------------------------------------------------------------*
#* MODELFORGE -                                                                 *
#*                                                                              *
#* A finite-model-theory workbench: reduced products, coherent families,        *
#* Delta-embeddings and Ehrenfeucht-Fraisse games on finite structures.         *
#* Copyright (C) 2026  MODELFORGE developers                                    *
#*                                                                              *
#* This program is free software: you can redistribute it and/or modify         *
#* it under the terms of the GNU General Public License as published by         *
#* the Free Software Foundation, either version 3 of the License, or            *
#* (at your option) any later version.                                          *
#*                                                                              *
#* This program is distributed in the hope that it will be useful,              *
#* but WITHOUT ANY WARRANTY; without even the implied warranty of               *
#* MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the                *
#* GNU General Public License for more details.                                 *
#*                                                                              *
#* You should have received a copy of the GNU General Public License            *
#* along with this program.  If not, see <https://www.gnu.org/licenses/>.       *
#*                                                                              *
#*------------------------------------------------------------------------------*

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor, TimeoutError
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from modelforge.embedding.theta_ladder import MODES
from modelforge.errors import BudgetExceededError, InputError, ModelforgeError
from modelforge.games.interactive import HUMAN_SIDES
from modelforge.input_reader import InputReader
from modelforge.instance_generator import DICT_INSTANCE_KIND
from modelforge.io_utils.output_writer import dumps
from modelforge.workbench_manager import WorkbenchManager

EXIT_SUCCESS    = 0
EXIT_VIOLATION  = 1
EXIT_INPUT      = 2
EXIT_BUDGET     = 3

BUDGET_ENV = "MODELFORGE_BUDGET_MS"

DICT_SUBCOMMAND = {
    'eval':                 'evaluate_formulas',
    'type':                 'delta_type',
    'flatten':              'flatten',
    'reduce':               'reduce',
    'los-check':            'los_check',
    'check-coherent':       'check_coherent',
    'check-square':         'check_square',
    'derive-family':        'derive_family',
    'pullback':             'pullback',
    'derive-s':             'derive_s',
    'build-theta':          'build_theta',
    'build-embedding':      'build_embedding',
    'verify-embedding':     'verify_embedding',
    'solve-ef':             'solve_ef',
    'compose-ef':           'compose_ef',
    'adversary':            'adversary',
    'play':                 'play',
    'gen-instances':        'gen_instances',
}

INPUT_ROLES = tuple(InputReader.ROLE_KINDS)


@dataclass
class RunConfig:
    """Configuration of one workbench run. Identical configurations give
    byte-identical reports."""

    subcommand: str
    inputs: Dict[str, str] = field(default_factory=dict)
    formulas: List[str] = field(default_factory=list)
    elements: List[int] = field(default_factory=list)
    seed: int = 0
    budget_depth: int = 4
    budget_size: int = 8
    budget_quotient: int = 10**6
    budget_adversary: int = 2 * 10**6
    b_bound: int = 2
    strict_paper: bool = False
    pretty: bool = False
    jobs: int = 1
    output: Optional[str] = None
    h5: bool = False
    log_level: str = "WARNING"
    max_type_length: int = 4
    audit_vars: int = 3
    mode: str = "embedding"
    rounds: Optional[int] = None
    rank: int = 2
    index: Optional[int] = None
    element: Optional[int] = None
    group_count: int = 2
    human_side: str = "I"
    kind: str = "embedding"
    count: int = 1
    parameters: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        assert self.subcommand in DICT_SUBCOMMAND, \
            "unknown subcommand '%s', choose one of %s" % (self.subcommand, list(DICT_SUBCOMMAND))
        for name in ("budget_depth", "budget_size", "budget_quotient", "budget_adversary", "jobs",
                "max_type_length", "audit_vars", "group_count", "count"):
            assert getattr(self, name) > 0, "%s must be positive, got %s" % (name, getattr(self, name))
        assert self.b_bound >= 0, "b-bound must be a natural number"
        assert self.rank >= 0, "sentence rank must be a natural number"
        assert self.rounds is None or self.rounds >= 0, "number of rounds must be a natural number"
        assert 0 <= self.seed < 2**64, "seed must be a 64-bit natural number"
        assert self.mode in MODES, "mode must be one of %s" % list(MODES)
        assert self.human_side in HUMAN_SIDES, "human side must be one of %s" % list(HUMAN_SIDES)
        assert self.kind in DICT_INSTANCE_KIND, "instance kind must be one of %s" % list(DICT_INSTANCE_KIND)

    def to_dict(self, paths: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
        data = asdict(self)
        if paths is not None:
            data["inputs"] = dict(paths)
        return data


def _parameter(text: str) -> Tuple[str, Any]:
    key, separator, value = text.partition("=")
    if not separator or not key:
        raise argparse.ArgumentTypeError("expected key=value, got '%s'" % text)
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def _elements(text: str) -> List[int]:
    try:
        return [int(token) for token in text.replace(",", " ").split()]
    except ValueError as error:
        raise argparse.ArgumentTypeError("expected a list of elements, got '%s'" % text) from error


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modelforge",
        description="Finite model theory workbench: formulas, reduced products, coherent families, "
            "Delta-embeddings into reduced powers and Ehrenfeucht-Fraisse games.")
    parser.add_argument("subcommand", choices=list(DICT_SUBCOMMAND))

    inputs = parser.add_argument_group("inputs", "JSON instance files, reports of earlier runs are accepted")
    for role in INPUT_ROLES:
        inputs.add_argument("--" + role.replace("_", "-"), dest="input_" + role, metavar="PATH",
            help="%s file" % role.replace("_", " "))

    parser.add_argument("--formula", dest="formulas", action="append", default=[],
        help="formula text, may be repeated")
    parser.add_argument("--tuple", dest="elements", type=_elements, default=[],
        help="elements assigned to x0, x1, ..., e.g. '0,2'")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget-depth", type=int, default=4, help="maximal number of EF rounds")
    parser.add_argument("--budget-size", type=int, default=8, help="maximal universe size for the EF solver")
    parser.add_argument("--budget-quotient", type=int, default=10**6,
        help="maximal number of choice functions or tuples enumerated")
    parser.add_argument("--budget-adversary", type=int, default=2 * 10**6, help="maximal adversary nodes")
    parser.add_argument("--b-bound", type=int, default=2, help="subset bound of coherence condition (iii)")
    parser.add_argument("--strict-paper", action="store_true",
        help="refuse the ill-typed reading of the up-sets of types")
    parser.add_argument("--pretty", action="store_true", help="indented JSON output")
    parser.add_argument("--jobs", type=int, default=1, help="number of worker threads")
    parser.add_argument("--output", default=None, help="folder for reports, transcripts and h5 dumps")
    parser.add_argument("--h5", action="store_true", help="dump arrays to h5 files in the output folder")
    parser.add_argument("--log-level", default="WARNING")
    parser.add_argument("--max-type-length", type=int, default=4)
    parser.add_argument("--audit-vars", type=int, default=3, help="variables of the transfer audit")
    parser.add_argument("--mode", choices=list(MODES), default="embedding")
    parser.add_argument("--rounds", type=int, default=None)
    parser.add_argument("--rank", type=int, default=2, help="quantifier rank of the los-check sentence corpus")
    parser.add_argument("--index", type=int, default=None)
    parser.add_argument("--element", type=int, default=None)
    parser.add_argument("--group-count", type=int, default=2)
    parser.add_argument("--human-side", choices=list(HUMAN_SIDES), default="I")
    parser.add_argument("--kind", choices=list(DICT_INSTANCE_KIND), default="embedding")
    parser.add_argument("--count", type=int, default=1)
    parser.add_argument("--param", dest="parameters", type=_parameter, action="append", default=[],
        help="generator parameter key=value, may be repeated")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    inputs = {role: getattr(args, "input_" + role) for role in INPUT_ROLES
        if getattr(args, "input_" + role) is not None}
    return RunConfig(
        subcommand          = args.subcommand,
        inputs              = inputs,
        formulas            = list(args.formulas),
        elements            = list(args.elements),
        seed                = args.seed,
        budget_depth        = args.budget_depth,
        budget_size         = args.budget_size,
        budget_quotient     = args.budget_quotient,
        budget_adversary    = args.budget_adversary,
        b_bound             = args.b_bound,
        strict_paper        = args.strict_paper,
        pretty              = args.pretty,
        jobs                = args.jobs,
        output              = args.output,
        h5                  = args.h5,
        log_level           = args.log_level,
        max_type_length     = args.max_type_length,
        audit_vars          = args.audit_vars,
        mode                = args.mode,
        rounds              = args.rounds,
        rank                = args.rank,
        index               = args.index,
        element             = args.element,
        group_count         = args.group_count,
        human_side          = args.human_side,
        kind                = args.kind,
        count               = args.count,
        parameters          = dict(args.parameters))


def print_error(kind: str, message: str, **details: Any) -> None:
    print(dumps({"error": kind, "message": message, **details}), flush=True)


def budget_ms() -> Optional[int]:
    value = os.environ.get(BUDGET_ENV)
    if value is None or not value.strip():
        return None
    try:
        milliseconds = int(value)
    except ValueError:
        raise InputError("%s must be a positive integer, got '%s'" % (BUDGET_ENV, value))
    if milliseconds <= 0:
        raise InputError("%s must be a positive integer, got '%s'" % (BUDGET_ENV, value))
    return milliseconds


def run(config: RunConfig) -> int:
    """Runs one subcommand, prints the report envelope to stdout and
    returns the exit code: 0 on success, 1 on a property violation,
    2 on an input or precondition error and 3 on an exceeded budget."""
    try:
        input_reader = InputReader(config.inputs)
        manager = WorkbenchManager(input_reader, config)
        method_name = DICT_SUBCOMMAND[config.subcommand]
        timeout = budget_ms()
        if timeout is None:
            envelope = manager.run(method_name)
        else:
            executor = ThreadPoolExecutor(max_workers=1)
            future = executor.submit(manager.run, method_name)
            try:
                envelope = future.result(timeout=timeout / 1000.0)
            except TimeoutError:
                print_error(BudgetExceededError.kind, "wall time budget of %d ms exceeded" % timeout)
                sys.stdout.flush()
                # the worker thread cannot be stopped
                os._exit(EXIT_BUDGET)
            executor.shutdown(wait=False)
    except BudgetExceededError as error:
        print_error(error.kind, str(error), explored_fraction=error.explored_fraction)
        return EXIT_BUDGET
    except ModelforgeError as error:
        print_error(error.kind, str(error))
        return EXIT_INPUT
    except AssertionError as error:
        print_error("input-error", str(error))
        return EXIT_INPUT

    print(dumps(envelope, config.pretty), flush=True)
    return EXIT_SUCCESS if envelope["status"] == "success" else EXIT_VIOLATION


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except AssertionError as error:
        print_error("input-error", str(error))
        return EXIT_INPUT
    return run(config)
