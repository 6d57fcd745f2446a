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

import sys
import time
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

import numpy as np

from modelforge.coherence.coherent_family import CoherentFamily, check_coherent
from modelforge.coherence.derivation import coverage_report, derive_family
from modelforge.coherence.levels import TypeSpace, levels_tree
from modelforge.coherence.pullback import enumerate_generators, pullback
from modelforge.coherence.s_family import build_groups, derive_s_family
from modelforge.coherence.square_witness import check_square_witness
from modelforge.embedding.builder import EmbeddingResult, build_embedding, replay_induction_hypothesis
from modelforge.embedding.partition import delta_partition
from modelforge.embedding.theta_ladder import ThetaLadder
from modelforge.embedding.verification import transfer_audit, verify_delta_embedding
from modelforge.errors import InputError, PreconditionError, RejectionError
from modelforge.filters.los import los_agreement
from modelforge.filters.reduced_product import reduced_product
from modelforge.games.adversary import exhaustive_adversary_check
from modelforge.games.arena import Arena, ProductArena, StructureArena
from modelforge.games.composition import compose_strategy, good_position_witness
from modelforge.games.interactive import play_interactive, replay_transcript
from modelforge.games.position import GamePosition
from modelforge.games.solver import solve_ef
from modelforge.input_reader import InputReader
from modelforge.instance_generator import generate_instances
from modelforge.io_utils.logger import Logger
from modelforge.io_utils.output_writer import OutputWriter
from modelforge.logic.delta import delta_type, positive_delta_type
from modelforge.logic.enumeration import enumerate_sentences
from modelforge.logic.evaluator import evaluate_tuple
from modelforge.logic.formula import Formula, to_text
from modelforge.logic.normal_forms import flatten_to_existential, flatten_to_weakly_existential
from modelforge.logic.parser import parse_formulas
from modelforge.logic.vocabulary import Vocabulary
from modelforge.report import CheckReport

if TYPE_CHECKING:
    from modelforge.cli import RunConfig

Outcome = Tuple[CheckReport, Dict]


def terminal_output(line: str) -> None:
    print(line, file=sys.stderr, flush=True)


def terminal_input(prompt: str) -> str:
    """Prompts on stderr, stdout is reserved for the report."""
    print(prompt, end="", file=sys.stderr, flush=True)
    line = sys.stdin.readline()
    if not line:
        raise InputError("input closed during interactive play")
    return line


class WorkbenchManager:
    """ The WorkbenchManager is the top-level class in MODELFORGE. It
    runs one subcommand of the workbench on the instances provided by
    an InputReader and the budgets and flags of a RunConfig.

    Every subcommand method returns a CheckReport and the JSON result of
    the construction. run() wraps both into the report envelope
    {"subcommand", "status", "report", "result"} which is printed by the
    cli and, if an output folder is configured, written together with
    the run configuration, transcripts and h5 dumps.

    The status is "success" if every condition of the report passed and
    "violation" otherwise.
    """

    def __init__(self, input_reader: InputReader, run_config: "RunConfig") -> None:

        self.input_reader   = input_reader
        self.config         = run_config

        self.logger = Logger("modelforge", run_config.log_level)

        self.output_writer: Optional[OutputWriter] = None
        if run_config.output is not None:
            self.output_writer = OutputWriter(
                save_path   = run_config.output,
                case_name   = run_config.subcommand,
                pretty      = run_config.pretty,
                is_h5       = run_config.h5)

        # FILLED BY THE SUBCOMMANDS
        self.arrays: Dict[str, np.ndarray] = {}
        self.transcripts: List[Dict] = []
        self.instances: List[Dict] = []

    def run(self, method_name: str) -> Dict:
        """Runs the subcommand method and returns the report envelope.

        :param method_name: Name of the WorkbenchManager method of the subcommand.
        :type method_name: str
        :return: The report envelope.
        :rtype: Dict
        """
        log_path = None
        if self.output_writer is not None:
            self.output_writer.create_folder(self.config.to_dict(self.input_reader.paths()))
            log_path = self.output_writer.save_path_case
        self.logger.configure_logger(log_path)
        self.logger.log_initialization()
        self.logger.log_setup(self.config.to_dict(self.input_reader.paths()))
        self.logger.log_subcommand_start(self.config.subcommand)

        start = time.time()
        report, result = getattr(self, method_name)()
        status = "success" if report.passed else "violation"

        envelope = {
            "subcommand":   self.config.subcommand,
            "status":       status,
            "report":       report.to_json(),
            "result":       result,
        }
        self.logger.log_report({condition.name: condition.passed for condition in report.conditions})
        self._write_output(envelope)
        self.logger.log_subcommand_finish(status.upper(), time.time() - start)
        return envelope

    def _write_output(self, envelope: Dict) -> None:
        if self.output_writer is None:
            return
        name = self.config.subcommand
        self.output_writer.write_report(name, envelope)
        if self.transcripts:
            self.output_writer.write_jsonl(name, self.transcripts)
        for k, instance in enumerate(self.instances):
            self.output_writer.write_instance(k, instance)
        path = self.output_writer.write_h5file(name, self.arrays)
        if path is not None:
            self.logger.log_step(["h5 dump written to %s.h5" % name])

    # HELPERS
    def _formulas(self, vocabulary: Vocabulary) -> List[Formula]:
        if not self.config.formulas:
            raise InputError("subcommand %s needs at least one --formula" % self.config.subcommand)
        return parse_formulas(self.config.formulas, vocabulary)

    def _delta_formulas(self, vocabulary: Vocabulary) -> List[Formula]:
        if "delta" in self.input_reader:
            return list(self.input_reader["delta"].formulas)
        return self._formulas(vocabulary)

    def _arena(self) -> Arena:
        reader = self.input_reader
        if "source_factors" in reader or "target_factors" in reader:
            return ProductArena(reader["source_factors"], reader["target_factors"], reader["filter"])
        return StructureArena(reader["source"], reader["target"])

    def _rounds(self) -> int:
        if self.config.rounds is None:
            raise InputError("subcommand %s needs --rounds" % self.config.subcommand)
        return self.config.rounds

    def _family(self) -> CoherentFamily:
        if "family" in self.input_reader:
            return self.input_reader["family"]
        return self.input_reader["derived"]["family"]

    # LOGIC
    def evaluate_formulas(self) -> Outcome:
        structure   = self.input_reader["structure"]
        elements    = tuple(self.config.elements)
        values      = []
        for formula in self._formulas(structure.vocabulary):
            values.append({"formula": to_text(formula), "value": evaluate_tuple(structure, formula, elements)})
        self.logger.log_step(["%s : %s" % (entry["formula"], entry["value"]) for entry in values])
        return CheckReport("eval"), {"elements": list(elements), "values": values}

    def delta_type(self) -> Outcome:
        structure   = self.input_reader["structure"]
        formulas    = self._delta_formulas(structure.vocabulary)
        type_fn     = positive_delta_type if self.config.mode == "homomorphism" else delta_type
        result      = type_fn(structure, formulas, tuple(self.config.elements))
        return CheckReport("type"), {"elements": list(self.config.elements), "type": to_text(result)}

    def flatten(self) -> Outcome:
        delta       = self.input_reader["delta"]
        flatten_fn  = flatten_to_existential if self.config.mode == "homomorphism" else flatten_to_weakly_existential
        report      = CheckReport("flatten")
        results     = []
        rejection   = None
        for formula in self._formulas(delta.vocabulary):
            try:
                results.append({"formula": to_text(formula), "flattened": to_text(flatten_fn(formula, delta.formulas))})
            except RejectionError as error:
                results.append({"formula": to_text(formula), "flattened": None})
                rejection = rejection or {"formula": to_text(formula), "reason": str(error)}
        report.add("accepted", rejection is None, rejection, mode=self.config.mode)
        return report, {"formulas": results}

    # FILTERS
    def reduce(self) -> Outcome:
        factors     = self.input_reader["source_factors"]
        index_filter = self.input_reader["filter"]
        product     = reduced_product(factors, index_filter, self.config.budget_quotient)
        quotient    = product.materialize()
        self.logger.log_step(["factor sizes %s, kernel %s" % (list(product.sizes), sorted(product.kernel)),
            "%d classes out of %d choice functions" % (product.class_count, product.product_size)])
        self.arrays = {"tables/%s" % name: quotient.array(name) for name in quotient.vocabulary.names}
        result = {
            "kernel":           sorted(product.kernel),
            "representatives":  [list(product.representative(k)) for k in range(product.class_count)],
            "quotient":         quotient.to_json(),
        }
        return CheckReport("reduce"), result

    def los_check(self) -> Outcome:
        factors     = self.input_reader["source_factors"]
        index_filter = self.input_reader["filter"]
        if self.config.formulas:
            sentences = parse_formulas(self.config.formulas, factors[0].vocabulary)
        else:
            sentences = enumerate_sentences(factors[0].vocabulary, self.config.rank)
        report = los_agreement(factors, index_filter, sentences, self.config.budget_quotient)
        self.logger.log_step(["%d sentences checked" % report["agreement"].details["checked"]])
        return report, {"index": index_filter.ultrafilter_index()}

    # COHERENT FAMILIES
    def check_coherent(self) -> Outcome:
        family = self._family()
        self.arrays = {"incidence": family.incidence()}
        report = check_coherent(family, self.input_reader["filter"], self.config.b_bound)
        return report, {"element_count": family.element_count, "index_size": family.index_size,
            "caps": list(family.caps)}

    def check_square(self) -> Outcome:
        witness = self.input_reader["square"]
        report  = check_square_witness(witness)
        result: Dict = {"order_size": witness.order_size, "level_count": witness.level_count}
        if not report.passed:
            return report, result

        trees = [levels_tree(witness, zeta) for zeta in range(witness.level_count)]
        for tree in trees:
            report.extend(tree.verdict, prefix="level %d " % tree.level)
        space = TypeSpace(witness, self.config.max_type_length, self.config.budget_quotient)
        report.extend(space.directedness(), prefix="types ")
        result["levels"]    = [tree.to_json() for tree in trees]
        result["types"]     = len(space)
        result["shared"]    = space.shared_type()
        return report, result

    def derive_family(self) -> Outcome:
        if self.config.strict_paper:
            raise PreconditionError("the up-set of a type t* read with the order of L compares types with "
                "elements of L and is ill-typed, run without --strict-paper for the order on types")
        witness = self.input_reader["square"]
        derived = derive_family(witness, self.config.max_type_length, self.config.budget_quotient)
        self.logger.log_step(["%d types, %d elements" % (len(derived.space), derived.family.element_count)])
        shared = derived.space.shared_type()
        if shared is not None:
            raise PreconditionError("type %d is realized by %s and by %s, the family on types needs every type "
                "of two or more elements realized once" % (shared["type"], *shared["realizations"]))

        report = CheckReport("derive family")
        report.extend(coverage_report(witness, derived, self.config.b_bound))
        report.extend(check_coherent(derived.family, derived.index_filter, self.config.b_bound), prefix="coherent ")
        report.extend(derived.space.directedness(), prefix="types ")
        self.arrays = {"incidence": derived.family.incidence()}
        return report, derived.to_json()

    def pullback(self) -> Outcome:
        derived         = self.input_reader["derived"]
        witness         = self.input_reader["witness"]
        index_filter    = self.input_reader["filter"]
        generators      = enumerate_generators(derived["generators"], len(witness))
        result          = pullback(derived["family"], generators, witness, index_filter.index_size)
        self.logger.log_step(["h = %s" % list(result.h)])

        report = CheckReport("pullback")
        report.extend(witness.validate(index_filter), prefix="witness ")
        report.extend(check_coherent(result.family, index_filter, self.config.b_bound), prefix="coherent ")
        self.arrays = {"incidence": result.family.incidence()}
        return report, result.to_json()

    def derive_s(self) -> Outcome:
        reader = self.input_reader
        family = self._family()
        if "groups" in reader:
            groups = reader["groups"]
            generators, members, caps = groups["generators"], groups["groups"], groups["caps"]
        else:
            if "derived" in reader:
                generators = list(reader["derived"]["generators"])
            else:
                generators = list(reader["witness"].sets)
            generators, members, caps = build_groups(generators, self.config.group_count,
                cap_floor=family.element_count)
            self.logger.log_step(["built %d groups over %d generators" % (len(members), len(generators))])
        s_family, report = derive_s_family(family, generators, members, caps)
        result = {"generators": [sorted(A) for A in generators], "groups": members, "s_family": s_family.to_json()}
        return report, result

    # EMBEDDING
    def build_theta(self) -> Outcome:
        reader  = self.input_reader
        family  = self._family()
        i, zeta = self.config.index, self.config.element
        if i is None or zeta is None:
            raise InputError("build-theta needs --index and --element")
        if not (0 <= i < family.index_size and 0 <= zeta < family.element_count):
            raise InputError("(i, zeta) = (%d, %d) outside of the family" % (i, zeta))
        parts   = delta_partition(reader["delta"], reader["witness"], family.index_size)
        ladder  = ThetaLadder(reader["source"], family, parts, self.config.mode)
        theta   = ladder.theta(i, zeta)
        result = {
            "i":            i,
            "zeta":         zeta,
            "m":            ladder.m(i, zeta),
            "parameters":   list(ladder.parameters(i, zeta)),
            "extensions":   ladder.extensions(i, zeta),
            "base_case":    ladder.is_base_case(i, zeta),
            "theta":        to_text(theta),
        }
        return CheckReport("build theta"), result

    def build_embedding(self) -> Outcome:
        reader  = self.input_reader
        source, target, delta = reader["source"], reader["target"], reader["delta"]

        report = transfer_audit(source, target, delta, self.config.audit_vars, self.config.mode,
            self.config.budget_quotient)
        if not report.passed:
            self.logger.log_budget_warning("transfer audit failed, a witness may be missing")
        result = build_embedding(source, target, delta, reader["filter"], reader["witness"], self._family(),
            self.config.b_bound, self.config.mode, self.config.jobs, self.config.budget_quotient)
        self.logger.log_step(["f has shape %s, %d trace entries" % (list(result.f.shape), len(result.trace))])

        report.extend(replay_induction_hypothesis(result, target))
        self.arrays = {"f": result.f}
        return report, result.to_json()

    def verify_embedding(self) -> Outcome:
        reader          = self.input_reader
        index_filter    = reader["filter"]
        result          = EmbeddingResult.from_json(reader["embedding"], index_filter)
        report = verify_delta_embedding(reader["source"], reader["target"], index_filter, result, reader["delta"],
            mode=self.config.mode, quotient_budget=self.config.budget_quotient)
        return report, {"shape": list(result.f.shape)}

    # GAMES
    def solve_ef(self) -> Outcome:
        reader  = self.input_reader
        result  = solve_ef(reader["source"], reader["target"], self._rounds(), self.config.budget_depth,
            self.config.budget_size)
        self.logger.log_step(["player %s wins EF_%d" % (result.winner, result.rounds)])
        report = CheckReport("solve ef")
        if result.winner == "II":
            report.add("certified", result.certified, {"rounds": result.rounds})
        return report, result.to_json()

    def compose_ef(self) -> Outcome:
        reader      = self.input_reader
        family      = self._family()
        strategies  = reader["strategies"]
        composed    = compose_strategy(reader["source_factors"], reader["target_factors"], reader["filter"], family,
            strategies, self.config.b_bound)
        arena       = composed.arena
        length      = family.element_count if self.config.rounds is None else self.config.rounds

        bad_positions: List[Dict] = []

        def on_position(position: GamePosition) -> bool:
            witness = good_position_witness(position, family, strategies)
            if witness is not None and not bad_positions:
                bad_positions.append({"zeta": witness[0], "i": witness[1], "position": position.to_json()})
            return witness is None

        adversary = exhaustive_adversary_check(arena, composed, length, self.config.budget_adversary,
            on_position=on_position, jobs=self.config.jobs)
        report = adversary.to_report()
        report.add("good positions", not bad_positions, bad_positions[0] if bad_positions else None)
        self.logger.log_step(["%d I-moves explored over %d rounds" % (adversary.explored, length)])
        return report, {"strategy": composed.to_json(), "length": length}

    def adversary(self) -> Outcome:
        arena       = self._arena()
        strategy    = self.input_reader["strategy"]
        result      = exhaustive_adversary_check(arena, strategy, self._rounds(), self.config.budget_adversary,
            jobs=self.config.jobs)
        if result.transcript is not None:
            self.transcripts = result.transcript.to_json()
        return result.to_report(), {"explored": result.explored}

    def play(self) -> Outcome:
        reader      = self.input_reader
        arena       = self._arena()
        strategy    = reader["strategy"] if "strategy" in reader else None
        if "transcript" in reader:
            transcript = reader["transcript"]
            return replay_transcript(arena, strategy, transcript), {"transcript": transcript.to_json()}

        transcript = play_interactive(arena, strategy, self._rounds(), self.config.human_side, seed=self.config.seed,
            input_fn=terminal_input, output_fn=terminal_output)
        self.transcripts = transcript.to_json()
        report = replay_transcript(arena, strategy if self.config.human_side == "I" else None, transcript)
        return report, {"transcript": transcript.to_json()}

    # INSTANCES
    def gen_instances(self) -> Outcome:
        self.instances = generate_instances(self.config.kind, self.config.seed, self.config.count,
            self.config.parameters)
        self.logger.log_step(["%d instances of kind %s" % (len(self.instances), self.config.kind)])
        return CheckReport("gen instances"), {"kind": self.config.kind, "instances": self.instances}
