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

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from modelforge.coherence.coherent_family import CoherentFamily, check_coherent
from modelforge.embedding.partition import delta_partition
from modelforge.embedding.theta_ladder import ThetaLadder
from modelforge.errors import DimensionMismatchError, InputError, PreconditionError, WitnessNotFound
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.filters.reduced_product import reduced_power
from modelforge.filters.regularity_witness import RegularityWitness
from modelforge.logic.delta import DeltaSet
from modelforge.logic.evaluator import evaluate_tuple
from modelforge.logic.formula import Exists
from modelforge.logic.structure import FinStructure
from modelforge.report import CheckReport


@dataclass
class TraceEntry:
    index: int
    element: int
    case: str
    formula: str
    parameters: Tuple[int, ...]
    witness: int

    def to_json(self) -> Dict:
        return {"i": self.index, "zeta": self.element, "case": self.case, "formula": self.formula,
            "parameters": list(self.parameters), "witness": self.witness}


@dataclass
class EmbeddingResult:
    """Matrix f with f[zeta][i] in N, the ladder it was built from, the
    trace of witness choices and, when the reduced power is small
    enough, the class of every row in N^I/D."""

    f: np.ndarray
    ladder: Optional[ThetaLadder]
    index_filter: FilterOnIndex
    trace: List[TraceEntry] = field(default_factory=list)
    class_map: Optional[List[int]] = None

    @property
    def representatives(self) -> List[Tuple[int, ...]]:
        """Canonical representative of the class of every row."""
        kernel = self.index_filter.kernel
        return [tuple(int(x) if i in kernel else 0 for i, x in enumerate(row)) for row in self.f]

    def to_json(self) -> Dict:
        data = {
            "f": self.f.tolist(),
            "representatives": [list(r) for r in self.representatives],
            "trace": [entry.to_json() for entry in self.trace],
        }
        if self.class_map is not None:
            data["class_map"] = list(self.class_map)
        return data

    @classmethod
    def from_json(cls, data: Dict, index_filter: FilterOnIndex) -> "EmbeddingResult":
        """Reads a matrix written by to_json. The ladder and trace are not
        stored and stay empty."""
        try:
            f = np.asarray(data["f"], dtype=int)
        except (KeyError, ValueError, TypeError) as error:
            raise InputError("malformed embedding file: %s" % error) from error
        if f.ndim != 2 or f.shape[1] != index_filter.index_size:
            raise DimensionMismatchError("embedding matrix of shape %s for %d indices"
                % (list(f.shape), index_filter.index_size))
        return cls(f, None, index_filter, [], data.get("class_map"))


def _case_label(ladder: ThetaLadder, i: int, zeta: int) -> str:
    if ladder.m(i, zeta) == 0:
        return "1.1"
    if ladder.is_base_case(i, zeta):
        return "1.2"
    return "2"


def _build_row(ladder: ThetaLadder, target: FinStructure, i: int) -> Tuple[List[int], List[TraceEntry]]:
    chosen: Dict[int, int] = {}
    trace = []
    for zeta in range(ladder.family.element_count):
        theta = ladder.theta(i, zeta)
        parameters = tuple(chosen[xi] for xi in ladder.family.sorted_u(zeta, i))
        witness = next((b for b in target.universe if evaluate_tuple(target, theta, parameters + (b,))), None)
        if witness is None:
            raise WitnessNotFound(i, zeta, str(Exists(len(parameters), theta)), parameters)
        chosen[zeta] = witness
        trace.append(TraceEntry(i, zeta, _case_label(ladder, i, zeta), str(theta), parameters, witness))
    return [chosen[zeta] for zeta in range(ladder.family.element_count)], trace


def build_embedding(source: FinStructure, target: FinStructure, delta: DeltaSet, index_filter: FilterOnIndex,
        witness: RegularityWitness, family: CoherentFamily, b: int = 2, mode: str = "embedding",
        jobs: int = 1, quotient_budget: int = 10**6) -> EmbeddingResult:
    """Builds f[zeta][i] by induction on zeta, independently for every
    index i. The element chosen at stage zeta is the least b in N with
    N satisfying theta[i][zeta] at the already chosen images of
    u[zeta][i] followed by b.

    :param source: The structure M.
    :type source: FinStructure
    :param target: The structure N.
    :type target: FinStructure
    :param delta: The formulas phi_alpha.
    :type delta: DeltaSet
    :param index_filter: Filter D on the index set.
    :type index_filter: FilterOnIndex
    :param witness: Sets A_alpha, one per formula.
    :type witness: RegularityWitness
    :param family: Coherent family on the elements of M.
    :type family: CoherentFamily
    :param b: Bound of condition (iii) in the coherence precondition.
    :type b: int
    :param mode: "embedding" or "homomorphism".
    :type mode: str
    :param jobs: Number of worker threads over the indices.
    :type jobs: int
    :param quotient_budget: Budget for materializing N^I/D for the class map.
    :type quotient_budget: int
    :raises PreconditionError: The family is not coherent with respect to D.
    :raises WitnessNotFound: Some existential has no witness in N.
    :return: The matrix f, the trace and the class map.
    :rtype: EmbeddingResult
    """
    if family.index_size != index_filter.index_size:
        raise DimensionMismatchError("family has %d indices, filter %d" % (family.index_size, index_filter.index_size))
    report = check_coherent(family, index_filter, b)
    if not report.passed:
        failure = report.failures()[0]
        raise PreconditionError("family is not coherent, condition (%s) fails at %s"
            % (failure.name, failure.counterexample))

    parts = delta_partition(delta, witness, index_filter.index_size)
    ladder = ThetaLadder(source, family, parts, mode)
    indices = range(index_filter.index_size)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            rows = list(executor.map(lambda i: _build_row(ladder, target, i), indices))
    else:
        rows = [_build_row(ladder, target, i) for i in indices]

    f = np.zeros((source.universe_size, index_filter.index_size), dtype=int)
    trace: List[TraceEntry] = []
    for i, (row, row_trace) in enumerate(rows):
        f[:, i] = row
        trace.extend(row_trace)
    trace.sort(key=lambda entry: (entry.element, entry.index))

    result = EmbeddingResult(f, ladder, index_filter, trace)
    power = reduced_power(target, index_filter, quotient_budget)
    if power.product_size <= quotient_budget:
        result.class_map = [power.class_index(row) for row in f]
    return result


def replay_induction_hypothesis(result: EmbeddingResult, target: FinStructure) -> CheckReport:
    """Checks that N satisfies theta[i][zeta] at the images of u[zeta][i]
    followed by f[zeta][i], for every i and zeta."""
    if result.ladder is None:
        raise InputError("the induction hypothesis can only be replayed on a result of build_embedding")
    ladder = result.ladder
    report = CheckReport("induction hypothesis")
    failure = None
    for zeta in range(ladder.family.element_count):
        for i in range(ladder.family.index_size):
            arguments = tuple(int(result.f[xi][i]) for xi in ladder.parameters(i, zeta))
            if not evaluate_tuple(target, ladder.theta(i, zeta), arguments):
                failure = {"i": i, "zeta": zeta, "arguments": list(arguments)}
                break
        if failure:
            break
    report.add("IH", failure is None, failure)
    return report
