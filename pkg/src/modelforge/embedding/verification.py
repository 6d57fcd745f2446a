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

from typing import Dict, List, Optional, Tuple

import numpy as np

from modelforge.embedding.builder import EmbeddingResult
from modelforge.embedding.theta_ladder import MODES
from modelforge.errors import BudgetExceededError, InputError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.filters.reduced_product import reduced_power
from modelforge.logic.delta import DeltaSet, delta_instances
from modelforge.logic.evaluator import satisfaction_table
from modelforge.logic.formula import And, Exists, Formula, Not
from modelforge.logic.structure import FinStructure
from modelforge.report import CheckReport

MAX_LISTED_VIOLATIONS = 20


def _checked_formulas(delta: DeltaSet, mode: str) -> List[Formula]:
    if mode not in MODES:
        raise InputError("unknown mode '%s', choose one of %s" % (mode, list(MODES)))
    formulas = list(delta)
    if mode == "embedding":
        formulas += [Not(phi) for phi in delta]
    return formulas


def _full_table(structure: FinStructure, formula: Formula, width: int) -> np.ndarray:
    # satisfaction table broadcast to the axes x_0, ..., x_{width-1}
    table, order = satisfaction_table(structure, formula)
    shape = [structure.universe_size if v in order else 1 for v in range(width)]
    return np.broadcast_to(table.reshape(shape), (structure.universe_size,) * width)


def verify_delta_embedding(source: FinStructure, target: FinStructure, index_filter: FilterOnIndex,
        result: EmbeddingResult, delta: DeltaSet, arity_bound: Optional[int] = None, mode: str = "embedding",
        quotient_budget: int = 10**6) -> CheckReport:
    """Checks the conclusion of the embedding construction: whenever M
    satisfies phi at a tuple of elements, the set of indices i at which
    N satisfies phi at the images f(i) is in D. In embedding mode the
    check runs over every phi in Delta and its negation, in homomorphism
    mode over Delta only.

    If D is an ultrafilter and N^I/D fits the quotient budget, the class
    map is additionally checked to preserve the same formulas into the
    quotient ("quotient" condition).

    :param source: The structure M.
    :type source: FinStructure
    :param target: The structure N, the factor of the power.
    :type target: FinStructure
    :param index_filter: Filter D.
    :type index_filter: FilterOnIndex
    :param result: Output of build_embedding.
    :type result: EmbeddingResult
    :param delta: The formulas phi_alpha.
    :type delta: DeltaSet
    :param arity_bound: Tuple length, defaults to the maximal arity of Delta.
    :type arity_bound: Optional[int]
    :param mode: "embedding" or "homomorphism".
    :type mode: str
    :return: Report with the "preservation" condition and the listed violations.
    :rtype: CheckReport
    """
    arity_bound = delta.max_arity if arity_bound is None else arity_bound
    formulas = _checked_formulas(delta, mode)
    f = np.asarray(result.f, dtype=int)
    if f.shape != (source.universe_size, index_filter.index_size):
        raise InputError("embedding matrix has shape %s, expected %s"
            % (list(f.shape), [source.universe_size, index_filter.index_size]))

    violations: List[Dict] = []
    violation_count = 0
    checked = 0
    skipped = 0
    for phi in formulas:
        if any(v >= arity_bound for v in phi.free_variables()):
            skipped += 1
            continue
        source_table, order = satisfaction_table(source, phi)
        target_table, _ = satisfaction_table(target, phi)
        for elements in np.argwhere(source_table):
            checked += 1
            if order:
                agreement = target_table[tuple(f[a] for a in elements)]
            else:
                agreement = np.full(index_filter.index_size, bool(target_table))
            agreement_set = [int(i) for i in np.flatnonzero(agreement)]
            if not index_filter.member(agreement_set):
                violation_count += 1
                if len(violations) < MAX_LISTED_VIOLATIONS:
                    violations.append({"formula": str(phi),
                        "tuple": {"x%d" % v: int(a) for v, a in zip(order, elements)},
                        "agreement": agreement_set})

    report = CheckReport("delta embedding")
    report.add("preservation", violation_count == 0, {"violations": violations, "count": violation_count},
        checked=checked, skipped=skipped)

    if index_filter.is_ultrafilter():
        power = reduced_power(target, index_filter, quotient_budget)
        if power.product_size <= quotient_budget:
            class_map = [power.class_index(row) for row in f]
            report.add(*_quotient_check(source, power.materialize(), class_map, formulas, arity_bound))
    return report


def _quotient_check(source: FinStructure, quotient: FinStructure, class_map: List[int], formulas: List[Formula],
        arity_bound: int) -> Tuple[str, bool, Optional[Dict]]:
    classes = np.asarray(class_map, dtype=int)
    for phi in formulas:
        if any(v >= arity_bound for v in phi.free_variables()):
            continue
        source_table, order = satisfaction_table(source, phi)
        quotient_table, _ = satisfaction_table(quotient, phi)
        for elements in np.argwhere(source_table):
            if not quotient_table[tuple(classes[a] for a in elements)]:
                return "quotient", False, {"formula": str(phi), "tuple": [int(a) for a in elements]}
    return "quotient", True, None


def existential_closure(formula: Formula, width: int) -> Formula:
    """exists x_0 ... exists x_{width-1}. formula"""
    for v in reversed(range(width)):
        formula = Exists(v, formula)
    return formula


def transfer_audit(source: FinStructure, target: FinStructure, delta: DeltaSet, q: int = 3,
        mode: str = "embedding", tuple_budget: int = 10**6) -> CheckReport:
    """Bounded check of the transfer hypothesis of the construction.

    Every weakly Delta-existential sentence true in M with at most q
    bound variables is implied by the existential closure of the complete
    Delta-type over x_0, ..., x_{q-1} of some q-tuple of M. The audit
    collects the distinct types realized in M and evaluates their closures
    in N. In homomorphism mode only the positive part of each type is
    used, which audits Delta-existential sentences.

    :raises BudgetExceededError: M has more than tuple_budget q-tuples.
    """
    if mode not in MODES:
        raise InputError("unknown mode '%s', choose one of %s" % (mode, list(MODES)))
    assert q >= 1, "the audit needs at least one variable"
    if source.universe_size ** q > tuple_budget:
        raise BudgetExceededError("%d tuples of length %d exceed the budget %d"
            % (source.universe_size ** q, q, tuple_budget))

    instances = delta_instances(delta, q)
    report = CheckReport("transfer audit")
    if source.universe_size == 0:
        report.add("transfer", True, None, types=0)
        return report

    tables = [_full_table(source, phi, q).reshape(-1) for phi in instances]
    matrix = np.stack(tables) if tables else np.zeros((0, source.universe_size ** q), dtype=bool)
    columns = np.unique(matrix, axis=1) if tables else np.zeros((0, 1), dtype=bool)

    failure = None
    for column in columns.T:
        if mode == "homomorphism":
            literals = tuple(phi for phi, value in zip(instances, column) if value)
        else:
            literals = tuple(phi if value else Not(phi) for phi, value in zip(instances, column))
        sentence = existential_closure(And(literals), q)
        table, _ = satisfaction_table(target, sentence)
        if not bool(table):
            failure = {"sentence": str(sentence)}
            break
    report.add("transfer", failure is None, failure, types=int(columns.shape[1]))
    return report


def corrupt_embedding(result: EmbeddingResult, target: FinStructure, rng: np.random.Generator) -> EmbeddingResult:
    """Copy of the result with one randomly chosen coordinate of f
    replaced by a different element of N. Negative control for
    verify_delta_embedding."""
    f = np.array(result.f, copy=True)
    zeta, i = (int(x) for x in rng.integers(0, f.shape, size=2))
    choices = [b for b in target.universe if b != f[zeta, i]]
    if choices:
        f[zeta, i] = choices[int(rng.integers(len(choices)))]
    return EmbeddingResult(f, result.ladder, result.index_filter, list(result.trace), None)
