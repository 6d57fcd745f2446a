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

from functools import lru_cache
from typing import Mapping, Tuple

import numpy as np

from modelforge.errors import UnboundVariableError, VocabularyError
from modelforge.logic.formula import And, Atom, Equals, Exists, Forall, Formula, Not, Or
from modelforge.logic.structure import FinStructure

AXIS_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def check_vocabulary(structure: FinStructure, formula: Formula) -> None:
    """Raises VocabularyError if some atom of formula is not interpreted
    in structure with matching arity."""
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            if node.symbol not in structure.vocabulary:
                raise VocabularyError("symbol '%s' is not in the vocabulary of the structure" % node.symbol)
            if structure.vocabulary.arity(node.symbol) != len(node.args):
                raise VocabularyError("symbol '%s' used with %d arguments" % (node.symbol, len(node.args)))
        elif isinstance(node, (And, Or)):
            stack.extend(node.parts)
        elif isinstance(node, (Not, Exists, Forall)):
            stack.append(node.body)


def evaluate(structure: FinStructure, formula: Formula, assignment: Mapping[int, int]) -> bool:
    """Tarskian satisfaction of formula in structure under assignment.
    Quantifiers range over the full universe.

    :param structure: Finite structure.
    :type structure: FinStructure
    :param formula: Formula over the vocabulary of structure.
    :type formula: Formula
    :param assignment: Map from variable index to element, covering the free variables.
    :type assignment: Mapping[int, int]
    :raises UnboundVariableError: A free variable is not assigned.
    :raises VocabularyError: The formula uses a symbol the structure does not interpret.
    :return: Truth value.
    :rtype: bool
    """
    free = sorted(formula.free_variables())
    missing = [v for v in free if v not in assignment]
    if missing:
        raise UnboundVariableError("free variables %s are not assigned" % ["x%d" % v for v in missing])
    for v in free:
        if not 0 <= assignment[v] < structure.universe_size:
            raise UnboundVariableError("x%d is assigned %s outside the universe" % (v, assignment[v]))
    check_vocabulary(structure, formula)
    table, _ = satisfaction_table(structure, formula)
    return bool(table[tuple(int(assignment[v]) for v in free)])


def evaluate_tuple(structure: FinStructure, formula: Formula, elements: Tuple[int, ...]) -> bool:
    """Evaluates formula with x_j assigned elements[j]."""
    return evaluate(structure, formula, dict(enumerate(elements)))


@lru_cache(maxsize=65536)
def satisfaction_table(structure: FinStructure, formula: Formula) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Set of satisfying assignments of formula as a boolean array.
    Axis k of the array ranges over the value of the k-th free
    variable in increasing index order.

    :return: Read-only boolean array and the sorted free variables.
    :rtype: Tuple[np.ndarray, Tuple[int, ...]]
    """
    order = tuple(sorted(formula.free_variables()))
    table = np.array(_table(structure, formula, order), dtype=bool)
    table.setflags(write=False)
    return table, order


def _align(table: np.ndarray, order: Tuple[int, ...], target: Tuple[int, ...]) -> np.ndarray:
    # both orders are sorted, so reshaping inserts the missing axes
    shape = [table.shape[order.index(v)] if v in order else 1 for v in target]
    return table.reshape(shape)


def _table(structure: FinStructure, formula: Formula, order: Tuple[int, ...]) -> np.ndarray:
    size = structure.universe_size
    full = (size,) * len(order)

    if isinstance(formula, Atom):
        letters = "".join(AXIS_LETTERS[order.index(v)] for v in formula.args)
        output = "".join(AXIS_LETTERS[k] for k in range(len(order)))
        relation = structure.array(formula.symbol).astype(np.uint8)
        return np.einsum("%s->%s" % (letters, output), relation).astype(bool)

    if isinstance(formula, Equals):
        if formula.left == formula.right:
            return np.ones(full, dtype=bool)
        return np.eye(size, dtype=bool).reshape(full)

    if isinstance(formula, Not):
        table, _ = satisfaction_table(structure, formula.body)
        return ~table

    if isinstance(formula, (And, Or)):
        is_and = isinstance(formula, And)
        result = np.full(full, is_and, dtype=bool)
        for part in formula.parts:
            table, part_order = satisfaction_table(structure, part)
            aligned = _align(table, part_order, order)
            result = (result & aligned) if is_and else (result | aligned)
        return result

    # QUANTIFIERS
    table, body_order = satisfaction_table(structure, formula.body)
    if formula.var in body_order:
        axis = body_order.index(formula.var)
        if isinstance(formula, Exists):
            return table.any(axis=axis)
        return table.all(axis=axis)
    if isinstance(formula, Exists):
        return table & (size > 0)
    return table | (size == 0)
