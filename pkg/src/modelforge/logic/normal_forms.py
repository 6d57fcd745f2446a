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

from typing import Dict, List, Sequence, Set, Tuple

from modelforge.errors import RejectionError
from modelforge.logic.delta import is_delta_literal
from modelforge.logic.formula import And, Atom, Equals, Exists, Forall, Formula, Not, Or, TOP, substitute, to_text


def conjoin(parts: Sequence[Formula]) -> Formula:
    """Conjunction of parts without looking inside them: duplicates are
    removed and the parts sorted by their text. A single part is
    returned as is, no part gives true."""
    unique = sorted(set(parts), key=to_text)
    if len(unique) == 1:
        return unique[0]
    return And(tuple(unique))


def normalize(formula: Formula) -> Formula:
    """Structural normal form: nested conjunctions and disjunctions are
    flattened, their members deduplicated and sorted by text, double
    negations removed and equalities oriented. Singleton conjunctions and
    disjunctions collapse to their member.

    :param formula: Formula to normalize.
    :type formula: Formula
    :return: Logically equivalent formula in normal form.
    :rtype: Formula
    """
    if isinstance(formula, Atom):
        return formula
    if isinstance(formula, Equals):
        return Equals(min(formula.left, formula.right), max(formula.left, formula.right))
    if isinstance(formula, Not):
        body = normalize(formula.body)
        return body.body if isinstance(body, Not) else Not(body)
    if isinstance(formula, (And, Or)):
        kind = type(formula)
        members: List[Formula] = []
        for part in formula.parts:
            part = normalize(part)
            members.extend(part.parts if isinstance(part, kind) else (part,))
        unique = sorted(set(members), key=to_text)
        if len(unique) == 1:
            return unique[0]
        return kind(tuple(unique))
    return type(formula)(formula.var, normalize(formula.body))


def to_nnf(formula: Formula) -> Formula:
    """Negation normal form: negations only in front of atoms and equalities."""
    if isinstance(formula, (Atom, Equals)):
        return formula
    if isinstance(formula, And):
        return And(tuple(to_nnf(part) for part in formula.parts))
    if isinstance(formula, Or):
        return Or(tuple(to_nnf(part) for part in formula.parts))
    if isinstance(formula, (Exists, Forall)):
        return type(formula)(formula.var, to_nnf(formula.body))

    body = formula.body
    if isinstance(body, (Atom, Equals)):
        return formula
    if isinstance(body, Not):
        return to_nnf(body.body)
    if isinstance(body, And):
        return Or(tuple(to_nnf(Not(part)) for part in body.parts))
    if isinstance(body, Or):
        return And(tuple(to_nnf(Not(part)) for part in body.parts))
    if isinstance(body, Exists):
        return Forall(body.var, to_nnf(Not(body.body)))
    return Exists(body.var, to_nnf(Not(body.body)))


class _Renamer:
    """Hands out variable names for quantifiers: a bound variable keeps
    its name unless that name is already in use, otherwise it receives
    the next index above every variable of the formula."""

    def __init__(self, formula: Formula) -> None:
        self.used: Set[int] = set(formula.free_variables())
        self.next_fresh = 1 + max(formula.variables(), default=-1)

    def bind(self, var: int) -> int:
        if var in self.used:
            var = self.next_fresh
            self.next_fresh += 1
        self.used.add(var)
        return var


def rename_apart(formula: Formula) -> Formula:
    """Renames bound variables so that no two quantifiers bind the same
    variable and no bound variable is also free."""
    renamer = _Renamer(formula)

    def walk(node: Formula, renaming: Dict[int, int]) -> Formula:
        if isinstance(node, (Atom, Equals)):
            return substitute(node, renaming)
        if isinstance(node, Not):
            return Not(walk(node.body, renaming))
        if isinstance(node, (And, Or)):
            return type(node)(tuple(walk(part, renaming) for part in node.parts))
        var = renamer.bind(node.var)
        return type(node)(var, walk(node.body, {**renaming, node.var: var}))

    return walk(formula, {})


def prenex(formula: Formula) -> Formula:
    """Prenex normal form of the negation normal form of formula, with
    bound variables renamed apart. Equivalent to formula on structures
    with a nonempty universe.
    """
    def pull(node: Formula) -> Tuple[List[Tuple[type, int]], Formula]:
        if isinstance(node, (Exists, Forall)):
            prefix, matrix = pull(node.body)
            return [(type(node), node.var)] + prefix, matrix
        if isinstance(node, (And, Or)):
            prefix, matrices = [], []
            for part in node.parts:
                part_prefix, part_matrix = pull(part)
                prefix.extend(part_prefix)
                matrices.append(part_matrix)
            return prefix, type(node)(tuple(matrices))
        return [], node

    prefix, matrix = pull(rename_apart(to_nnf(formula)))
    for quantifier, var in reversed(prefix):
        matrix = quantifier(var, matrix)
    return matrix


def _flatten(formula: Formula, delta: Sequence[Formula], allow_negation: bool) -> Formula:
    renamer = _Renamer(formula)
    prefix: List[int] = []
    literals: List[Formula] = []

    def walk(node: Formula, renaming: Dict[int, int]) -> None:
        if is_delta_literal(node, delta, allow_negation):
            literal = substitute(node, renaming)
            if literal not in literals:
                literals.append(literal)
        elif isinstance(node, And):
            for part in node.parts:
                walk(part, renaming)
        elif isinstance(node, Exists):
            var = renamer.bind(node.var)
            prefix.append(var)
            walk(node.body, {**renaming, node.var: var})
        elif isinstance(node, Forall):
            raise RejectionError("universal quantifier in %s" % node)
        elif isinstance(node, Or):
            raise RejectionError("disjunction in %s" % node)
        elif isinstance(node, Not) and not allow_negation:
            raise RejectionError("negation in %s" % node)
        else:
            raise RejectionError("%s is not a Delta-literal" % node)

    walk(formula, {})
    if not literals:
        matrix = TOP
    elif len(literals) == 1:
        matrix = literals[0]
    else:
        matrix = And(tuple(literals))
    for var in reversed(prefix):
        matrix = Exists(var, matrix)
    return matrix


def flatten_to_weakly_existential(formula: Formula, delta: Sequence[Formula]) -> Formula:
    """Prenex weakly Delta-existential form: an existential block over a
    conjunction of Delta-formulas and negated Delta-formulas, bound
    variables renamed apart.

    :param formula: Formula built from Delta-literals by conjunction and
        existential quantification.
    :type formula: Formula
    :param delta: The Delta-formulas; literals are their substitution instances.
    :type delta: Sequence[Formula]
    :raises RejectionError: formula contains a universal quantifier, a
        disjunction or a literal that is not a Delta-literal.
    :return: Equivalent formula in flat form.
    :rtype: Formula
    """
    return _flatten(formula, delta, allow_negation=True)


def flatten_to_existential(formula: Formula, delta: Sequence[Formula]) -> Formula:
    """Like flatten_to_weakly_existential, but only positive Delta-formulas
    are accepted as literals (the Delta-existential fragment)."""
    return _flatten(formula, delta, allow_negation=False)
