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

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from modelforge.errors import InputError, UnboundVariableError
from modelforge.logic.evaluator import evaluate_tuple
from modelforge.logic.formula import And, Atom, Equals, Formula, Not, substitute
from modelforge.logic.parser import parse_formula
from modelforge.logic.structure import FinStructure
from modelforge.logic.vocabulary import Vocabulary


@dataclass(frozen=True)
class DeltaSet:
    """Ordered, duplicate-free list of formulas phi_alpha whose free
    variables lie among x_0, ..., x_{k-1} for the declared max arity k.
    The index alpha of a formula is its list position.

    :param formulas: The formulas phi_alpha in order.
    :type formulas: Tuple[Formula, ...]
    :param max_arity: Declared max arity k.
    :type max_arity: int
    :param vocabulary: Vocabulary the formulas are written in.
    :type vocabulary: Optional[Vocabulary]
    """

    formulas: Tuple[Formula, ...]
    max_arity: int
    vocabulary: Optional[Vocabulary] = None

    def __post_init__(self) -> None:
        if len(set(self.formulas)) != len(self.formulas):
            raise InputError("delta set contains duplicate formulas")
        if self.max_arity < 0:
            raise InputError("max arity must be a natural number")
        for alpha, formula in enumerate(self.formulas):
            overflow = [v for v in formula.free_variables() if v >= self.max_arity]
            if overflow:
                raise InputError("formula %d (%s) has free variables %s beyond max arity %d"
                    % (alpha, formula, ["x%d" % v for v in sorted(overflow)], self.max_arity))

    def __len__(self) -> int:
        return len(self.formulas)

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.formulas)

    def __getitem__(self, alpha: int) -> Formula:
        return self.formulas[alpha]

    @classmethod
    def from_texts(cls, texts: Sequence[str], vocabulary: Vocabulary, max_arity: int) -> "DeltaSet":
        return cls(tuple(parse_formula(text, vocabulary) for text in texts), max_arity, vocabulary)

    def to_json(self) -> Dict:
        assert self.vocabulary is not None, "delta set without vocabulary cannot be serialized"
        return {
            "vocabulary": self.vocabulary.to_json(),
            "max_arity": self.max_arity,
            "formulas": [str(formula) for formula in self.formulas],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "DeltaSet":
        try:
            vocabulary = Vocabulary.from_json(data["vocabulary"])
            return cls.from_texts(data["formulas"], vocabulary, int(data["max_arity"]))
        except KeyError as error:
            raise InputError("delta file misses field %s" % error) from error


def atomic_delta(vocabulary: Vocabulary, max_arity: int = 2, include_equality: bool = True) -> DeltaSet:
    """All atomic formulas of the vocabulary with variables among
    x_0, ..., x_{max_arity-1}, equalities x_i=x_j with i<j included."""
    formulas: List[Formula] = []
    if include_equality:
        formulas.extend(Equals(i, j) for i in range(max_arity) for j in range(i + 1, max_arity))
    for name, arity in vocabulary.symbols:
        formulas.extend(Atom(name, args) for args in itertools.product(range(max_arity), repeat=arity))
    return DeltaSet(tuple(formulas), max_arity, vocabulary)


def delta_instances(formulas: Sequence[Formula], width: int) -> Tuple[Formula, ...]:
    """All substitution instances of the formulas with free variables
    mapped into x_0, ..., x_{width-1}, in formula order and, per formula,
    in lexicographic order of the variable map. Together they make up the
    Delta-type of a tuple of length width.
    """
    instances: List[Formula] = []
    seen = set()
    for formula in formulas:
        free = sorted(formula.free_variables())
        for image in itertools.product(range(width), repeat=len(free)):
            instance = substitute(formula, dict(zip(free, image)))
            if instance not in seen:
                seen.add(instance)
                instances.append(instance)
    return tuple(instances)


def is_delta_instance(formula: Formula, delta: Sequence[Formula]) -> bool:
    """True iff formula is phi[s] for some phi in delta and some
    renaming s of the free variables of phi."""
    targets = sorted(formula.free_variables())
    for phi in delta:
        if type(phi) is not type(formula) or phi.depth() != formula.depth():
            continue
        free = sorted(phi.free_variables())
        if len(targets) > len(free):
            continue
        for image in itertools.product(targets, repeat=len(free)):
            if substitute(phi, dict(zip(free, image))) == formula:
                return True
    return False


def is_delta_literal(formula: Formula, delta: Sequence[Formula], allow_negation: bool = True) -> bool:
    if is_delta_instance(formula, delta):
        return True
    return allow_negation and isinstance(formula, Not) and is_delta_instance(formula.body, delta)


def _check_width(formulas: Sequence[Formula], width: int) -> None:
    for formula in formulas:
        overflow = [v for v in formula.free_variables() if v >= width]
        if overflow:
            raise UnboundVariableError("%s has free variables %s beyond a tuple of length %d"
                % (formula, ["x%d" % v for v in sorted(overflow)], width))


def delta_type(structure: FinStructure, formulas: Sequence[Formula], elements: Sequence[int]) -> Formula:
    """Delta-type of a tuple: the conjunction containing, for each
    formula in order, the formula if it holds of the tuple (x_j read as
    elements[j]) and its negation otherwise.

    :param structure: Structure the tuple lives in.
    :type structure: FinStructure
    :param formulas: The fragment Delta'.
    :type formulas: Sequence[Formula]
    :param elements: The tuple.
    :type elements: Sequence[int]
    :raises UnboundVariableError: Some formula has a free variable beyond the tuple.
    :return: Conjunction of literals.
    :rtype: Formula
    """
    _check_width(formulas, len(elements))
    elements = tuple(int(e) for e in elements)
    return And(tuple(phi if evaluate_tuple(structure, phi, elements) else Not(phi) for phi in formulas))


def positive_delta_type(structure: FinStructure, formulas: Sequence[Formula], elements: Sequence[int]) -> Formula:
    """Conjunction of the formulas that hold of the tuple; the type used
    when only a Delta-homomorphism is wanted."""
    _check_width(formulas, len(elements))
    elements = tuple(int(e) for e in elements)
    return And(tuple(phi for phi in formulas if evaluate_tuple(structure, phi, elements)))
