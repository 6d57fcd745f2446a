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

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, FrozenSet, Mapping, Tuple


class Formula(ABC):
    """Abstract base class of first-order formulas over a relational
    vocabulary with equality. Variables are indexed, the variable with
    index n reads x<n>. All formulas are immutable values with
    structural equality.
    """

    @abstractmethod
    def free_variables(self) -> FrozenSet[int]:
        """Free variables of the formula.
        Implementation in child class.
        """
        pass

    @abstractmethod
    def variables(self) -> FrozenSet[int]:
        """All variables occurring in the formula, free or bound.
        Implementation in child class.
        """
        pass

    @abstractmethod
    def quantifier_rank(self) -> int:
        pass

    @abstractmethod
    def depth(self) -> int:
        pass

    def is_sentence(self) -> bool:
        return not self.free_variables()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Atom(Formula):
    symbol: str
    args: Tuple[int, ...]

    def free_variables(self) -> FrozenSet[int]:
        return frozenset(self.args)

    def variables(self) -> FrozenSet[int]:
        return frozenset(self.args)

    def quantifier_rank(self) -> int:
        return 0

    def depth(self) -> int:
        return 1


@dataclass(frozen=True)
class Equals(Formula):
    left: int
    right: int

    def free_variables(self) -> FrozenSet[int]:
        return frozenset((self.left, self.right))

    def variables(self) -> FrozenSet[int]:
        return frozenset((self.left, self.right))

    def quantifier_rank(self) -> int:
        return 0

    def depth(self) -> int:
        return 1


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def free_variables(self) -> FrozenSet[int]:
        return self.body.free_variables()

    def variables(self) -> FrozenSet[int]:
        return self.body.variables()

    def quantifier_rank(self) -> int:
        return self.body.quantifier_rank()

    def depth(self) -> int:
        return 1 + self.body.depth()


@dataclass(frozen=True)
class And(Formula):
    """Finite conjunction. The empty conjunction is the constant true."""

    parts: Tuple[Formula, ...]

    def free_variables(self) -> FrozenSet[int]:
        return frozenset().union(*(part.free_variables() for part in self.parts))

    def variables(self) -> FrozenSet[int]:
        return frozenset().union(*(part.variables() for part in self.parts))

    def quantifier_rank(self) -> int:
        return max((part.quantifier_rank() for part in self.parts), default=0)

    def depth(self) -> int:
        return 1 + max((part.depth() for part in self.parts), default=0)


@dataclass(frozen=True)
class Or(Formula):
    """Finite disjunction. The empty disjunction is the constant false."""

    parts: Tuple[Formula, ...]

    def free_variables(self) -> FrozenSet[int]:
        return frozenset().union(*(part.free_variables() for part in self.parts))

    def variables(self) -> FrozenSet[int]:
        return frozenset().union(*(part.variables() for part in self.parts))

    def quantifier_rank(self) -> int:
        return max((part.quantifier_rank() for part in self.parts), default=0)

    def depth(self) -> int:
        return 1 + max((part.depth() for part in self.parts), default=0)


@dataclass(frozen=True)
class Exists(Formula):
    var: int
    body: Formula

    def free_variables(self) -> FrozenSet[int]:
        return self.body.free_variables() - {self.var}

    def variables(self) -> FrozenSet[int]:
        return self.body.variables() | {self.var}

    def quantifier_rank(self) -> int:
        return 1 + self.body.quantifier_rank()

    def depth(self) -> int:
        return 1 + self.body.depth()


@dataclass(frozen=True)
class Forall(Formula):
    var: int
    body: Formula

    def free_variables(self) -> FrozenSet[int]:
        return self.body.free_variables() - {self.var}

    def variables(self) -> FrozenSet[int]:
        return self.body.variables() | {self.var}

    def quantifier_rank(self) -> int:
        return 1 + self.body.quantifier_rank()

    def depth(self) -> int:
        return 1 + self.body.depth()


TOP     = And(())
BOTTOM  = Or(())

LITERAL_TYPES   = (Atom, Equals)
QUANTIFIERS     = (Exists, Forall)


def is_literal(formula: Formula) -> bool:
    return isinstance(formula, LITERAL_TYPES) or (isinstance(formula, Not) and isinstance(formula.body, LITERAL_TYPES))


def conjuncts(formula: Formula) -> Tuple[Formula, ...]:
    """Top-level conjuncts of a formula, the formula itself if it is not a conjunction."""
    return formula.parts if isinstance(formula, And) else (formula,)


# PRETTY PRINTING
def _variable(index: int) -> str:
    return "x%d" % index


def _is_delimited(formula: Formula) -> bool:
    # constants and the bracketed singletons &(..), |(..)
    return isinstance(formula, (And, Or)) and len(formula.parts) <= 1


def _unary_text(formula: Formula) -> str:
    if isinstance(formula, (Atom, Equals, Not)) or _is_delimited(formula):
        return to_text(formula)
    return "(%s)" % to_text(formula)


def _disjunct_text(formula: Formula) -> str:
    if isinstance(formula, And) and len(formula.parts) > 1:
        return to_text(formula)
    return _unary_text(formula)


def to_text(formula: Formula) -> str:
    """Prints a formula in the ASCII syntax accepted by parse_formula.
    Negation binds tighter than conjunction, conjunction tighter than
    disjunction; quantified subformulas are parenthesized unless they
    are the whole formula or a quantifier body. A conjunction of one
    formula prints as &(..), a disjunction of one formula as |(..).

    :param formula: Formula to be printed.
    :type formula: Formula
    :return: Formula text.
    :rtype: str
    """
    if isinstance(formula, Atom):
        return "%s(%s)" % (formula.symbol, ",".join(_variable(v) for v in formula.args))
    if isinstance(formula, Equals):
        return "%s=%s" % (_variable(formula.left), _variable(formula.right))
    if isinstance(formula, Not):
        return "!" + _unary_text(formula.body)
    if isinstance(formula, And):
        if not formula.parts:
            return "true"
        if len(formula.parts) == 1:
            return "&(%s)" % to_text(formula.parts[0])
        return " & ".join(_unary_text(part) for part in formula.parts)
    if isinstance(formula, Or):
        if not formula.parts:
            return "false"
        if len(formula.parts) == 1:
            return "|(%s)" % to_text(formula.parts[0])
        return " | ".join(_disjunct_text(part) for part in formula.parts)
    if isinstance(formula, Exists):
        return "exists %s. %s" % (_variable(formula.var), to_text(formula.body))
    if isinstance(formula, Forall):
        return "forall %s. %s" % (_variable(formula.var), to_text(formula.body))
    raise TypeError("not a formula: %r" % (formula,))


# SUBSTITUTION
def substitute(formula: Formula, mapping: Mapping[int, int]) -> Formula:
    """Capture-avoiding renaming of free variables. A bound variable
    that would capture a substituted variable is renamed to the least
    index above every variable in sight.

    :param formula: Formula to rename.
    :type formula: Formula
    :param mapping: Map from variable index to variable index.
    :type mapping: Mapping[int, int]
    :return: Renamed formula.
    :rtype: Formula
    """
    active = {v: mapping[v] for v in formula.free_variables() if v in mapping and mapping[v] != v}
    if not active:
        return formula
    return _substitute(formula, active)


def _substitute(formula: Formula, mapping: Dict[int, int]) -> Formula:
    if isinstance(formula, Atom):
        return Atom(formula.symbol, tuple(mapping.get(v, v) for v in formula.args))
    if isinstance(formula, Equals):
        return Equals(mapping.get(formula.left, formula.left), mapping.get(formula.right, formula.right))
    if isinstance(formula, Not):
        return Not(_substitute(formula.body, mapping))
    if isinstance(formula, And):
        return And(tuple(_substitute(part, mapping) for part in formula.parts))
    if isinstance(formula, Or):
        return Or(tuple(_substitute(part, mapping) for part in formula.parts))

    # QUANTIFIERS
    free_in_body = formula.body.free_variables()
    inner = {k: v for k, v in mapping.items() if k != formula.var and k in free_in_body}
    if not inner:
        return formula
    var = formula.var
    if var in inner.values():
        var = 1 + max(formula.variables() | set(inner.values()) | set(inner.keys()))
        inner[formula.var] = var
    return type(formula)(var, _substitute(formula.body, inner))
