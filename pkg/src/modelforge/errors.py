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

from typing import Optional, Tuple


class ModelforgeError(Exception):
    """Base class of all errors raised by modelforge."""

    kind = "error"


# INPUT ERRORS
class InputError(ModelforgeError):
    """Malformed input: schema violations, unknown symbols, bad indices."""

    kind = "input-error"


class FormulaSyntaxError(InputError):
    """Formula text does not conform to the grammar.

    :param message: Human readable description.
    :type message: str
    :param position: Character offset of the offending token.
    :type position: int
    """

    kind = "syntax-error"

    def __init__(self, message: str, position: int) -> None:
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class VocabularyError(InputError):
    kind = "vocabulary-error"


class UnboundVariableError(InputError):
    kind = "unbound-variable"


class DimensionMismatchError(InputError):
    kind = "dimension-mismatch"


# PRECONDITION ERRORS
class PreconditionError(ModelforgeError):
    """An operation was called outside of its documented precondition."""

    kind = "precondition-error"


class ImproperFilterError(PreconditionError):
    kind = "improper-filter"


class NotUltrafilterError(PreconditionError):
    kind = "not-ultrafilter"


class InvalidWitnessError(PreconditionError):
    kind = "invalid-witness"


class EmptyIntersectionError(PreconditionError):
    """The sets Z_alpha selected by index i have an empty intersection."""

    kind = "empty-intersection"

    def __init__(self, index: int) -> None:
        super().__init__("empty intersection of generators at index %d" % index)
        self.index = index


class GroupConditionError(PreconditionError):
    kind = "group-condition"


class StrategyError(PreconditionError):
    kind = "strategy-error"


# CONSTRUCTION ERRORS
class RejectionError(ModelforgeError):
    """Formula lies outside the closure accepted by a normal form."""

    kind = "rejected"


class LadderDepthError(ModelforgeError):
    kind = "ladder-depth"


class WitnessNotFound(ModelforgeError):
    """No element of the target structure witnesses the existential needed
    at index i and stage zeta of the embedding construction.

    :param index: Index i of the coordinate.
    :type index: int
    :param element: Stage zeta.
    :type element: int
    :param formula: Text of the unsatisfied existential formula.
    :type formula: str
    :param parameters: Already chosen parameters the formula was evaluated at.
    :type parameters: Tuple[int, ...]
    """

    kind = "witness-not-found"

    def __init__(self, index: int, element: int, formula: str, parameters: Tuple[int, ...] = ()) -> None:
        super().__init__("no witness at index %d, element %d for %s with parameters %s"
            % (index, element, formula, list(parameters)))
        self.index      = index
        self.element    = element
        self.formula    = formula
        self.parameters = tuple(parameters)


class BudgetExceededError(ModelforgeError):
    """A configured budget (size, depth, nodes, wall time) was exceeded.

    :param message: Which budget was exceeded.
    :type message: str
    :param explored_fraction: Fraction of the search space explored before
        giving up, if known.
    :type explored_fraction: Optional[float]
    """

    kind = "budget-exceeded"

    def __init__(self, message: str, explored_fraction: Optional[float] = None) -> None:
        if explored_fraction is not None:
            message = "%s (explored fraction %.6f)" % (message, explored_fraction)
        super().__init__(message)
        self.explored_fraction = explored_fraction
