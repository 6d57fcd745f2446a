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
from abc import ABC, abstractmethod
from typing import List, Sequence

from modelforge.errors import DimensionMismatchError, InputError, VocabularyError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.filters.reduced_product import ReducedProduct
from modelforge.games.position import Element, GamePosition, Move, Side, is_partial_isomorphism
from modelforge.logic.structure import FinStructure


class Arena(ABC):
    """This is an abstract arena class. An arena fixes the two sides of
    an EF game, the moves available on each side and the win condition
    for player II.
    """

    @abstractmethod
    def moves(self, side: Side) -> Sequence[Element]:
        """Moves available on side, in increasing order."""
        pass

    @abstractmethod
    def is_winning(self, position: GamePosition) -> bool:
        """True iff the relation pi of position is a partial isomorphism."""
        pass

    @abstractmethod
    def parse_element(self, text: str) -> Element:
        """Implementation in child class."""
        pass

    def is_legal(self, move: Move) -> bool:
        return move.element in self.moves(move.side)

    def branching(self) -> int:
        return len(self.moves(Side.M)) + len(self.moves(Side.N))


class StructureArena(Arena):
    """Plain EF game on two finite structures."""

    def __init__(self, source: FinStructure, target: FinStructure) -> None:
        if source.vocabulary != target.vocabulary:
            raise VocabularyError("EF games need a common vocabulary")
        self.source = source
        self.target = target

    def moves(self, side: Side) -> Sequence[int]:
        return (self.source if side is Side.M else self.target).universe

    def is_winning(self, position: GamePosition) -> bool:
        return is_partial_isomorphism(self.source, self.target, position.pairs)

    def parse_element(self, text: str) -> int:
        try:
            return int(text)
        except ValueError as error:
            raise InputError("'%s' is not an element" % text) from error


class ProductArena(Arena):
    """EF game on the reduced products of factors M_i and N_i modulo one
    filter D. Moves are choice functions. With representatives=True the
    moves offered to player I are restricted to canonical class
    representatives; every choice function stays a legal move. The win
    condition is evaluated on classes: pi is a partial isomorphism iff
    equivalence and every relation agree on both sides.

    :param source_factors: Factors M_i.
    :type source_factors: Sequence[FinStructure]
    :param target_factors: Factors N_i.
    :type target_factors: Sequence[FinStructure]
    :param index_filter: Filter D.
    :type index_filter: FilterOnIndex
    :param representatives: Restrict moves to canonical representatives.
    :type representatives: bool
    """

    def __init__(self, source_factors: Sequence[FinStructure], target_factors: Sequence[FinStructure],
            index_filter: FilterOnIndex, representatives: bool = True) -> None:

        if len(source_factors) != len(target_factors):
            raise DimensionMismatchError("%d factors M_i but %d factors N_i" % (len(source_factors), len(target_factors)))

        self.source             = ReducedProduct(source_factors, index_filter)
        self.target             = ReducedProduct(target_factors, index_filter)
        self.index_filter       = index_filter
        self.representatives    = representatives
        if self.source.vocabulary != self.target.vocabulary:
            raise VocabularyError("EF games need a common vocabulary")

        self._moves = {Side.M: self._choice_functions(self.source), Side.N: self._choice_functions(self.target)}

    def _choice_functions(self, product: ReducedProduct) -> List[Element]:
        if self.representatives:
            return [product.representative(k) for k in range(product.class_count)]
        return [tuple(function) for function in itertools.product(*(range(size) for size in product.sizes))]

    def moves(self, side: Side) -> Sequence[Element]:
        return self._moves[side]

    def is_legal(self, move: Move) -> bool:
        product = self.source if move.side is Side.M else self.target
        if not isinstance(move.element, tuple) or len(move.element) != product.index_size:
            return False
        return all(0 <= x < size for x, size in zip(move.element, product.sizes))

    def is_winning(self, position: GamePosition) -> bool:
        pairs = position.pairs
        for (f, g), (f_prime, g_prime) in itertools.combinations(pairs, 2):
            if self.source.equivalent(f, f_prime) != self.target.equivalent(g, g_prime):
                return False
        for name, arity in self.source.vocabulary.symbols:
            for chosen in itertools.product(range(len(pairs)), repeat=arity):
                left = self.source.holds_on_representatives(name, [pairs[k][0] for k in chosen])
                right = self.target.holds_on_representatives(name, [pairs[k][1] for k in chosen])
                if left != right:
                    return False
        return True

    def parse_element(self, text: str) -> Element:
        try:
            return tuple(int(x) for x in text.replace(",", " ").split())
        except ValueError as error:
            raise InputError("'%s' is not a choice function" % text) from error
