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

from functools import reduce
from typing import List, Optional, Sequence, Tuple

import numpy as np

from modelforge.errors import BudgetExceededError, DimensionMismatchError, InputError, VocabularyError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.logic.structure import FinStructure

DEFAULT_PRODUCT_BUDGET = 10**6


class ReducedProduct:
    """Reduced product of the factors M_i modulo the filter D.

    Elements are classes of choice functions f with f(i) in M_i. Two
    choice functions are equivalent iff they agree on a member of D,
    i.e. on the kernel of D. The canonical representative of a class is
    its lexicographically least choice function: the kernel coordinates
    are kept, all others are set to 0.

    The operations on choice functions (canonical, equivalent,
    holds_on_representatives) work lazily on any size. The explicit
    quotient structure is only built when the number of choice
    functions stays within the budget.

    :param factors: One structure per index i, all over one vocabulary.
    :type factors: Sequence[FinStructure]
    :param index_filter: Proper filter D on the index set.
    :type index_filter: FilterOnIndex
    :param budget: Maximal number of choice functions of a materialized product.
    :type budget: int
    """

    def __init__(self, factors: Sequence[FinStructure], index_filter: FilterOnIndex,
            budget: int = DEFAULT_PRODUCT_BUDGET) -> None:

        if len(factors) != index_filter.index_size:
            raise DimensionMismatchError("%d factors for an index set of size %d"
                % (len(factors), index_filter.index_size))
        vocabularies = {factor.vocabulary for factor in factors}
        if len(vocabularies) > 1:
            raise VocabularyError("factors are not over a common vocabulary")

        self.factors        = tuple(factors)
        self.filter         = index_filter
        self.budget         = budget
        self.vocabulary     = factors[0].vocabulary
        self.kernel         = tuple(sorted(index_filter.kernel))
        self.sizes          = tuple(factor.universe_size for factor in factors)

        self._quotient: Optional[FinStructure] = None

    @property
    def index_size(self) -> int:
        return len(self.factors)

    @property
    def product_size(self) -> int:
        """Number of choice functions."""
        return reduce(lambda x, y: x * y, self.sizes, 1)

    @property
    def class_count(self) -> int:
        if self.product_size == 0:
            return 0
        return reduce(lambda x, y: x * y, (self.sizes[i] for i in self.kernel), 1)

    def _check_function(self, function: Sequence[int]) -> Tuple[int, ...]:
        function = tuple(int(x) for x in function)
        if len(function) != self.index_size:
            raise DimensionMismatchError("choice function of length %d for %d factors"
                % (len(function), self.index_size))
        for i, (x, size) in enumerate(zip(function, self.sizes)):
            if not 0 <= x < size:
                raise InputError("f(%d) = %d is not an element of M_%d of size %d" % (i, x, i, size))
        return function

    def canonical(self, function: Sequence[int]) -> Tuple[int, ...]:
        function = self._check_function(function)
        return tuple(function[i] if i in self.filter.kernel else 0 for i in range(self.index_size))

    def equivalent(self, first: Sequence[int], second: Sequence[int]) -> bool:
        first, second = self._check_function(first), self._check_function(second)
        return self.filter.member(i for i in range(self.index_size) if first[i] == second[i])

    def agreement_set(self, symbol: str, functions: Sequence[Sequence[int]]) -> List[int]:
        """Indices i with M_i satisfying symbol at (f_1(i), ..., f_r(i))."""
        functions = [self._check_function(f) for f in functions]
        if self.vocabulary.arity(symbol) != len(functions):
            raise VocabularyError("symbol '%s' has arity %d, got %d arguments"
                % (symbol, self.vocabulary.arity(symbol), len(functions)))
        return [i for i, factor in enumerate(self.factors) if factor.holds(symbol, [f[i] for f in functions])]

    def holds_on_representatives(self, symbol: str, functions: Sequence[Sequence[int]]) -> bool:
        """Relation verdict on the classes of the given choice functions,
        computed from the factors: {i : M_i satisfies R(f(i))} in D."""
        return self.filter.member(self.agreement_set(symbol, functions))

    # QUOTIENT
    def class_index(self, function: Sequence[int]) -> int:
        """Position of the class of function in the quotient universe.
        Classes are ordered lexicographically by their canonical
        representatives."""
        function = self._check_function(function)
        index = 0
        for i in self.kernel:
            index = index * self.sizes[i] + function[i]
        return index

    def representative(self, index: int) -> Tuple[int, ...]:
        """Canonical representative of the class with the given position."""
        if not 0 <= index < self.class_count:
            raise InputError("class index %d outside of a quotient with %d classes" % (index, self.class_count))
        function = [0] * self.index_size
        for i in reversed(self.kernel):
            index, function[i] = divmod(index, self.sizes[i])
        return tuple(function)

    def _coordinate_arrays(self) -> List[np.ndarray]:
        # value of kernel coordinate i for every class, classes in lex order
        shape = [self.sizes[i] for i in self.kernel]
        grids = np.indices(shape).reshape(len(shape), -1)
        return [grids[k] for k in range(len(self.kernel))]

    def materialize(self) -> FinStructure:
        """The quotient as an explicit structure on {0, ..., class_count-1}.

        :raises BudgetExceededError: More choice functions than the budget allows.
        """
        if self._quotient is not None:
            return self._quotient
        if self.product_size > self.budget:
            raise BudgetExceededError("reduced product has %d choice functions, budget is %d"
                % (self.product_size, self.budget))

        count = self.class_count
        arrays = {}
        if count == 0:
            arrays = {name: np.zeros((0,) * arity, dtype=bool) for name, arity in self.vocabulary.symbols}
        else:
            coordinates = self._coordinate_arrays()
            for name, arity in self.vocabulary.symbols:
                table = np.ones((count,) * arity, dtype=bool)
                for k, i in enumerate(self.kernel):
                    table &= self.factors[i].array(name)[np.ix_(*([coordinates[k]] * arity))]
                arrays[name] = table
        self._quotient = FinStructure.from_arrays(self.vocabulary, count, arrays)
        return self._quotient

    def __repr__(self) -> str:
        return "ReducedProduct(sizes=%s, kernel=%s)" % (list(self.sizes), list(self.kernel))


def reduced_product(factors: Sequence[FinStructure], index_filter: FilterOnIndex,
        budget: int = DEFAULT_PRODUCT_BUDGET) -> ReducedProduct:
    """Reduced product with its quotient materialized.

    :raises BudgetExceededError: More choice functions than the budget allows.
    :raises VocabularyError: Factors over different vocabularies.
    """
    product = ReducedProduct(factors, index_filter, budget)
    product.materialize()
    return product


def reduced_power(structure: FinStructure, index_filter: FilterOnIndex,
        budget: int = DEFAULT_PRODUCT_BUDGET) -> ReducedProduct:
    """The reduced power N^I/D, kept lazy."""
    return ReducedProduct([structure] * index_filter.index_size, index_filter, budget)
