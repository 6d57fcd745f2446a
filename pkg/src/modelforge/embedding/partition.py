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

from typing import List, Tuple

from modelforge.errors import DimensionMismatchError
from modelforge.filters.regularity_witness import RegularityWitness
from modelforge.logic.delta import DeltaSet
from modelforge.logic.formula import Formula


def delta_partition(delta: DeltaSet, witness: RegularityWitness, index_size: int) -> List[Tuple[Formula, ...]]:
    """Delta_i = (phi_alpha : i in A_alpha) for every index i, in alpha order.

    :param delta: The formulas phi_alpha.
    :type delta: DeltaSet
    :param witness: The sets A_alpha, one per formula.
    :type witness: RegularityWitness
    :param index_size: Size of the index set.
    :type index_size: int
    :raises DimensionMismatchError: Number of formulas and witness sets differ.
    :return: Delta_i for i = 0, ..., index_size-1.
    :rtype: List[Tuple[Formula, ...]]
    """
    if len(delta) != len(witness):
        raise DimensionMismatchError("%d formulas but %d witness sets" % (len(delta), len(witness)))
    return [tuple(delta[alpha] for alpha in sorted(witness.w(i))) for i in range(index_size)]
