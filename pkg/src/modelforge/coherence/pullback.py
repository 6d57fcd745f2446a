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

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

from modelforge.coherence.coherent_family import CoherentFamily
from modelforge.errors import DimensionMismatchError, EmptyIntersectionError
from modelforge.filters.regularity_witness import RegularityWitness


@dataclass
class PullbackResult:
    family: CoherentFamily
    h: Tuple[int, ...]

    def to_json(self) -> Dict:
        return {"h": list(self.h), "family": self.family.to_json()}


def pullback(family: CoherentFamily, generators: Sequence[FrozenSet[int]], witness: RegularityWitness,
        index_size: int) -> PullbackResult:
    """Moves a family on an index set G to the index set I along
    h(i) = least element of the intersection of the generators Z_alpha
    with i in A_alpha. An index contained in no A_alpha intersects no
    generator and maps to the least element of G.

    :param family: Family u on G.
    :type family: CoherentFamily
    :param generators: Subsets Z_alpha of G.
    :type generators: Sequence[FrozenSet[int]]
    :param witness: Sets A_alpha of I, one per generator.
    :type witness: RegularityWitness
    :param index_size: Size of I.
    :type index_size: int
    :raises DimensionMismatchError: Number of generators and witness sets differ.
    :raises EmptyIntersectionError: Some i selects generators with empty intersection.
    :return: v[zeta][i] = u[zeta][h(i)] with caps n[h(i)], and h.
    :rtype: PullbackResult
    """
    if len(generators) != len(witness):
        raise DimensionMismatchError("%d generators but %d witness sets" % (len(generators), len(witness)))

    h = []
    for i in range(index_size):
        candidates = frozenset(range(family.index_size))
        for alpha in sorted(witness.w(i)):
            candidates &= generators[alpha]
        if not candidates:
            raise EmptyIntersectionError(i)
        h.append(min(candidates))
    return PullbackResult(family.select_indices(h), tuple(h))


def enumerate_generators(generators: Sequence[FrozenSet[int]], count: int) -> List[FrozenSet[int]]:
    """Z_0, ..., Z_{count-1} built from the generators: Z_alpha is the
    intersection of the generators with position alpha modulo count.
    With count at least the number of generators this cycles through
    them. Every generator takes part, so the Z_alpha have the same
    intersection as the generators."""
    assert generators, "at least one generator is needed"
    assert count >= 1, "at least one set Z_alpha is needed"
    if count >= len(generators):
        return [frozenset(generators[alpha % len(generators)]) for alpha in range(count)]
    sets = []
    for alpha in range(count):
        Z = frozenset(generators[alpha])
        for gamma in range(alpha + count, len(generators), count):
            Z &= generators[gamma]
        sets.append(Z)
    return sets
