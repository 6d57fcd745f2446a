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
from typing import Dict, FrozenSet, List, Sequence, Tuple

from modelforge.coherence.coherent_family import CoherentFamily
from modelforge.coherence.levels import TypeSpace, require_valid, tuple_type
from modelforge.coherence.square_witness import SquareWitness
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.report import CheckReport


@dataclass
class DerivedFamily:
    """Family on the types of a witness.

    :param space: The type space, its types are the indices of the family.
    :param family: u[a][t] restricted to the predecessors of a, caps n_t = length of t plus one.
    :param index_filter: Filter on the type space generated by the up-sets.
    :param generators: The up-set of every type, in type order.
    """

    space: TypeSpace
    family: CoherentFamily
    index_filter: FilterOnIndex
    generators: Tuple[FrozenSet[int], ...]

    def to_json(self) -> Dict:
        return {
            "types": [t.to_json() for t in self.space.types],
            "realizations": [list(r) for r in self.space.realizations],
            "full_type": self.space.full_index,
            "family": self.family.to_json(),
            "filter": self.index_filter.to_json(),
            "generators": [sorted(Z) for Z in self.generators],
        }


def matching_positions(witness: SquareWitness, elements: Sequence[int], a: int, level: int) -> List[int]:
    """Positions k with elements[k] E[level] a. A valid witness admits at
    most one such position when level is the level of the tuple."""
    return [k for k, b in enumerate(elements) if witness.equivalent(level, b, a)]


def family_value(witness: SquareWitness, elements: Sequence[int], level: int, a: int) -> FrozenSet[int]:
    """Image of the elements before the matching position k under
    f[level][elements[k]][a], the empty set without a matching position."""
    positions = matching_positions(witness, elements, a, level)
    if not positions:
        return frozenset()
    k = positions[0]
    mapping = witness.map(level, elements[k], a) or {}
    return frozenset(mapping[b] for b in elements[:k] if b in mapping)


def restrict_to_predecessors(values: FrozenSet[int], a: int) -> FrozenSet[int]:
    return frozenset(x for x in values if x < a)


def derive_family(witness: SquareWitness, max_length: int = 4, tuple_budget: int = 10**6) -> DerivedFamily:
    """Coherent family on the types of a witness. For an element a and a
    type t with canonical realization b_0 < ... < b_{n-1} of level xi,
    u[a][t] is the image of b_0, ..., b_{k-1} under f[xi][b_k][a] for the
    position k with b_k E[xi] a, and empty if there is none. The filter
    on the types is generated by the up-sets of all types.

    :param witness: Witness satisfying all eight axioms.
    :type witness: SquareWitness
    :param max_length: Length bound of the enumerated tuples.
    :type max_length: int
    :param tuple_budget: Maximal number of enumerated tuples.
    :type tuple_budget: int
    :raises InvalidWitnessError: The witness fails check_square_witness.
    :raises BudgetExceededError: Too many tuples to enumerate.
    :return: Type space, family, filter and its generators.
    :rtype: DerivedFamily
    """
    require_valid(witness)
    space = TypeSpace(witness, max_length, tuple_budget)

    sets = []
    for a in witness.order:
        row = []
        for t, elements in zip(space.types, space.realizations):
            row.append(restrict_to_predecessors(family_value(witness, elements, t.xi, a), a))
        sets.append(row)
    caps = [t.length + 1 for t in space.types]
    family = CoherentFamily(witness.order_size, len(space), sets, caps)

    generators = tuple(space.up_set(s) for s in range(len(space)))
    index_filter = FilterOnIndex(len(space), generators)
    return DerivedFamily(space, family, index_filter, generators)


def coverage_report(witness: SquareWitness, derived: DerivedFamily, b: int = 2) -> CheckReport:
    """Replays the argument behind condition (iii): for every a and every
    B below a with |B| <= b, every type t above tp(B with a) has B inside
    u[a][t]. Lists the first failure; types of tuples longer than the
    type space are skipped and counted."""
    report = CheckReport("coverage")
    space, family = derived.space, derived.family
    failure = None
    skipped = 0
    for a in witness.order:
        for size in range(b + 1):
            for B in itertools.combinations(range(a), size):
                star = tuple_type(witness, B + (a,))
                if star not in space.index:
                    skipped += 1
                    continue
                for t in sorted(space.up_set(space.index[star])):
                    if not set(B) <= family.u(a, t):
                        failure = {"a": a, "B": list(B), "type": t, "u": sorted(family.u(a, t))}
                        break
                if failure:
                    break
            if failure:
                break
        if failure:
            break
    report.add("coverage", failure is None, failure, skipped=skipped)
    return report
