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
from modelforge.errors import DimensionMismatchError, GroupConditionError
from modelforge.report import CheckReport


@dataclass
class SFamily:
    """Sets V[alpha][zeta] for groups alpha and elements zeta, with caps lambda_alpha."""

    sets: Tuple[Tuple[FrozenSet[int], ...], ...]
    caps: Tuple[int, ...]

    @property
    def group_count(self) -> int:
        return len(self.sets)

    def V(self, alpha: int, zeta: int) -> FrozenSet[int]:
        return self.sets[alpha][zeta]

    def to_json(self) -> Dict:
        return {"caps": list(self.caps), "sets": [[sorted(V) for V in row] for row in self.sets]}


def close_under_intersections(sets: Sequence[FrozenSet[int]]) -> List[FrozenSet[int]]:
    """The given sets followed by every new nonempty intersection of
    finitely many of them, in order of discovery."""
    closed: List[FrozenSet[int]] = [frozenset(A) for A in sets]
    known = set(closed)
    frontier = list(closed)
    while frontier:
        found = []
        for A, B in itertools.product(frontier, list(known)):
            meet = A & B
            if meet and meet not in known:
                known.add(meet)
                closed.append(meet)
                found.append(meet)
        frontier = found
    return closed


def check_groups(generators: Sequence[FrozenSet[int]], groups: Sequence[Sequence[int]],
        caps: Sequence[int]) -> None:
    """Raises GroupConditionError unless the groups increase, every group
    contains a representative of each finite intersection of its
    members, the groups cover all generators and |group alpha| <= cap alpha."""
    if len(groups) != len(caps):
        raise DimensionMismatchError("%d groups but %d caps" % (len(groups), len(caps)))
    for alpha, group in enumerate(groups):
        if any(not 0 <= gamma < len(generators) for gamma in group):
            raise DimensionMismatchError("group %d names a generator outside 0..%d" % (alpha, len(generators) - 1))
        if len(set(group)) > caps[alpha]:
            raise GroupConditionError("group %d has %d members, cap is %d" % (alpha, len(set(group)), caps[alpha]))
    for alpha in range(len(groups) - 1):
        if not set(groups[alpha]) <= set(groups[alpha + 1]):
            raise GroupConditionError("group %d is not contained in group %d" % (alpha, alpha + 1))
    for alpha, group in enumerate(groups):
        members = {generators[gamma] for gamma in group}
        for meet in close_under_intersections(sorted(members, key=sorted)):
            if meet not in members:
                raise GroupConditionError("group %d has no representative of the intersection %s"
                    % (alpha, sorted(meet)))
    covered = set().union(*(set(group) for group in groups)) if groups else set()
    if covered != set(range(len(generators))):
        raise GroupConditionError("groups miss generators %s" % sorted(set(range(len(generators))) - covered))


def build_groups(generators: Sequence[FrozenSet[int]], group_count: int,
        cap_floor: int = 0) -> Tuple[List[FrozenSet[int]], List[List[int]], List[int]]:
    """Groups satisfying check_groups: the generators are closed under
    intersections, group alpha holds the closure of the first
    ceil((alpha+1)/c) share of the original generators and the last
    group holds everything.

    :return: Closed generator list, groups and caps max(|group alpha|, cap_floor).
    """
    assert group_count >= 1, "at least one group is needed"
    closed = close_under_intersections(generators)
    position = {A: gamma for gamma, A in enumerate(closed)}
    groups = []
    for alpha in range(group_count):
        share = -(-len(generators) * (alpha + 1) // group_count)
        prefix = close_under_intersections(generators[:share])
        groups.append(sorted({position[A] for A in prefix}))
    if groups:
        groups[-1] = list(range(len(closed)))
    return closed, groups, [max(len(group), cap_floor) for group in groups]


def derive_s_family(family: CoherentFamily, generators: Sequence[FrozenSet[int]], groups: Sequence[Sequence[int]],
        caps: Sequence[int]) -> Tuple[SFamily, CheckReport]:
    """V[alpha][zeta] = {xi < zeta : A_gamma is a subset of {i : xi in u[zeta][i]}
    for some gamma in group alpha}, and the report on:

    "increasing": V[alpha][zeta] is contained in V[alpha+1][zeta],
    "union": the last group gives all of zeta,
    "cap": |V[alpha][zeta]| <= lambda_alpha,
    "coherent": xi in V[alpha][zeta] implies V[alpha][xi] = V[alpha][zeta] below xi,
    "bounded": |V[alpha][zeta]| < lambda_alpha + 1.

    :param family: Family u on the index set I.
    :type family: CoherentFamily
    :param generators: Sets A_gamma of I.
    :type generators: Sequence[FrozenSet[int]]
    :param groups: Increasing groups of generator indices.
    :type groups: Sequence[Sequence[int]]
    :param caps: Caps lambda_alpha.
    :type caps: Sequence[int]
    :raises GroupConditionError: The groups violate a precondition.
    """
    generators = [frozenset(A) for A in generators]
    check_groups(generators, groups, caps)

    Z = family.element_count
    sets = []
    for group in groups:
        row = []
        for zeta in range(Z):
            carriers = {xi: frozenset(i for i in range(family.index_size) if xi in family.u(zeta, i))
                for xi in range(zeta)}
            row.append(frozenset(xi for xi in range(zeta) if any(generators[gamma] <= carriers[xi] for gamma in group)))
        sets.append(tuple(row))
    s_family = SFamily(tuple(sets), tuple(int(cap) for cap in caps))

    report = CheckReport("s family")
    A = range(s_family.group_count)
    witness = next(({"alpha": alpha, "zeta": zeta} for alpha in A[:-1] for zeta in range(Z)
        if not s_family.V(alpha, zeta) <= s_family.V(alpha + 1, zeta)), None)
    report.add("increasing", witness is None, witness)

    witness = None
    if s_family.group_count:
        witness = next(({"zeta": zeta, "missing": sorted(set(range(zeta)) - s_family.V(A[-1], zeta))}
            for zeta in range(Z) if s_family.V(A[-1], zeta) != frozenset(range(zeta))), None)
    report.add("union", witness is None, witness)

    witness = next(({"alpha": alpha, "zeta": zeta, "size": len(s_family.V(alpha, zeta))} for alpha in A
        for zeta in range(Z) if len(s_family.V(alpha, zeta)) > s_family.caps[alpha]), None)
    report.add("cap", witness is None, witness)

    witness = next(({"alpha": alpha, "zeta": zeta, "xi": xi} for alpha in A for zeta in range(Z)
        for xi in sorted(s_family.V(alpha, zeta))
        if s_family.V(alpha, xi) != frozenset(x for x in s_family.V(alpha, zeta) if x < xi)), None)
    report.add("coherent", witness is None, witness)

    witness = next(({"alpha": alpha, "zeta": zeta} for alpha in A for zeta in range(Z)
        if not len(s_family.V(alpha, zeta)) < s_family.caps[alpha] + 1), None)
    report.add("bounded", witness is None, witness)
    return s_family, report
