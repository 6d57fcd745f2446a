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
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

import numpy as np

from modelforge.errors import DimensionMismatchError, InputError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.report import CheckReport


class CoherentFamily:
    """Sets u[zeta][i] for elements zeta < Z and indices i in I together
    with caps n[i]. Construction only checks the shape; the coherence
    conditions are checked by check_coherent.

    :param element_count: Number of elements Z.
    :type element_count: int
    :param index_size: Size of the index set I.
    :type index_size: int
    :param sets: sets[zeta][i] is u[zeta][i].
    :type sets: Sequence[Sequence[Iterable[int]]]
    :param caps: caps[i] is n[i].
    :type caps: Sequence[int]
    """

    def __init__(self, element_count: int, index_size: int, sets: Sequence[Sequence[Iterable[int]]],
            caps: Sequence[int]) -> None:

        if len(sets) != element_count:
            raise DimensionMismatchError("%d rows of sets for %d elements" % (len(sets), element_count))
        if len(caps) != index_size:
            raise DimensionMismatchError("%d caps for an index set of size %d" % (len(caps), index_size))
        for zeta, row in enumerate(sets):
            if len(row) != index_size:
                raise DimensionMismatchError("row %d has %d sets, expected %d" % (zeta, len(row), index_size))

        self.element_count  = int(element_count)
        self.index_size     = int(index_size)
        self.sets: Tuple[Tuple[FrozenSet[int], ...], ...] = tuple(
            tuple(frozenset(int(x) for x in u) for u in row) for row in sets)
        self.caps: Tuple[int, ...] = tuple(int(n) for n in caps)
        if any(n < 1 for n in self.caps):
            raise InputError("caps must be positive integers")

    def u(self, zeta: int, i: int) -> FrozenSet[int]:
        return self.sets[zeta][i]

    def sorted_u(self, zeta: int, i: int) -> Tuple[int, ...]:
        return tuple(sorted(self.sets[zeta][i]))

    def restrict(self, element_count: int) -> "CoherentFamily":
        """The family on the first element_count elements."""
        assert 0 <= element_count <= self.element_count, "restriction must not enlarge the family"
        return CoherentFamily(element_count, self.index_size, self.sets[:element_count], self.caps)

    def select_indices(self, indices: Sequence[int]) -> "CoherentFamily":
        """Reindexed copy: index j of the result is index indices[j] of self."""
        return CoherentFamily(self.element_count, len(indices),
            [[row[i] for i in indices] for row in self.sets], [self.caps[i] for i in indices])

    def incidence(self) -> np.ndarray:
        """Boolean array of shape (Z, |I|, Z) with entry (zeta, i, x) set
        iff x is in u[zeta][i]. Members outside 0..Z-1 are dropped."""
        array = np.zeros((self.element_count, self.index_size, self.element_count), dtype=bool)
        for zeta, row in enumerate(self.sets):
            for i, u in enumerate(row):
                for x in u:
                    if 0 <= x < self.element_count:
                        array[zeta, i, x] = True
        return array

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoherentFamily) and (self.element_count, self.index_size, self.sets, self.caps) \
            == (other.element_count, other.index_size, other.sets, other.caps)

    def __hash__(self) -> int:
        return hash((self.element_count, self.index_size, self.sets, self.caps))

    def to_json(self) -> Dict:
        return {
            "element_count": self.element_count,
            "index_size": self.index_size,
            "caps": list(self.caps),
            "sets": [[sorted(u) for u in row] for row in self.sets],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "CoherentFamily":
        try:
            return cls(int(data["element_count"]), int(data["index_size"]), data["sets"], data["caps"])
        except KeyError as error:
            raise InputError("family file misses field %s" % error) from error


def initial_segments(element_count: int, index_size: int, cap: Optional[int] = None) -> CoherentFamily:
    """The family u[zeta][i] = {0, ..., zeta-1} with n[i] = cap (default Z)."""
    cap = element_count if cap is None else cap
    sets = [[range(zeta)] * index_size for zeta in range(element_count)]
    return CoherentFamily(element_count, index_size, sets, [max(cap, 1)] * index_size)


def check_coherent(family: CoherentFamily, index_filter: FilterOnIndex, b: int = 2) -> CheckReport:
    """Checks the four coherence conditions of a family against a filter:

    (i) |u[zeta][i]| < n[i],
    (ii) u[zeta][i] is a subset of {0, ..., zeta-1},
    (iii) {i : B subset of u[zeta][i]} is in D for every B subset of zeta with |B| <= b,
    (iv) gamma in u[zeta][i] implies u[gamma][i] = u[zeta][i] intersected with gamma.

    Each failing condition carries its first counterexample.

    :param family: The family u.
    :type family: CoherentFamily
    :param index_filter: Filter D on the index set of the family.
    :type index_filter: FilterOnIndex
    :param b: Size bound for the sets B of condition (iii).
    :type b: int
    :raises DimensionMismatchError: Family and filter have different index sets.
    :return: Report with conditions "i", "ii", "iii" and "iv".
    :rtype: CheckReport
    """
    if family.index_size != index_filter.index_size:
        raise DimensionMismatchError("family has %d indices, filter %d" % (family.index_size, index_filter.index_size))

    report = CheckReport("coherent family")
    Z, I = family.element_count, range(family.index_size)

    # (i)
    witness = next(((zeta, i) for zeta in range(Z) for i in I
        if len(family.u(zeta, i)) >= family.caps[i]), None)
    report.add("i", witness is None, witness and {"zeta": witness[0], "i": witness[1],
        "size": len(family.u(*witness)), "cap": family.caps[witness[1]]})

    # (ii)
    witness = next(((zeta, i, x) for zeta in range(Z) for i in I
        for x in sorted(family.u(zeta, i)) if not 0 <= x < zeta), None)
    report.add("ii", witness is None, witness and {"zeta": witness[0], "i": witness[1], "member": witness[2]})

    # (iii) membership in D only depends on the kernel
    kernel = sorted(index_filter.kernel)
    witness = None
    for zeta in range(Z):
        common = frozenset(range(zeta))
        for i in kernel:
            common &= family.u(zeta, i)
        missing = [x for x in range(zeta) if x not in common]
        if missing and b >= 1:
            x = missing[0]
            witness = {"zeta": zeta, "B": [x], "agreement": [i for i in I if x in family.u(zeta, i)]}
            break
    report.add("iii", witness is None, witness, b=b)

    # (iv)
    witness = None
    for zeta in range(Z):
        for i in I:
            u = family.u(zeta, i)
            for gamma in sorted(u):
                if not 0 <= gamma < Z:
                    continue
                expected = frozenset(x for x in u if x < gamma)
                if family.u(gamma, i) != expected:
                    witness = {"zeta": zeta, "i": i, "gamma": gamma, "u_gamma": sorted(family.u(gamma, i)),
                        "expected": sorted(expected)}
                    break
            if witness:
                break
        if witness:
            break
    report.add("iv", witness is None, witness)
    return report


def check_coherent_exhaustive(family: CoherentFamily, index_filter: FilterOnIndex, b: int = 2) -> bool:
    """Condition (iii) by enumerating every B with |B| <= b and testing
    filter membership directly. Used as an independent check of the
    kernel shortcut in check_coherent."""
    for zeta in range(family.element_count):
        for size in range(b + 1):
            for B in itertools.combinations(range(zeta), size):
                agreement = [i for i in range(family.index_size) if set(B) <= family.u(zeta, i)]
                if not index_filter.member(agreement):
                    return False
    return True
