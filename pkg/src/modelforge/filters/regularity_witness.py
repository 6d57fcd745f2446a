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

from typing import Dict, FrozenSet, Iterable, Tuple

from modelforge.errors import DimensionMismatchError, InputError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.report import CheckReport


class RegularityWitness:
    """Sets A_alpha of the index set together with a multiplicity cap k.
    For an index i, w(i) = {alpha : i in A_alpha} lists the sets that
    contain i. The witness is valid for a filter D if every A_alpha is
    a member of D and every w(i) has at most k elements.

    :param sets: The sets A_alpha, alpha is the list position.
    :type sets: Iterable[Iterable[int]]
    :param cap: Multiplicity cap k.
    :type cap: int
    """

    def __init__(self, sets: Iterable[Iterable[int]], cap: int) -> None:
        if cap < 0:
            raise InputError("multiplicity cap must be a natural number, got %s" % cap)
        self.sets: Tuple[FrozenSet[int], ...] = tuple(frozenset(int(i) for i in A) for A in sets)
        self.cap = int(cap)

    def __len__(self) -> int:
        return len(self.sets)

    def w(self, i: int) -> FrozenSet[int]:
        return frozenset(alpha for alpha, A in enumerate(self.sets) if i in A)

    def validate(self, index_filter: FilterOnIndex) -> CheckReport:
        """Checks membership of every A_alpha in the filter and the cap
        on every w(i).

        :raises DimensionMismatchError: Some A_alpha leaves the index set of the filter.
        """
        for alpha, A in enumerate(self.sets):
            if any(not 0 <= i < index_filter.index_size for i in A):
                raise DimensionMismatchError("A_%d = %s leaves the index set of size %d"
                    % (alpha, sorted(A), index_filter.index_size))

        report = CheckReport("regularity witness")
        outside = next((alpha for alpha, A in enumerate(self.sets) if not index_filter.member(A)), None)
        report.add("members", outside is None,
            None if outside is None else {"alpha": outside, "set": sorted(self.sets[outside])})

        crowded = next((i for i in index_filter.index_set if len(self.w(i)) > self.cap), None)
        report.add("cap", crowded is None,
            None if crowded is None else {"i": crowded, "w": sorted(self.w(crowded)), "cap": self.cap})
        return report

    def to_json(self) -> Dict:
        return {"sets": [sorted(A) for A in self.sets], "cap": self.cap}

    @classmethod
    def from_json(cls, data: Dict) -> "RegularityWitness":
        try:
            return cls(data["sets"], int(data["cap"]))
        except KeyError as error:
            raise InputError("witness file misses field %s" % error) from error
