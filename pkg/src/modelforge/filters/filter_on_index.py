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
from typing import Dict, FrozenSet, Iterable, Iterator, List, Set, Tuple

from modelforge.errors import ImproperFilterError, InputError, NotUltrafilterError


def _as_index_set(subset: Iterable[int], index_size: int) -> FrozenSet[int]:
    members = frozenset(int(i) for i in subset)
    outside = sorted(i for i in members if not 0 <= i < index_size)
    if outside:
        raise InputError("indices %s are outside of I = {0, ..., %d}" % (outside, index_size - 1))
    return members


class FilterOnIndex:
    """Filter on the finite index set I = {0, ..., index_size-1} given by
    generators. On a finite index set every filter is principal: it
    consists of the supersets of its kernel, the intersection of all
    generators. Without generators the kernel is I itself.

    :param index_size: Size of the index set I.
    :type index_size: int
    :param generators: Generating subsets of I.
    :type generators: Iterable[Iterable[int]]
    :raises ImproperFilterError: The generators have an empty intersection.
    """

    def __init__(self, index_size: int, generators: Iterable[Iterable[int]] = ()) -> None:
        if index_size < 0:
            raise InputError("index size must be a natural number, got %s" % index_size)
        self.index_size = int(index_size)
        self.generators: Tuple[FrozenSet[int], ...] = tuple(_as_index_set(g, self.index_size) for g in generators)

        kernel = frozenset(range(self.index_size))
        for generator in self.generators:
            kernel &= generator
        if not kernel:
            raise ImproperFilterError("generators have an empty intersection, the filter is improper")
        self.kernel = kernel

    @classmethod
    def principal(cls, index_size: int, j: int) -> "FilterOnIndex":
        return cls(index_size, [[j]])

    @classmethod
    def trivial(cls, index_size: int) -> "FilterOnIndex":
        """The filter {I}."""
        return cls(index_size, [range(index_size)])

    @property
    def index_set(self) -> range:
        return range(self.index_size)

    def member(self, subset: Iterable[int]) -> bool:
        return self.kernel <= _as_index_set(subset, self.index_size)

    def is_ultrafilter(self) -> bool:
        return len(self.kernel) == 1

    def ultrafilter_index(self) -> int:
        """The index j the ultrafilter is principal at."""
        if not self.is_ultrafilter():
            raise NotUltrafilterError("filter with kernel %s is not an ultrafilter" % sorted(self.kernel))
        return next(iter(self.kernel))

    def members(self) -> Iterator[FrozenSet[int]]:
        """All members, ordered by size and then lexicographically."""
        rest = sorted(set(self.index_set) - self.kernel)
        for size in range(len(rest) + 1):
            for extra in itertools.combinations(rest, size):
                yield self.kernel | frozenset(extra)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FilterOnIndex) and (self.index_size, self.kernel) == (other.index_size, other.kernel)

    def __hash__(self) -> int:
        return hash((self.index_size, self.kernel))

    def __repr__(self) -> str:
        return "FilterOnIndex(index_size=%d, kernel=%s)" % (self.index_size, sorted(self.kernel))

    def to_json(self) -> Dict:
        return {"index_size": self.index_size, "generators": [sorted(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: Dict) -> "FilterOnIndex":
        try:
            return cls(int(data["index_size"]), data.get("generators", []))
        except KeyError as error:
            raise InputError("filter file misses field %s" % error) from error


def filter_member(index_filter: FilterOnIndex, subset: Iterable[int]) -> bool:
    """True iff subset is a member of the filter, i.e. contains its kernel.

    :raises InputError: subset contains an index outside of I.
    """
    return index_filter.member(subset)


def is_ultrafilter(index_filter: FilterOnIndex) -> bool:
    return index_filter.is_ultrafilter()


def generated_by_saturation(index_size: int, generators: Iterable[Iterable[int]]) -> Set[FrozenSet[int]]:
    """Filter generated by the generators, computed by closing under
    finite intersections and then under supersets. Exponential in
    index_size; used as an independent check of kernel membership.
    The improper filter (every subset) is returned as is.
    """
    full = frozenset(range(index_size))
    closed: Set[FrozenSet[int]] = {full} | {frozenset(g) for g in generators}
    changed = True
    while changed:
        changed = False
        for first, second in itertools.product(list(closed), repeat=2):
            meet = first & second
            if meet not in closed:
                closed.add(meet)
                changed = True

    subsets: List[FrozenSet[int]] = [frozenset(c) for size in range(index_size + 1)
        for c in itertools.combinations(range(index_size), size)]
    return {subset for subset in subsets if any(member <= subset for member in closed)}
