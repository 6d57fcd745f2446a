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
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from modelforge.coherence.square_witness import SquareWitness, check_square_witness
from modelforge.errors import BudgetExceededError, InputError, InvalidWitnessError, PreconditionError
from modelforge.report import CheckReport

Entry = Tuple[int, int, int, int, int]


def require_valid(witness: SquareWitness) -> None:
    report = check_square_witness(witness)
    if not report.passed:
        failure = report.failures()[0]
        raise InvalidWitnessError("witness violates axiom (%s): %s" % (failure.name, failure.counterexample))


# TREE OF LEVELS
@dataclass
class LevelsTree:
    level: int
    classes: Tuple[FrozenSet[int], ...]
    relation: FrozenSet[Tuple[int, int]]
    verdict: CheckReport

    def to_json(self) -> Dict:
        return {
            "level": self.level,
            "classes": [sorted(t) for t in self.classes],
            "relation": sorted(list(pair) for pair in self.relation),
            "verdict": self.verdict.to_json(),
        }


def tree_order_verdict(node_count: int, relation: Set[Tuple[int, int]]) -> CheckReport:
    """Checks that a relation on nodes 0..node_count-1 is transitive and
    that the predecessors of every node are pairwise comparable."""
    report = CheckReport("tree order")
    witness = next(({"x": x, "y": y, "z": z} for x, y in sorted(relation) for z in range(node_count)
        if (y, z) in relation and (x, z) not in relation), None)
    report.add("transitive", witness is None, witness)

    witness = None
    for t in range(node_count):
        below = sorted(s for s in range(node_count) if (s, t) in relation)
        for s1, s2 in itertools.combinations(below, 2):
            if (s1, s2) not in relation and (s2, s1) not in relation:
                witness = {"node": t, "incomparable": [s1, s2]}
                break
        if witness:
            break
    report.add("downward linear", witness is None, witness)
    return report


def levels_tree(witness: SquareWitness, zeta: int) -> LevelsTree:
    """The E[zeta]-classes ordered by t1 < t2 iff some a1 in t1 lies in
    C[zeta][a2] for some a2 in t2, with the tree-order verdict.

    :raises InvalidWitnessError: The witness fails check_square_witness.
    """
    require_valid(witness)
    if not 0 <= zeta < witness.level_count:
        raise InputError("level %d outside of 0..%d" % (zeta, witness.level_count - 1))
    classes = witness.classes(zeta)
    position = {a: k for k, t in enumerate(classes) for a in t}
    relation = frozenset((position[a1], position[a2]) for a2 in witness.order for a1 in witness.C[zeta][a2])
    return LevelsTree(zeta, classes, relation, tree_order_verdict(len(classes), set(relation)))


def xi_level(witness: SquareWitness, a: int, b: int) -> int:
    """The least level zeta with a in C[zeta][b].

    :raises PreconditionError: a is not below b.
    """
    if not a < b:
        raise PreconditionError("xi_level needs a < b, got a=%d, b=%d" % (a, b))
    for zeta in range(witness.level_count):
        if a in witness.C[zeta][b]:
            return zeta
    raise InvalidWitnessError("%d never enters C[%d]" % (a, b))


def xi_tuple(witness: SquareWitness, elements: Sequence[int]) -> int:
    """Largest level over all pairs of an increasing tuple, 0 for tuples of length one."""
    return max((xi_level(witness, a, b) for a, b in itertools.combinations(elements, 2)), default=0)


# TUPLE TYPES
@dataclass(frozen=True)
class TupleType:
    """Type of an increasing tuple: for every pair of positions l < m the
    level xi(a_l, a_m) and the class ids of a_l and a_m at that level."""

    length: int
    entries: Tuple[Entry, ...]

    @property
    def xi(self) -> int:
        return max((entry[2] for entry in self.entries), default=0)

    def restrict(self, positions: Sequence[int]) -> "TupleType":
        """Type of the subtuple at the given increasing positions."""
        rename = {p: k for k, p in enumerate(positions)}
        entries = tuple((rename[l], rename[m], level, cls_a, cls_b)
            for (l, m, level, cls_a, cls_b) in self.entries if l in rename and m in rename)
        return TupleType(len(positions), entries)

    def to_json(self) -> Dict:
        return {"length": self.length, "entries": [list(entry) for entry in self.entries]}


def tuple_type(witness: SquareWitness, elements: Sequence[int]) -> TupleType:
    """Type of a strictly increasing tuple.

    :raises InputError: The tuple is empty or not strictly increasing.
    """
    elements = tuple(int(a) for a in elements)
    if not elements or any(a >= b for a, b in zip(elements, elements[1:])):
        raise InputError("tuple %s is not strictly increasing" % list(elements))
    entries = []
    for l, m in itertools.combinations(range(len(elements)), 2):
        level = xi_level(witness, elements[l], elements[m])
        entries.append((l, m, level, witness.class_id(level, elements[l]), witness.class_id(level, elements[m])))
    return TupleType(len(elements), tuple(entries))


class TypeSpace:
    """The set of realized types of increasing tuples of length at most
    max_length, together with the type of the full enumeration
    0 < 1 < ... < l-1. Types are ordered by length and then by their
    lexicographically least realization, which is kept as canonical
    realization.

    s is below t iff s is the type of a subtuple of a realization of t,
    i.e. a restriction of t to some positions. The type of the full
    enumeration is above every type, so the up-sets of all types
    generate a proper filter on the space.

    A type of length at least two may have several realizations, e.g.
    when two elements share their classes and levels. Such types are
    kept in shared with their second realization.

    :param witness: Validated witness.
    :type witness: SquareWitness
    :param max_length: Maximal length of the enumerated tuples.
    :type max_length: int
    :param tuple_budget: Maximal number of enumerated tuples.
    :type tuple_budget: int
    """

    def __init__(self, witness: SquareWitness, max_length: int = 4, tuple_budget: int = 10**6) -> None:
        assert max_length >= 1, "types need at least one position"
        self.witness    = witness
        self.max_length = max_length

        l = witness.order_size
        tuple_count = sum(math.comb(l, k) for k in range(1, max_length + 1))
        if tuple_count > tuple_budget:
            raise BudgetExceededError("type space needs %d tuples, budget is %d" % (tuple_count, tuple_budget))

        realizations: Dict[TupleType, Tuple[int, ...]] = {}
        self.shared: Dict[TupleType, Tuple[int, ...]] = {}
        for length in range(1, min(max_length, l) + 1):
            for elements in itertools.combinations(range(l), length):
                t = tuple_type(witness, elements)
                first = realizations.setdefault(t, elements)
                if length > 1 and first != elements:
                    self.shared.setdefault(t, elements)
        full = tuple(range(l))
        if l > 0:
            realizations.setdefault(tuple_type(witness, full), full)

        self.types: List[TupleType] = sorted(realizations, key=lambda t: (t.length, realizations[t]))
        self.realizations: List[Tuple[int, ...]] = [realizations[t] for t in self.types]
        self.index: Dict[TupleType, int] = {t: k for k, t in enumerate(self.types)}
        self.full_index = self.index[tuple_type(witness, full)] if l > 0 else None

        self._below: List[Set[int]] = [self._restrictions(t) for t in self.types]

    def __len__(self) -> int:
        return len(self.types)

    def shared_type(self) -> Optional[Dict]:
        """The first type of length at least two with two distinct
        realizations, as its index with both realizations, or None."""
        if not self.shared:
            return None
        t = min(self.shared, key=self.index.__getitem__)
        return {"type": self.index[t], "realizations": [list(self.realizations[self.index[t]]), list(self.shared[t])]}

    def _restrictions(self, t: TupleType) -> Set[int]:
        found = set()
        for length in range(1, min(t.length, self.max_length) + 1):
            for positions in itertools.combinations(range(t.length), length):
                s = t.restrict(positions)
                if s in self.index:
                    found.add(self.index[s])
        found.add(self.index[t])
        return found

    def is_below(self, s: int, t: int) -> bool:
        return s in self._below[t]

    def up_set(self, s: int) -> FrozenSet[int]:
        return frozenset(t for t in range(len(self.types)) if self.is_below(s, t))

    def directedness(self) -> CheckReport:
        """Partial-order and directedness verdict of is_below."""
        report = CheckReport("type order")
        n = len(self.types)
        witness = next(({"s": s, "t": t} for s, t in itertools.combinations(range(n), 2)
            if self.is_below(s, t) and self.is_below(t, s)), None)
        report.add("antisymmetric", witness is None, witness)
        witness = next(({"r": r, "s": s, "t": t} for r in range(n) for s in self.up_set(r)
            for t in self.up_set(s) if not self.is_below(r, t)), None)
        report.add("transitive", witness is None, witness)
        witness = next(({"s": s, "t": t} for s, t in itertools.combinations(range(n), 2)
            if not any(self.is_below(s, u) and self.is_below(t, u) for u in range(n))), None)
        report.add("directed", witness is None, witness)
        return report