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
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Sequence, Tuple

from modelforge.errors import DimensionMismatchError, InputError
from modelforge.report import CheckReport

MapKey = Tuple[int, int, int]


class SquareWitness:
    """Finite square data on the linear order L = 0 < 1 < ... < l-1 with
    c levels.

    C[zeta][a] is a set of predecessors of a, E[zeta] an equivalence
    relation on L given by one class label per element and f[(zeta, a, b)]
    a partial map from C[zeta][a] to C[zeta][b], present for
    a E[zeta] b. Labels are normalized to the least element of the
    class, so class ids are canonical.

    :param order_size: Size l of the linear order.
    :type order_size: int
    :param level_count: Number of levels c.
    :type level_count: int
    :param C: C[zeta][a] for zeta < c, a < l.
    :type C: Sequence[Sequence[Iterable[int]]]
    :param E: E[zeta][a] is the class label of a at level zeta.
    :type E: Sequence[Sequence[int]]
    :param f: Map (zeta, a, b) -> {x: f(x)}.
    :type f: Mapping[MapKey, Mapping[int, int]]
    """

    def __init__(self, order_size: int, level_count: int, C: Sequence[Sequence[Iterable[int]]],
            E: Sequence[Sequence[int]], f: Mapping[MapKey, Mapping[int, int]]) -> None:

        if level_count < 1:
            raise InputError("a witness needs at least one level")
        if len(C) != level_count or len(E) != level_count:
            raise DimensionMismatchError("C and E must have one entry per level")
        for zeta in range(level_count):
            if len(C[zeta]) != order_size or len(E[zeta]) != order_size:
                raise DimensionMismatchError("level %d does not cover the order of size %d" % (zeta, order_size))

        self.order_size     = int(order_size)
        self.level_count    = int(level_count)
        self.C: Tuple[Tuple[FrozenSet[int], ...], ...] = tuple(
            tuple(frozenset(int(x) for x in C_a) for C_a in row) for row in C)
        self.E: Tuple[Tuple[int, ...], ...] = tuple(_canonical_labels(row) for row in E)

        self.f: Dict[MapKey, Dict[int, int]] = {}
        for (zeta, a, b), mapping in f.items():
            key = (int(zeta), int(a), int(b))
            if not (0 <= key[0] < self.level_count and 0 <= key[1] < self.order_size and 0 <= key[2] < self.order_size):
                raise InputError("map key %s outside of the witness" % (key,))
            self.f[key] = {int(x): int(y) for x, y in mapping.items()}

    @property
    def order(self) -> range:
        return range(self.order_size)

    @property
    def top_level(self) -> int:
        return self.level_count - 1

    def equivalent(self, zeta: int, a: int, b: int) -> bool:
        return self.E[zeta][a] == self.E[zeta][b]

    def class_id(self, zeta: int, a: int) -> int:
        return self.E[zeta][a]

    def classes(self, zeta: int) -> Tuple[FrozenSet[int], ...]:
        """E[zeta]-classes ordered by their least element."""
        members: Dict[int, set] = {}
        for a, label in enumerate(self.E[zeta]):
            members.setdefault(label, set()).add(a)
        return tuple(frozenset(members[label]) for label in sorted(members))

    def map(self, zeta: int, a: int, b: int) -> Optional[Dict[int, int]]:
        return self.f.get((zeta, a, b))

    @classmethod
    def trivial(cls, order_size: int) -> "SquareWitness":
        """One level, E equality, C[0][a] all predecessors, f[0][a][a] the identity."""
        C = [[range(a) for a in range(order_size)]]
        E = [list(range(order_size))]
        f = {(0, a, a): {x: x for x in range(a)} for a in range(order_size)}
        return cls(order_size, 1, C, E, f)

    def to_json(self) -> Dict:
        return {
            "order_size": self.order_size,
            "level_count": self.level_count,
            "C": [[sorted(C_a) for C_a in row] for row in self.C],
            "E": [list(row) for row in self.E],
            "f": [{"level": zeta, "a": a, "b": b, "map": sorted([x, y] for x, y in mapping.items())}
                for (zeta, a, b), mapping in sorted(self.f.items())],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "SquareWitness":
        try:
            f = {(entry["level"], entry["a"], entry["b"]): dict(entry["map"]) for entry in data["f"]}
            return cls(int(data["order_size"]), int(data["level_count"]), data["C"], data["E"], f)
        except (KeyError, TypeError) as error:
            raise InputError("malformed witness file: %s" % error) from error


def _canonical_labels(labels: Sequence[int]) -> Tuple[int, ...]:
    least: Dict[int, int] = {}
    for a, label in enumerate(labels):
        least.setdefault(int(label), a)
    return tuple(least[int(label)] for label in labels)


def check_square_witness(witness: SquareWitness) -> CheckReport:
    """Checks the eight square axioms on a finite witness.

    (i) C[zeta][a] increases with zeta, the last level holds all predecessors of a.
    (ii) b in C[zeta][a] implies C[zeta][b] = C[zeta][a] below b.
    (iii) every E[zeta] is an equivalence relation.
    (iv) E[xi] refines E[zeta] for zeta < xi.
    (v) a E[zeta] b implies f[zeta][a][b] is an order isomorphism from
        C[zeta][a] onto C[zeta][b] with d E[zeta] f(d).
    (vi) zeta < xi and a E[xi] b implies f[zeta][a][b] is contained in f[xi][a][b].
    (vii) f[zeta][a][b](a1) = b1 implies f[zeta][a1][b1] is contained in f[zeta][a][b].
    (viii) a in C[zeta][b] implies a, b are not E[zeta]-equivalent.

    :param witness: Witness to check.
    :type witness: SquareWitness
    :return: Report with conditions "i" to "viii".
    :rtype: CheckReport
    """
    W = witness
    levels, L = range(W.level_count), W.order
    report = CheckReport("square witness")

    # (i)
    witness_i = None
    for a in L:
        for zeta in levels:
            if not W.C[zeta][a] <= frozenset(range(a)):
                witness_i = {"level": zeta, "a": a, "reason": "not below a"}
            elif zeta + 1 < W.level_count and not W.C[zeta][a] <= W.C[zeta + 1][a]:
                witness_i = {"level": zeta, "a": a, "reason": "not increasing"}
            if witness_i:
                break
        if witness_i is None and W.C[W.top_level][a] != frozenset(range(a)):
            witness_i = {"level": W.top_level, "a": a, "reason": "union misses predecessors"}
        if witness_i:
            break
    report.add("i", witness_i is None, witness_i)

    # (ii)
    witness_ii = next(({"level": zeta, "a": a, "b": b} for zeta in levels for a in L for b in sorted(W.C[zeta][a])
        if W.C[zeta][b] != frozenset(x for x in W.C[zeta][a] if x < b)), None)
    report.add("ii", witness_ii is None, witness_ii)

    # (iii) labels always describe an equivalence relation
    report.add("iii", True)

    # (iv)
    witness_iv = next(({"lower": zeta, "upper": xi, "a": a, "b": b}
        for zeta, xi in itertools.combinations(levels, 2) for a, b in itertools.combinations(L, 2)
        if W.equivalent(xi, a, b) and not W.equivalent(zeta, a, b)), None)
    report.add("iv", witness_iv is None, witness_iv)

    # (v)
    witness_v = None
    for zeta in levels:
        for a, b in itertools.product(L, repeat=2):
            if not W.equivalent(zeta, a, b):
                continue
            reason = _isomorphism_defect(W, zeta, a, b)
            if reason:
                witness_v = {"level": zeta, "a": a, "b": b, "reason": reason}
                break
        if witness_v:
            break
    report.add("v", witness_v is None, witness_v)

    # (vi)
    witness_vi = None
    for zeta, xi in itertools.combinations(levels, 2):
        for a, b in itertools.product(L, repeat=2):
            if W.equivalent(xi, a, b) and not _contained(W.map(zeta, a, b), W.map(xi, a, b)):
                witness_vi = {"lower": zeta, "upper": xi, "a": a, "b": b}
                break
        if witness_vi:
            break
    report.add("vi", witness_vi is None, witness_vi)

    # (vii)
    witness_vii = next(({"level": zeta, "a": a, "b": b, "a1": a1, "b1": b1}
        for (zeta, a, b), mapping in sorted(W.f.items()) for a1, b1 in sorted(mapping.items())
        if not _contained(W.map(zeta, a1, b1), mapping)), None)
    report.add("vii", witness_vii is None, witness_vii)

    # (viii)
    witness_viii = next(({"level": zeta, "a": a, "b": b} for zeta in levels for b in L for a in sorted(W.C[zeta][b])
        if W.equivalent(zeta, a, b)), None)
    report.add("viii", witness_viii is None, witness_viii)
    return report


def _contained(inner: Optional[Mapping[int, int]], outer: Optional[Mapping[int, int]]) -> bool:
    if inner is None:
        return True
    if outer is None:
        return not inner
    return all(outer.get(x) == y for x, y in inner.items())


def _isomorphism_defect(W: SquareWitness, zeta: int, a: int, b: int) -> Optional[str]:
    mapping = W.map(zeta, a, b)
    if mapping is None:
        return "map missing"
    if set(mapping) != W.C[zeta][a]:
        return "domain differs from C[a]"
    if set(mapping.values()) != W.C[zeta][b] or len(set(mapping.values())) != len(mapping):
        return "not a bijection onto C[b]"
    ordered = [mapping[x] for x in sorted(mapping)]
    if ordered != sorted(ordered):
        return "not order preserving"
    if any(not W.equivalent(zeta, d, image) for d, image in mapping.items()):
        return "moves an element out of its class"
    return None
