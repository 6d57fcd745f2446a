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

import threading
from typing import Dict, List, Sequence, Tuple

from modelforge.coherence.coherent_family import CoherentFamily
from modelforge.errors import DimensionMismatchError, InputError, LadderDepthError
from modelforge.logic.delta import delta_instances, delta_type, positive_delta_type
from modelforge.logic.formula import Exists, Formula, conjuncts
from modelforge.logic.normal_forms import conjoin
from modelforge.logic.structure import FinStructure

MODES = ("embedding", "homomorphism")


class ThetaLadder:
    """The formulas theta[i][zeta] of the embedding construction.

    For an index i and an element zeta let u = u[zeta][i] in increasing
    order and m = |u|. The type part is the Delta_i-type in M of the
    tuple u followed by zeta, written over x_0, ..., x_m. If m + 1 < n[i],
    every epsilon with u[epsilon][i] = u together with zeta extends zeta
    and contributes the conjunct exists x_{m+1}. theta[i][epsilon]. The
    conjunction is deduplicated and ordered by formula text, so equal
    ladders give equal formulas.

    In homomorphism mode the type part keeps the positive literals only.

    :param structure: The source structure M.
    :type structure: FinStructure
    :param family: Coherent family on the elements of M.
    :type family: CoherentFamily
    :param parts: Delta_i for every index i.
    :type parts: Sequence[Sequence[Formula]]
    :param mode: "embedding" or "homomorphism".
    :type mode: str
    """

    def __init__(self, structure: FinStructure, family: CoherentFamily, parts: Sequence[Sequence[Formula]],
            mode: str = "embedding") -> None:

        if mode not in MODES:
            raise InputError("unknown mode '%s', choose one of %s" % (mode, list(MODES)))
        if family.element_count != structure.universe_size:
            raise DimensionMismatchError("family has %d elements, structure %d"
                % (family.element_count, structure.universe_size))
        if len(parts) != family.index_size:
            raise DimensionMismatchError("%d Delta parts for %d indices" % (len(parts), family.index_size))

        self.structure  = structure
        self.family     = family
        self.parts      = [tuple(part) for part in parts]
        self.mode       = mode

        self._memo: Dict[Tuple[int, int], Formula] = {}
        self._memo_lock = threading.Lock()
        self._extensions: Dict[Tuple[int, int], List[int]] = {}
        self._instances: Dict[Tuple[int, int], Tuple[Formula, ...]] = {}

    def m(self, i: int, zeta: int) -> int:
        return len(self.family.u(zeta, i))

    def parameters(self, i: int, zeta: int) -> Tuple[int, ...]:
        """The elements u[zeta][i] in increasing order followed by zeta."""
        return self.family.sorted_u(zeta, i) + (zeta,)

    def extensions(self, i: int, zeta: int) -> List[int]:
        """The epsilon with u[epsilon][i] = u[zeta][i] with zeta added,
        empty unless m + 1 < n[i]."""
        key = (i, zeta)
        if key not in self._extensions:
            extended = self.family.u(zeta, i) | {zeta}
            if self.m(i, zeta) + 1 < self.family.caps[i]:
                self._extensions[key] = [epsilon for epsilon in range(zeta + 1, self.family.element_count)
                    if self.family.u(epsilon, i) == extended]
            else:
                self._extensions[key] = []
        return self._extensions[key]

    def is_base_case(self, i: int, zeta: int) -> bool:
        return not self.extensions(i, zeta)

    def type_part(self, i: int, zeta: int) -> Formula:
        width = self.m(i, zeta) + 1
        key = (i, width)
        if key not in self._instances:
            self._instances[key] = delta_instances(self.parts[i], width)
        if self.mode == "homomorphism":
            return positive_delta_type(self.structure, self._instances[key], self.parameters(i, zeta))
        return delta_type(self.structure, self._instances[key], self.parameters(i, zeta))

    def theta(self, i: int, zeta: int) -> Formula:
        """theta[i][zeta], satisfied in M by u[zeta][i] followed by zeta.

        :raises LadderDepthError: The extension chain grows beyond n[i],
            which only happens for families violating condition (i).
        """
        return self._theta(i, zeta, 0)

    def _theta(self, i: int, zeta: int, depth: int) -> Formula:
        key = (i, zeta)
        if key in self._memo:
            return self._memo[key]
        if depth > self.family.caps[i]:
            raise LadderDepthError("extension chain at index %d passes cap %d at element %d"
                % (i, self.family.caps[i], zeta))

        parts = list(conjuncts(self.type_part(i, zeta)))
        m = self.m(i, zeta)
        for epsilon in self.extensions(i, zeta):
            parts.append(Exists(m + 1, self._theta(i, epsilon, depth + 1)))
        formula = conjoin(parts)
        # worker threads of build_embedding share the memo
        with self._memo_lock:
            return self._memo.setdefault(key, formula)

    def distinct_count(self, i: int) -> int:
        """Number of distinct formulas theta[i][zeta] over all zeta."""
        return len({self.theta(i, zeta) for zeta in range(self.family.element_count)})

    def contains_extension_conjunct(self, i: int, gamma: int, zeta: int) -> bool:
        """True iff theta[i][gamma] has the conjunct exists x_{m+1}. theta[i][zeta]
        with m = |u[gamma][i]|."""
        target = Exists(self.m(i, gamma) + 1, self.theta(i, zeta))
        return target in conjuncts(self.theta(i, gamma))
