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

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from modelforge.errors import InputError, VocabularyError
from modelforge.logic.structure import FinStructure

Element = Union[int, Tuple[int, ...]]


class Side(Enum):
    M = "M"
    N = "N"

    @property
    def opposite(self) -> "Side":
        return Side.N if self is Side.M else Side.M


def element_from_json(data: Union[int, List[int]]) -> Element:
    if isinstance(data, list):
        return tuple(int(x) for x in data)
    return int(data)


def element_to_json(element: Element) -> Union[int, List[int]]:
    if isinstance(element, tuple):
        return list(element)
    return int(element)


@dataclass(frozen=True)
class Move:
    side: Side
    element: Element

    def to_json(self) -> Dict:
        return {"side": self.side.value, "elem": element_to_json(self.element)}

    @classmethod
    def from_json(cls, data: Dict) -> "Move":
        try:
            return cls(Side(data["side"]), element_from_json(data["elem"]))
        except (KeyError, ValueError, TypeError) as error:
            raise InputError("malformed move %s: %s" % (data, error))


@dataclass(frozen=True)
class Round:
    """One round of an EF game: I plays the challenge on one side, II
    replies on the opposite side."""

    challenge: Move
    reply: Move

    def __post_init__(self) -> None:
        if self.reply.side is not self.challenge.side.opposite:
            raise InputError("reply on side %s to a challenge on side %s"
                % (self.reply.side.value, self.challenge.side.value))

    @property
    def pair(self) -> Tuple[Element, Element]:
        """The round as a pair (element of M, element of N)."""
        if self.challenge.side is Side.M:
            return self.challenge.element, self.reply.element
        return self.reply.element, self.challenge.element

    def to_json(self, index: int) -> Dict:
        return {"round": index, "I": self.challenge.to_json(), "II": self.reply.to_json()}

    @classmethod
    def from_json(cls, data: Dict) -> "Round":
        if "I" not in data or "II" not in data:
            raise InputError("round record %s needs the keys 'I' and 'II'" % data)
        return cls(Move.from_json(data["I"]), Move.from_json(data["II"]))


@dataclass(frozen=True)
class GamePosition:
    rounds: Tuple[Round, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.rounds)

    @property
    def pairs(self) -> List[Tuple[Element, Element]]:
        """The relation pi as (element of M, element of N) pairs in round order."""
        return [r.pair for r in self.rounds]

    def extend(self, challenge: Move, reply: Move) -> "GamePosition":
        return GamePosition(self.rounds + (Round(challenge, reply),))

    def key(self) -> Tuple:
        """Normalized position: round count and the sorted distinct pairs."""
        return (len(self.rounds), tuple(sorted(set(self.pairs))))

    def to_json(self) -> List[Dict]:
        return [r.to_json(index) for index, r in enumerate(self.rounds)]

    @classmethod
    def from_json(cls, data: Sequence[Dict]) -> "GamePosition":
        return cls(tuple(Round.from_json(record) for record in data))


def is_partial_isomorphism(source: FinStructure, target: FinStructure,
        pairs: Sequence[Tuple[int, int]]) -> bool:
    """True iff the pairs define an injective partial map from source to
    target that preserves and reflects every relation and equality on
    its domain.

    :raises VocabularyError: The structures have different vocabularies.
    """
    if source.vocabulary != target.vocabulary:
        raise VocabularyError("partial isomorphisms need a common vocabulary")
    mapping: Dict[int, int] = {}
    inverse: Dict[int, int] = {}
    for a, b in pairs:
        a, b = int(a), int(b)
        if mapping.setdefault(a, b) != b or inverse.setdefault(b, a) != a:
            return False
    if not mapping:
        return True

    domain = list(mapping)
    image = [mapping[a] for a in domain]
    for name, arity in source.vocabulary.symbols:
        left = source.array(name)[np.ix_(*([domain] * arity))]
        right = target.array(name)[np.ix_(*([image] * arity))]
        if not np.array_equal(left, right):
            return False
    return True
