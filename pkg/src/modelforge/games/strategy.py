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

from abc import ABC, abstractmethod
from typing import Dict, Optional, Tuple

from modelforge.errors import InputError, StrategyError
from modelforge.games.position import Element, GamePosition, Move, Side, element_from_json, element_to_json

STRATEGY_FILE_VERSION = 1

MemoKey = Tuple[Tuple, Side, Element]


class Strategy(ABC):
    """This is an abstract strategy class for player II. A strategy
    maps a position and a move of player I to II's reply on the
    opposite side. The scope is the number of rounds the strategy is
    certified for, None means any number of rounds.
    """

    kind = None

    def __init__(self, scope: Optional[int] = None) -> None:
        assert scope is None or scope >= 0, "strategy scope must be a natural number"
        self.scope = scope

    def covers(self, rounds: int) -> bool:
        return self.scope is None or rounds <= self.scope

    @abstractmethod
    def reply(self, position: GamePosition, challenge: Move) -> Move:
        """II's reply to challenge at position.

        :param position: Rounds played so far.
        :type position: GamePosition
        :param challenge: Move of player I.
        :type challenge: Move
        :raises StrategyError: The strategy has no reply.
        :return: Move on the side opposite to the challenge.
        :rtype: Move
        """
        pass

    @abstractmethod
    def to_json(self) -> Dict:
        """Implementation in child class."""
        pass


class CopyStrategy(Strategy):
    """Replies with the challenged element itself. Wins on identical
    structures for any number of rounds."""

    kind = "copy"

    def reply(self, position: GamePosition, challenge: Move) -> Move:
        return Move(challenge.side.opposite, challenge.element)

    def to_json(self) -> Dict:
        return {"version": STRATEGY_FILE_VERSION, "kind": self.kind, "scope": self.scope}

    @classmethod
    def from_json(cls, data: Dict) -> "CopyStrategy":
        return cls(data.get("scope"))


class ConstantStrategy(Strategy):
    """Always replies with one fixed element."""

    kind = "constant"

    def __init__(self, element: Element = 0, scope: Optional[int] = None) -> None:
        super().__init__(scope)
        self.element = element

    def reply(self, position: GamePosition, challenge: Move) -> Move:
        return Move(challenge.side.opposite, self.element)

    def to_json(self) -> Dict:
        return {"version": STRATEGY_FILE_VERSION, "kind": self.kind, "scope": self.scope,
            "elem": element_to_json(self.element)}

    @classmethod
    def from_json(cls, data: Dict) -> "ConstantStrategy":
        return cls(element_from_json(data.get("elem", 0)), data.get("scope"))


class MemoStrategy(Strategy):
    """Strategy given by an explicit table from (normalized position,
    side, element) to the reply element. Positions are normalized by
    GamePosition.key.

    :param table: The reply table.
    :type table: Dict[MemoKey, Element]
    :param scope: Number of rounds the table is certified for.
    :type scope: int
    """

    kind = "memo"

    def __init__(self, table: Dict[MemoKey, Element], scope: Optional[int] = None) -> None:
        super().__init__(scope)
        self.table = dict(table)

    def __len__(self) -> int:
        return len(self.table)

    def reply(self, position: GamePosition, challenge: Move) -> Move:
        key = (position.key(), challenge.side, challenge.element)
        if key not in self.table:
            raise StrategyError("no reply stored for %s at the position %s"
                % (challenge.to_json(), position.to_json()))
        return Move(challenge.side.opposite, self.table[key])

    def to_json(self) -> Dict:
        entries = []
        for ((length, pairs), side, element), reply in sorted(self.table.items(), key=lambda item: repr(item[0])):
            entries.append({
                "length": length,
                "pairs": [[element_to_json(a), element_to_json(b)] for a, b in pairs],
                "side": side.value,
                "elem": element_to_json(element),
                "reply": element_to_json(reply),
            })
        return {"version": STRATEGY_FILE_VERSION, "kind": self.kind, "scope": self.scope, "entries": entries}

    @classmethod
    def from_json(cls, data: Dict) -> "MemoStrategy":
        table = {}
        try:
            for entry in data["entries"]:
                pairs = tuple((element_from_json(a), element_from_json(b)) for a, b in entry["pairs"])
                key = ((int(entry["length"]), pairs), Side(entry["side"]), element_from_json(entry["elem"]))
                table[key] = element_from_json(entry["reply"])
        except (KeyError, ValueError, TypeError) as error:
            raise InputError("malformed strategy entry: %s" % error) from error
        return cls(table, data.get("scope"))


def strategy_from_json(data: Dict) -> Strategy:
    """Loads a strategy file written by Strategy.to_json.

    :raises InputError: Unknown version or kind.
    """
    from modelforge.games import DICT_STRATEGY

    if data.get("version") != STRATEGY_FILE_VERSION:
        raise InputError("strategy file version %s is not supported, expected %d"
            % (data.get("version"), STRATEGY_FILE_VERSION))
    kind = data.get("kind")
    if kind not in DICT_STRATEGY:
        raise InputError("unknown strategy kind '%s', choose one of %s" % (kind, sorted(DICT_STRATEGY)))
    return DICT_STRATEGY[kind].from_json(data)
