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
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from modelforge.errors import BudgetExceededError, VocabularyError
from modelforge.games.adversary import DEFAULT_ADVERSARY_BUDGET, exhaustive_adversary_check
from modelforge.games.arena import StructureArena
from modelforge.games.position import GamePosition, Move, Side, is_partial_isomorphism
from modelforge.games.strategy import MemoStrategy
from modelforge.logic.structure import FinStructure

DEFAULT_DEPTH_BUDGET    = 4
DEFAULT_SIZE_BUDGET     = 8

PairSet = FrozenSet[Tuple[int, int]]


@dataclass
class EFResult:
    rounds: int
    winner: str
    strategy: Optional[MemoStrategy] = None
    certified: bool = False
    spoiler_move: Optional[Move] = None

    def to_json(self) -> Dict:
        data = {"rounds": self.rounds, "winner": self.winner, "certified": self.certified}
        if self.strategy is not None:
            data["strategy"] = self.strategy.to_json()
        if self.spoiler_move is not None:
            data["spoiler_move"] = self.spoiler_move.to_json()
        return data


class EFSolver:
    """Exact solver for the n-round EF game on two finite structures.

    II wins from a set of pairs with k rounds left iff the pairs form a
    partial isomorphism and, for k > 0, every move of I has a reply
    after which II wins with k-1 rounds left. Verdicts are memoized on
    (pairs, k); moves and replies are tried in increasing element order,
    M before N.

    :param source: Structure on side M.
    :type source: FinStructure
    :param target: Structure on side N.
    :type target: FinStructure
    :param depth_budget: Maximal number of rounds.
    :type depth_budget: int
    :param size_budget: Maximal universe size of either structure.
    :type size_budget: int
    """

    def __init__(self, source: FinStructure, target: FinStructure, depth_budget: int = DEFAULT_DEPTH_BUDGET,
            size_budget: int = DEFAULT_SIZE_BUDGET) -> None:

        if source.vocabulary != target.vocabulary:
            raise VocabularyError("EF games need a common vocabulary")
        largest = max(source.universe_size, target.universe_size)
        if largest > size_budget:
            raise BudgetExceededError("structure of size %d exceeds the size budget %d" % (largest, size_budget))

        self.source         = source
        self.target         = target
        self.depth_budget   = depth_budget
        self.size_budget    = size_budget

        self._memo: Dict[Tuple[PairSet, int], bool] = {}
        self._lock = threading.Lock()

    def _universe(self, side: Side) -> range:
        return (self.source if side is Side.M else self.target).universe

    def _pair(self, side: Side, x: int, y: int) -> Tuple[int, int]:
        return (x, y) if side is Side.M else (y, x)

    def wins(self, pairs: PairSet, rounds: int) -> bool:
        """True iff II wins from pairs with the given number of rounds left."""
        key = (pairs, rounds)
        if key in self._memo:
            return self._memo[key]
        verdict = is_partial_isomorphism(self.source, self.target, sorted(pairs))
        if verdict and rounds > 0:
            verdict = all(self.best_reply(pairs, rounds, side, x) is not None
                for side in (Side.M, Side.N) for x in self._universe(side))
        with self._lock:
            self._memo[key] = verdict
        return verdict

    def best_reply(self, pairs: PairSet, rounds: int, side: Side, x: int) -> Optional[int]:
        """Least reply to I playing x on side after which II wins with
        rounds-1 rounds left, None if there is none."""
        for y in self._universe(side.opposite):
            if self.wins(pairs | {self._pair(side, x, y)}, rounds - 1):
                return y
        return None

    def spoiler_move(self, pairs: PairSet, rounds: int) -> Optional[Move]:
        """Least move of I that II cannot answer."""
        for side in (Side.M, Side.N):
            for x in self._universe(side):
                if self.best_reply(pairs, rounds, side, x) is None:
                    return Move(side, x)
        return None

    def strategy(self, rounds: int) -> MemoStrategy:
        """Table of II's least winning replies over all positions reachable
        under the table itself. Requires that II wins the game."""
        table = {}
        stack = [GamePosition()]
        while stack:
            position = stack.pop()
            left = rounds - len(position)
            if left == 0:
                continue
            pairs = frozenset(position.pairs)
            for side in (Side.M, Side.N):
                for x in self._universe(side):
                    key = (position.key(), side, x)
                    if key in table:
                        continue
                    y = self.best_reply(pairs, left, side, x)
                    table[key] = y
                    stack.append(position.extend(Move(side, x), Move(side.opposite, y)))
        return MemoStrategy(table, rounds)

    def solve(self, rounds: int, certify: bool = True,
            adversary_budget: int = DEFAULT_ADVERSARY_BUDGET) -> EFResult:
        """Verdict of the n-round game, with II's strategy when II wins.

        :raises BudgetExceededError: rounds exceeds the depth budget.
        """
        if rounds > self.depth_budget:
            raise BudgetExceededError("%d rounds exceed the depth budget %d" % (rounds, self.depth_budget))
        empty: PairSet = frozenset()
        if not self.wins(empty, rounds):
            return EFResult(rounds, "I", spoiler_move=self.spoiler_move(empty, rounds))

        strategy = self.strategy(rounds)
        certified = False
        if certify:
            arena = StructureArena(self.source, self.target)
            certified = exhaustive_adversary_check(arena, strategy, rounds, adversary_budget).passed
        return EFResult(rounds, "II", strategy, certified)


def solve_ef(source: FinStructure, target: FinStructure, rounds: int, depth_budget: int = DEFAULT_DEPTH_BUDGET,
        size_budget: int = DEFAULT_SIZE_BUDGET, certify: bool = True) -> EFResult:
    """Solves the EF game of the given length on source and target.

    :param source: Structure on side M.
    :type source: FinStructure
    :param target: Structure on side N.
    :type target: FinStructure
    :param rounds: Number of rounds n.
    :type rounds: int
    :param depth_budget: Maximal n.
    :type depth_budget: int
    :param size_budget: Maximal universe size.
    :type size_budget: int
    :param certify: Replay II's strategy against every play of I.
    :type certify: bool
    :raises BudgetExceededError: A budget is exceeded.
    :return: Winner, and II's strategy when II wins.
    :rtype: EFResult
    """
    return EFSolver(source, target, depth_budget, size_budget).solve(rounds, certify)
