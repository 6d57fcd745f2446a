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
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from modelforge.errors import BudgetExceededError, StrategyError
from modelforge.games.arena import Arena
from modelforge.games.position import GamePosition, Move, Side
from modelforge.games.strategy import Strategy
from modelforge.report import CheckReport

DEFAULT_ADVERSARY_BUDGET = 2 * 10**6

PositionHook = Callable[[GamePosition], bool]


@dataclass
class AdversaryResult:
    passed: bool
    explored: int
    transcript: Optional[GamePosition] = None
    reason: Optional[str] = None

    def to_report(self) -> CheckReport:
        report = CheckReport("adversary")
        counterexample = None
        if not self.passed:
            counterexample = {"reason": self.reason, "transcript": self.transcript.to_json()}
        report.add("wins", self.passed, counterexample, explored=self.explored)
        return report


class _NodeCounter:

    def __init__(self, budget: int, total: int) -> None:
        self.budget = budget
        self.total  = total
        self.count  = 0
        self._lock  = threading.Lock()

    def tick(self) -> None:
        with self._lock:
            self.count += 1
            if self.count > self.budget:
                raise BudgetExceededError("adversary search passed %d nodes" % self.budget,
                    explored_fraction=self.budget / self.total)


def _search(arena: Arena, strategy: Strategy, position: GamePosition, remaining: int,
        counter: _NodeCounter, on_position: Optional[PositionHook],
        first_moves: Optional[List[Move]] = None) -> Optional[Tuple[GamePosition, str]]:

    if not arena.is_winning(position):
        return position, "pi is not a partial isomorphism"
    if on_position is not None and not on_position(position):
        return position, "position rejected by the position check"
    if remaining == 0:
        return None

    challenges = first_moves if first_moves is not None else \
        [Move(side, x) for side in (Side.M, Side.N) for x in arena.moves(side)]
    for challenge in challenges:
        counter.tick()
        try:
            reply = strategy.reply(position, challenge)
        except StrategyError as error:
            return position, "no reply to %s: %s" % (challenge.to_json(), error)
        if reply.side is not challenge.side.opposite or not arena.is_legal(reply):
            return position, "illegal reply %s to %s" % (reply.to_json(), challenge.to_json())
        failure = _search(arena, strategy, position.extend(challenge, reply), remaining - 1, counter, on_position)
        if failure is not None:
            return failure
    return None


def exhaustive_adversary_check(arena: Arena, strategy: Strategy, length: int,
        budget: int = DEFAULT_ADVERSARY_BUDGET, start: Optional[GamePosition] = None,
        on_position: Optional[PositionHook] = None, jobs: int = 1) -> AdversaryResult:
    """Plays every sequence of I-moves of the given length against the
    strategy and checks that pi stays a partial isomorphism. A subset of
    a partial isomorphism is one, so the search stops at the first
    position that fails.

    :param arena: The game.
    :type arena: Arena
    :param strategy: Strategy of player II.
    :type strategy: Strategy
    :param length: Number of rounds.
    :type length: int
    :param budget: Maximal number of I-moves explored.
    :type budget: int
    :param start: Position to start from, defaults to the empty position.
    :type start: Optional[GamePosition]
    :param on_position: Called on every visited position, a False result
        counts as a loss of the strategy.
    :type on_position: Optional[PositionHook]
    :param jobs: Number of worker threads over I's first moves.
    :type jobs: int
    :raises BudgetExceededError: The search passes the budget; carries the explored fraction.
    :return: Verdict, explored node count and a losing transcript if any.
    :rtype: AdversaryResult
    """
    assert length >= 0, "game length must be a natural number"
    start = GamePosition() if start is None else start
    branching = arena.branching()
    total = sum(branching ** k for k in range(1, length + 1))
    counter = _NodeCounter(budget, max(total, 1))

    if jobs > 1 and length > 0:
        first_moves = [Move(side, x) for side in (Side.M, Side.N) for x in arena.moves(side)]
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            failures = list(executor.map(lambda move: _search(arena, strategy, start, length, counter,
                on_position, [move]), first_moves))
        failure = next((f for f in failures if f is not None), None)
    else:
        failure = _search(arena, strategy, start, length, counter, on_position)

    if failure is None:
        return AdversaryResult(True, counter.count)
    return AdversaryResult(False, counter.count, failure[0], failure[1])
