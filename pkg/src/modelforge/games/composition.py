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

from typing import List, Optional, Sequence, Tuple

from modelforge.coherence.coherent_family import CoherentFamily, check_coherent
from modelforge.errors import DimensionMismatchError, PreconditionError, StrategyError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.games.arena import ProductArena
from modelforge.games.position import GamePosition, Move, Round
from modelforge.games.strategy import Strategy
from modelforge.logic.structure import FinStructure


def coordinate_play(position: GamePosition, elements: Sequence[int], i: int) -> GamePosition:
    """The play ((f_e(i), g_e(i)) : e in elements) read off a position
    over choice functions, elements in increasing order."""
    rounds = []
    for epsilon in sorted(elements):
        r = position.rounds[epsilon]
        rounds.append(Round(Move(r.challenge.side, r.challenge.element[i]), Move(r.reply.side, r.reply.element[i])))
    return GamePosition(tuple(rounds))


def _follows(strategy: Strategy, play: GamePosition) -> bool:
    for k, r in enumerate(play.rounds):
        try:
            if strategy.reply(GamePosition(play.rounds[:k]), r.challenge) != r.reply:
                return False
        except StrategyError:
            return False
    return True


def good_position_witness(position: GamePosition, family: CoherentFamily,
        strategies: Sequence[Strategy]) -> Optional[Tuple[int, int]]:
    """First (zeta, i) at which the coordinate play along u[zeta][i]
    together with zeta is not a play according to sigma_i, None if the
    position is good."""
    for zeta in range(len(position)):
        for i in range(family.index_size):
            play = coordinate_play(position, family.u(zeta, i) | {zeta}, i)
            if not _follows(strategies[i], play):
                return zeta, i
    return None


def is_good_position(position: GamePosition, family: CoherentFamily, strategies: Sequence[Strategy]) -> bool:
    """True iff for every round zeta and index i the rounds u[zeta][i]
    together with zeta, projected to coordinate i, are played according
    to sigma_i."""
    if len(position) > family.element_count:
        return False
    return good_position_witness(position, family, strategies) is None


class ComposedStrategy(Strategy):
    """Strategy for II on the reduced products of the pairs (M_i, N_i)
    assembled from strategies sigma_i on the factors.

    In round xi, I's choice function f is answered coordinatewise: at
    index i the rounds u[xi][i] projected to i are the sigma_i play so
    far, and sigma_i's answer to f(i) is the reply g(i). Positions
    reached this way stay good.

    :param source_factors: Factors M_i.
    :type source_factors: Sequence[FinStructure]
    :param target_factors: Factors N_i.
    :type target_factors: Sequence[FinStructure]
    :param index_filter: Filter D.
    :type index_filter: FilterOnIndex
    :param family: Coherent family with element count the game length.
    :type family: CoherentFamily
    :param strategies: sigma_i, certified for n[i] rounds.
    :type strategies: Sequence[Strategy]
    :param b: Bound of condition (iii) in the coherence precondition.
    :type b: int
    :param check_positions: Reject positions that are not good.
    :type check_positions: bool
    """

    kind = "composed"

    def __init__(self, source_factors: Sequence[FinStructure], target_factors: Sequence[FinStructure],
            index_filter: FilterOnIndex, family: CoherentFamily, strategies: Sequence[Strategy], b: int = 2,
            check_positions: bool = False) -> None:

        super().__init__(family.element_count)
        index_size = index_filter.index_size
        if not len(source_factors) == len(target_factors) == len(strategies) == family.index_size == index_size:
            raise DimensionMismatchError("factors (%d, %d), strategies (%d), family (%d) and filter (%d) disagree "
                "on the index set" % (len(source_factors), len(target_factors), len(strategies), family.index_size,
                index_size))
        for i, sigma in enumerate(strategies):
            if not sigma.covers(family.caps[i]):
                raise StrategyError("sigma_%d is certified for %s rounds, needs %d" % (i, sigma.scope, family.caps[i]))
        report = check_coherent(family, index_filter, b)
        if not report.passed:
            failure = report.failures()[0]
            raise PreconditionError("family is not coherent, condition (%s) fails at %s"
                % (failure.name, failure.counterexample))

        self.arena              = ProductArena(source_factors, target_factors, index_filter)
        self.family             = family
        self.strategies         = list(strategies)
        self.check_positions    = check_positions

    def reply(self, position: GamePosition, challenge: Move) -> Move:
        xi = len(position)
        if xi >= self.family.element_count:
            raise StrategyError("round %d is beyond the game length %d" % (xi, self.family.element_count))
        if self.check_positions:
            witness = good_position_witness(position, self.family, self.strategies)
            if witness is not None:
                raise PreconditionError("position is not good at zeta = %d, i = %d" % witness)

        reply: List[int] = []
        for i, sigma in enumerate(self.strategies):
            play = coordinate_play(position, self.family.u(xi, i), i)
            answer = sigma.reply(play, Move(challenge.side, challenge.element[i]))
            reply.append(answer.element)
        return Move(challenge.side.opposite, tuple(reply))

    def to_json(self) -> dict:
        return {"kind": self.kind, "scope": self.scope, "strategies": [sigma.to_json() for sigma in self.strategies]}


def compose_strategy(source_factors: Sequence[FinStructure], target_factors: Sequence[FinStructure],
        index_filter: FilterOnIndex, family: CoherentFamily, strategies: Sequence[Strategy],
        b: int = 2) -> ComposedStrategy:
    """Puts the strategies sigma_i together into one strategy on the
    reduced products, for games of length family.element_count.

    :raises PreconditionError: The family is not coherent with respect to the filter.
    :raises StrategyError: Some sigma_i is not certified for n[i] rounds.
    """
    return ComposedStrategy(source_factors, target_factors, index_filter, family, strategies, b)
