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

import json
from typing import Callable, Optional

import numpy as np

from modelforge.errors import InputError, StrategyError
from modelforge.games.arena import Arena
from modelforge.games.position import GamePosition, Move, Side
from modelforge.games.strategy import Strategy
from modelforge.report import CheckReport

HUMAN_SIDES = ("I", "II")


def _read_move(arena: Arena, side: Optional[Side], input_fn: Callable[[str], str],
        output_fn: Callable[[str], None]) -> Move:
    # side None means the human picks the side as well
    prompt = "move (side element): " if side is None else "reply on %s: " % side.value
    while True:
        text = input_fn(prompt).strip()
        try:
            if side is None:
                side_text, _, element_text = text.partition(" ")
                move = Move(Side(side_text.upper()), arena.parse_element(element_text))
            else:
                move = Move(side, arena.parse_element(text))
        except (InputError, ValueError) as error:
            output_fn("illegal move: %s" % error)
            continue
        if arena.is_legal(move):
            return move
        output_fn("illegal move: %s is not an element of side %s" % (move.element, move.side.value))


def play_interactive(arena: Arena, strategy: Optional[Strategy], length: int, human_side: str = "I",
        input_fn: Callable[[str], str] = input, output_fn: Callable[[str], None] = print,
        seed: int = 0) -> GamePosition:
    """Terminal driver for an EF game of the given length.

    If the human plays I, every round reads a side and an element and
    the strategy replies on the other side. If the human plays II, a
    seeded computer I picks uniformly random moves and the human
    replies. Illegal input is re-prompted. The winner is announced at
    the end.

    :return: The transcript of the game.
    :rtype: GamePosition
    """
    if human_side not in HUMAN_SIDES:
        raise InputError("human side must be one of %s, got '%s'" % (list(HUMAN_SIDES), human_side))
    if human_side == "I" and strategy is None:
        raise InputError("player II needs a strategy when the human plays I")

    rng = np.random.default_rng(seed)
    position = GamePosition()
    for xi in range(length):
        output_fn("round %d, pairs so far %s" % (xi, position.pairs))
        if human_side == "I":
            challenge = _read_move(arena, None, input_fn, output_fn)
            try:
                reply = strategy.reply(position, challenge)
            except StrategyError as error:
                output_fn("II has no reply: %s" % error)
                break
            output_fn("II plays %s on %s" % (reply.element, reply.side.value))
        else:
            side = (Side.M, Side.N)[int(rng.integers(2))]
            moves = arena.moves(side)
            challenge = Move(side, moves[int(rng.integers(len(moves)))])
            output_fn("I plays %s on %s" % (challenge.element, challenge.side.value))
            reply = _read_move(arena, side.opposite, input_fn, output_fn)
        position = position.extend(challenge, reply)

    winner = "II" if arena.is_winning(position) and len(position) == length else "I"
    output_fn("winner: %s" % winner)
    return position


def save_transcript(path: str, position: GamePosition) -> None:
    """Writes one JSON object per round."""
    with open(path, "w") as file:
        for record in position.to_json():
            file.write(json.dumps(record, sort_keys=True) + "\n")


def load_transcript(path: str) -> GamePosition:
    records = []
    with open(path, "r") as file:
        for number, line in enumerate(file):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as error:
                raise InputError("line %d of %s is not JSON: %s" % (number + 1, path, error)) from error
    for expected, record in enumerate(records):
        if record.get("round") != expected:
            raise InputError("transcript record %d carries round %s" % (expected, record.get("round")))
    return GamePosition.from_json(records)


def replay_transcript(arena: Arena, strategy: Optional[Strategy], transcript: GamePosition) -> CheckReport:
    """Replays a transcript: every move must be legal, every reply of II
    must be the strategy's reply if a strategy is given, and the verdict
    is recomputed from the final position.

    "legal", "replies" and "winner" (passed iff II wins) are reported.
    """
    report = CheckReport("replay")
    illegal = next(({"round": xi, "move": move.to_json()} for xi, r in enumerate(transcript.rounds)
        for move in (r.challenge, r.reply) if not arena.is_legal(move)), None)
    report.add("legal", illegal is None, illegal)

    deviation = None
    if strategy is not None:
        for xi, r in enumerate(transcript.rounds):
            prefix = GamePosition(transcript.rounds[:xi])
            try:
                expected = strategy.reply(prefix, r.challenge)
            except StrategyError as error:
                deviation = {"round": xi, "error": str(error)}
                break
            if expected != r.reply:
                deviation = {"round": xi, "expected": expected.to_json(), "played": r.reply.to_json()}
                break
    report.add("replies", deviation is None, deviation)

    winning = illegal is None and arena.is_winning(transcript)
    report.add("winner", winning, {"winner": "I", "pairs": [list(p) for p in transcript.pairs]},
        winner="II" if winning else "I")
    return report
