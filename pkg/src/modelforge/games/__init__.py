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

from modelforge.games.position import Element, GamePosition, Move, Round, Side, is_partial_isomorphism
from modelforge.games.strategy import ConstantStrategy, CopyStrategy, MemoStrategy, Strategy, strategy_from_json
from modelforge.games.arena import Arena, ProductArena, StructureArena
from modelforge.games.adversary import AdversaryResult, exhaustive_adversary_check
from modelforge.games.solver import EFResult, EFSolver, solve_ef
from modelforge.games.composition import ComposedStrategy, compose_strategy, coordinate_play, \
    good_position_witness, is_good_position
from modelforge.games.interactive import load_transcript, play_interactive, replay_transcript, save_transcript

DICT_STRATEGY = {
    'copy':         CopyStrategy,
    'constant':     ConstantStrategy,
    'memo':         MemoStrategy,
}
