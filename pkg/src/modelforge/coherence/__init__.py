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

from modelforge.coherence.coherent_family import CoherentFamily, check_coherent, initial_segments
from modelforge.coherence.square_witness import SquareWitness, check_square_witness
from modelforge.coherence.witness_generator import forest_witness, generate_square_witness
from modelforge.coherence.levels import LevelsTree, TupleType, TypeSpace, levels_tree, tree_order_verdict, \
    tuple_type, xi_level
from modelforge.coherence.derivation import DerivedFamily, coverage_report, derive_family, matching_positions
from modelforge.coherence.pullback import PullbackResult, enumerate_generators, pullback
from modelforge.coherence.s_family import SFamily, build_groups, close_under_intersections, derive_s_family
