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

from modelforge.logic.vocabulary import Vocabulary
from modelforge.logic.structure import FinStructure, all_structures, find_isomorphism, random_structure, strict_chain
from modelforge.logic.formula import And, Atom, BOTTOM, Equals, Exists, Forall, Formula, Not, Or, TOP, substitute, to_text
from modelforge.logic.parser import parse_formula, parse_formulas
from modelforge.logic.evaluator import evaluate, evaluate_tuple
from modelforge.logic.delta import DeltaSet, atomic_delta, delta_instances, delta_type, positive_delta_type
from modelforge.logic.normal_forms import conjoin, flatten_to_existential, flatten_to_weakly_existential, \
    normalize, prenex, to_nnf
from modelforge.logic.enumeration import enumerate_sentences
