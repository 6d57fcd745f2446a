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

"""
MODELFORGE

A finite-model-theory workbench. Parses and evaluates first-order
formulas over finite relational structures, builds reduced products
and reduced powers modulo filters on finite index sets, checks and
derives coherent families, constructs Delta-embeddings of a structure
into a reduced power of another one, and solves, composes and plays
Ehrenfeucht-Fraisse games.

Documentation
-------------

Documentation available in the docs folder.

Examples
--------

The cases folder includes small instance files, gen-instances writes larger ones.
For example the full embedding pipeline on generated instances

    >>> modelforge gen-instances --kind embedding --seed 0 --output runs
    >>> modelforge derive-family --square runs/gen-instances/instance-0/square.json

Available subpackages
---------------------
logic
    Vocabularies, finite structures, formulas, parser, evaluator,
    Delta-types, normal forms and sentence enumeration
filters
    Filters on finite index sets, regularity witnesses, reduced
    products and the Los check
coherence
    Coherent families, square witnesses, types and levels, derived
    and pulled back families, S-families
embedding
    Delta-partition, theta ladder, embedding construction and verification
games
    EF game positions, arenas, strategies, solver, adversary,
    strategy composition and interactive play
io_utils
    Tools for logging and writing output

"""

from modelforge.input_reader import InputReader
from modelforge.instance_generator import generate_instances
from modelforge.workbench_manager import WorkbenchManager

__version__ = "0.1.0"
__author__ = "MODELFORGE developers"


__all__ = (
    "InputReader",
    "WorkbenchManager",
    "generate_instances",
)
