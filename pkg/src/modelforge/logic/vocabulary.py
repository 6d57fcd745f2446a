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

import re
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from modelforge.errors import VocabularyError

SYMBOL_PATTERN      = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
VARIABLE_PATTERN    = re.compile(r"^x[0-9]+")
RESERVED_WORDS      = ("forall", "exists", "true", "false")


@dataclass(frozen=True)
class Vocabulary:
    """Purely relational vocabulary. Equality is built in and is not
    a vocabulary symbol.

    :param symbols: Tuple of (name, arity) pairs in declaration order.
    :type symbols: Tuple[Tuple[str, int], ...]
    """

    symbols: Tuple[Tuple[str, int], ...]

    def __post_init__(self) -> None:
        names = [name for name, _ in self.symbols]
        if len(set(names)) != len(names):
            raise VocabularyError("symbol names must be pairwise distinct, got %s" % names)
        for name, arity in self.symbols:
            if not SYMBOL_PATTERN.match(name) or VARIABLE_PATTERN.match(name) or name in RESERVED_WORDS:
                raise VocabularyError("illegal symbol name '%s'" % name)
            if not isinstance(arity, int) or arity < 1:
                raise VocabularyError("arity of '%s' must be a positive integer, got %s" % (name, arity))

    @classmethod
    def of(cls, *symbols: Tuple[str, int]) -> "Vocabulary":
        return cls(tuple((str(name), int(arity)) for name, arity in symbols))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    @property
    def max_arity(self) -> int:
        return max((arity for _, arity in self.symbols), default=0)

    def arity(self, name: str) -> int:
        for symbol, arity in self.symbols:
            if symbol == name:
                return arity
        raise VocabularyError("unknown symbol '%s'" % name)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def to_json(self) -> List[Dict[str, Union[str, int]]]:
        return [{"name": name, "arity": arity} for name, arity in self.symbols]

    @classmethod
    def from_json(cls, data: List[Dict[str, Union[str, int]]]) -> "Vocabulary":
        try:
            return cls(tuple((str(entry["name"]), int(entry["arity"])) for entry in data))
        except (KeyError, TypeError, ValueError) as error:
            raise VocabularyError("malformed vocabulary: %s" % error) from error
