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

import itertools
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from modelforge.errors import InputError, VocabularyError
from modelforge.logic.vocabulary import Vocabulary


class FinStructure:
    """Finite relational structure with universe {0, ..., Z-1}. Every
    relation is stored as a read-only boolean numpy array of shape
    (Z,) * arity. Instances are immutable values: equality and hashing
    are structural.

    :param vocabulary: Vocabulary of the structure.
    :type vocabulary: Vocabulary
    :param universe_size: Number of elements Z.
    :type universe_size: int
    :param tables: Per symbol, the tuples in the relation. Symbols
        without an entry denote the empty relation.
    :type tables: Mapping[str, Iterable[Sequence[int]]]
    """

    def __init__(self, vocabulary: Vocabulary, universe_size: int,
            tables: Optional[Mapping[str, Iterable[Sequence[int]]]] = None) -> None:

        if not isinstance(universe_size, (int, np.integer)) or universe_size < 0:
            raise InputError("universe size must be a natural number, got %s" % universe_size)

        self.vocabulary     = vocabulary
        self.universe_size  = int(universe_size)

        tables = {} if tables is None else tables
        for name in tables:
            if name not in vocabulary:
                raise VocabularyError("table for unknown symbol '%s'" % name)

        arrays = {}
        for name, arity in vocabulary.symbols:
            array = np.zeros((self.universe_size,) * arity, dtype=bool)
            for entry in tables.get(name, ()):
                entry = tuple(int(x) for x in entry)
                if len(entry) != arity:
                    raise InputError("tuple %s of '%s' has length %d, expected %d"
                        % (list(entry), name, len(entry), arity))
                if any(x < 0 or x >= self.universe_size for x in entry):
                    raise InputError("tuple %s of '%s' leaves the universe of size %d"
                        % (list(entry), name, self.universe_size))
                array[entry] = True
            array.setflags(write=False)
            arrays[name] = array
        self._arrays = arrays
        self._key = None

    @classmethod
    def from_arrays(cls, vocabulary: Vocabulary, universe_size: int,
            arrays: Mapping[str, np.ndarray]) -> "FinStructure":
        """Builds a structure directly from boolean relation arrays."""
        tables = {name: [tuple(int(x) for x in entry) for entry in np.argwhere(np.asarray(array, dtype=bool))]
            for name, array in arrays.items()}
        return cls(vocabulary, universe_size, tables)

    @property
    def universe(self) -> range:
        return range(self.universe_size)

    def array(self, name: str) -> np.ndarray:
        if name not in self._arrays:
            raise VocabularyError("unknown symbol '%s'" % name)
        return self._arrays[name]

    def holds(self, name: str, entry: Sequence[int]) -> bool:
        return bool(self.array(name)[tuple(entry)])

    def tuples(self, name: str) -> List[Tuple[int, ...]]:
        """Returns the tuples of a relation in lexicographic order."""
        return [tuple(int(x) for x in entry) for entry in np.argwhere(self.array(name))]

    def key(self) -> Tuple:
        if self._key is None:
            self._key = (self.vocabulary, self.universe_size,
                tuple(tuple(self.tuples(name)) for name in self.vocabulary.names))
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinStructure) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        tables = ", ".join("%s=%s" % (name, [list(t) for t in self.tuples(name)]) for name in self.vocabulary.names)
        return "FinStructure(Z=%d, %s)" % (self.universe_size, tables)

    def relabel(self, permutation: Sequence[int]) -> "FinStructure":
        """Returns the isomorphic copy in which element a is renamed permutation[a]."""
        permutation = [int(p) for p in permutation]
        assert sorted(permutation) == list(self.universe), "relabelling must be a permutation of the universe"
        tables = {name: [tuple(permutation[x] for x in entry) for entry in self.tuples(name)]
            for name in self.vocabulary.names}
        return FinStructure(self.vocabulary, self.universe_size, tables)

    def to_json(self) -> Dict:
        return {
            "vocabulary": self.vocabulary.to_json(),
            "universe_size": self.universe_size,
            "tables": {name: [list(entry) for entry in self.tuples(name)] for name in self.vocabulary.names},
        }

    @classmethod
    def from_json(cls, data: Dict) -> "FinStructure":
        try:
            vocabulary = Vocabulary.from_json(data["vocabulary"])
            return cls(vocabulary, data["universe_size"], data.get("tables", {}))
        except KeyError as error:
            raise InputError("structure file misses field %s" % error) from error


def strict_chain(size: int, symbol: str = "Lt") -> FinStructure:
    """Strict linear order 0 < 1 < ... < size-1 over one binary symbol."""
    vocabulary = Vocabulary.of((symbol, 2))
    return FinStructure(vocabulary, size, {symbol: [(a, b) for a in range(size) for b in range(a + 1, size)]})


def random_structure(vocabulary: Vocabulary, universe_size: int, density: float,
        rng: np.random.Generator) -> FinStructure:
    """Uniform random tables: every tuple is in its relation with
    probability density, independently."""
    arrays = {name: rng.random((universe_size,) * arity) < density for name, arity in vocabulary.symbols}
    return FinStructure.from_arrays(vocabulary, universe_size, arrays)


def all_structures(vocabulary: Vocabulary, universe_size: int) -> Iterator[FinStructure]:
    """Enumerates every structure over vocabulary with the given universe size."""
    slots = [(name, entry) for name, arity in vocabulary.symbols
        for entry in itertools.product(range(universe_size), repeat=arity)]
    for bits in itertools.product((False, True), repeat=len(slots)):
        tables: Dict[str, List[Tuple[int, ...]]] = {name: [] for name in vocabulary.names}
        for (name, entry), bit in zip(slots, bits):
            if bit:
                tables[name].append(entry)
        yield FinStructure(vocabulary, universe_size, tables)


def find_isomorphism(first: FinStructure, second: FinStructure) -> Optional[Tuple[int, ...]]:
    """Brute-force isomorphism search. Returns the least (lexicographic)
    bijection p with R(a) in first iff R(p(a)) in second, or None."""
    if first.vocabulary != second.vocabulary or first.universe_size != second.universe_size:
        return None
    for permutation in itertools.permutations(range(first.universe_size)):
        index = np.array(permutation, dtype=int)
        if all(np.array_equal(second.array(name)[np.ix_(*([index] * arity))], first.array(name))
                for name, arity in first.vocabulary.symbols):
            return tuple(permutation)
    return None
