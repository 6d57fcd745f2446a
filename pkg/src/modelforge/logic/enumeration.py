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
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Tuple

from modelforge.logic.formula import And, Atom, Equals, Exists, Forall, Formula, Not, Or
from modelforge.logic.normal_forms import normalize, to_nnf
from modelforge.logic.vocabulary import Vocabulary

Fact = Tuple[str, Tuple[int, ...]]


@dataclass(frozen=True)
class AtomicType:
    """Complete quantifier-free type of a tuple x_0, ..., x_{k-1}.
    blocks[j] is the equality class of x_j, classes are numbered in order
    of first occurrence. facts holds the true atoms, written over class
    numbers."""

    blocks: Tuple[int, ...]
    facts: FrozenSet[Fact]

    @property
    def width(self) -> int:
        return len(self.blocks)

    @property
    def block_count(self) -> int:
        return 1 + max(self.blocks, default=-1)

    def representative(self, block: int) -> int:
        return self.blocks.index(block)

    def to_formula(self, vocabulary: Vocabulary) -> Formula:
        literals: List[Formula] = []
        for i, j in itertools.combinations(range(self.width), 2):
            equality = Equals(i, j)
            literals.append(equality if self.blocks[i] == self.blocks[j] else Not(equality))
        for name, arity in vocabulary.symbols:
            for args in itertools.product(range(self.block_count), repeat=arity):
                atom = Atom(name, tuple(self.representative(b) for b in args))
                literals.append(atom if (name, args) in self.facts else Not(atom))
        return normalize(And(tuple(literals)))


def _new_slots(vocabulary: Vocabulary, block_count: int) -> List[Fact]:
    # atoms over classes 0..block_count-1 that mention the newest class
    newest = block_count - 1
    return [(name, args) for name, arity in vocabulary.symbols
        for args in itertools.product(range(block_count), repeat=arity) if newest in args]


def _powerset(items: List[Fact]) -> Iterator[FrozenSet[Fact]]:
    for size in range(len(items) + 1):
        for subset in itertools.combinations(items, size):
            yield frozenset(subset)


class SentenceEnumerator:
    """Stream of basic Hintikka sentences of quantifier rank at most qr.

    A rank-0 type over k variables is a complete atomic type. A rank-r
    type over k variables is its atomic part together with, for a set S
    of rank-(r-1) types over k+1 variables, the conjunction of
    exists x_k. s over s in S and forall x_k. (disjunction of S). For
    every rank r = 1..qr and every rank-(r-1) type t of one variable the
    stream yields exists x0. t and forall x0. nnf(!t), in normal form
    and without repetition. Two structures agree on every sentence of
    the stream iff they agree on all sentences of rank at most qr.

    Iteration stops after budget sentences; budget_exhausted then tells
    whether the stream was cut short. Intermediate lists of types are
    truncated at the same budget.

    :param vocabulary: Relational vocabulary.
    :type vocabulary: Vocabulary
    :param qr: Maximal quantifier rank.
    :type qr: int
    :param budget: Maximal number of sentences.
    :type budget: int
    """

    def __init__(self, vocabulary: Vocabulary, qr: int, budget: int = 100000) -> None:
        assert qr >= 0, "quantifier rank must be a natural number"
        assert budget >= 0, "budget must be a natural number"
        self.vocabulary         = vocabulary
        self.qr                 = qr
        self.budget             = budget
        self.budget_exhausted   = False

    def __iter__(self) -> Iterator[Formula]:
        self.budget_exhausted = False
        seen = set()
        for rank in range(1, self.qr + 1):
            for atomic in self._single_variable_types():
                for t in self._types(rank - 1, atomic):
                    for sentence in (normalize(Exists(0, t)), normalize(Forall(0, to_nnf(Not(t))))):
                        if sentence in seen:
                            continue
                        if len(seen) >= self.budget:
                            self.budget_exhausted = True
                            return
                        seen.add(sentence)
                        yield sentence

    def _single_variable_types(self) -> Iterator[AtomicType]:
        for facts in _powerset(_new_slots(self.vocabulary, 1)):
            yield AtomicType((0,), facts)

    def _equality_extensions(self, atomic: AtomicType) -> List[AtomicType]:
        return [AtomicType(atomic.blocks + (b,), atomic.facts) for b in range(atomic.block_count)]

    def _free_extensions(self, atomic: AtomicType) -> Iterator[AtomicType]:
        newest = atomic.block_count
        for facts in _powerset(_new_slots(self.vocabulary, newest + 1)):
            yield AtomicType(atomic.blocks + (newest,), atomic.facts | facts)

    def _bounded(self, formulas: Iterable[Formula]) -> List[Formula]:
        result = list(itertools.islice(formulas, self.budget + 1))
        if len(result) > self.budget:
            self.budget_exhausted = True
            result = result[:self.budget]
        return result

    def _types(self, rank: int, atomic: AtomicType) -> Iterator[Formula]:
        """Rank-r types over atomic.width variables with atomic part atomic."""
        base = atomic.to_formula(self.vocabulary)
        if rank == 0:
            yield base
            return

        k = atomic.width
        forced = [self._bounded(self._types(rank - 1, extension))
            for extension in self._equality_extensions(atomic)]
        optional = self._bounded(itertools.chain.from_iterable(
            self._types(rank - 1, extension) for extension in self._free_extensions(atomic)))

        for size in range(len(optional) + 1):
            for chosen in itertools.combinations(optional, size):
                for equal in itertools.product(*forced):
                    extensions = tuple(equal) + chosen
                    parts = (base,) + tuple(Exists(k, s) for s in extensions) + (Forall(k, Or(extensions)),)
                    yield normalize(And(parts))


def enumerate_sentences(vocabulary: Vocabulary, qr: int, budget: int = 100000) -> SentenceEnumerator:
    """Sentences of quantifier rank at most qr over vocabulary, see
    SentenceEnumerator. qr = 0 gives the empty stream."""
    return SentenceEnumerator(vocabulary, qr, budget)
