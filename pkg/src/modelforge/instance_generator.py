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

from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from modelforge.coherence.coherent_family import initial_segments
from modelforge.coherence.witness_generator import generate_square_witness
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.filters.regularity_witness import RegularityWitness
from modelforge.games.solver import solve_ef
from modelforge.logic.delta import DeltaSet, atomic_delta
from modelforge.logic.structure import FinStructure, random_structure, strict_chain
from modelforge.logic.vocabulary import Vocabulary

DEFAULT_VOCABULARY = Vocabulary.of(("R", 2))


def random_filter(index_size: int, rng: np.random.Generator) -> FilterOnIndex:
    """Proper filter with a uniformly random nonempty kernel."""
    while True:
        kernel = [i for i in range(index_size) if rng.random() < 0.5]
        if kernel:
            return FilterOnIndex(index_size, [kernel])


def random_witness(index_filter: FilterOnIndex, count: int, rng: np.random.Generator) -> RegularityWitness:
    """count sets A_alpha, each the kernel of the filter together with
    random further indices. The cap is the largest w(i)."""
    sets = [sorted(index_filter.kernel | {i for i in index_filter.index_set if rng.random() < 0.5})
        for _ in range(count)]
    cap = max((sum(i in A for A in sets) for i in index_filter.index_set), default=0)
    return RegularityWitness(sets, cap)


def random_delta(vocabulary: Vocabulary, size: int, rng: np.random.Generator, max_arity: int = 2) -> DeltaSet:
    """size distinct atomic formulas, kept in the order of atomic_delta."""
    pool = atomic_delta(vocabulary, max_arity)
    chosen = sorted(rng.choice(len(pool), size=min(size, len(pool)), replace=False))
    return DeltaSet(tuple(pool[int(alpha)] for alpha in chosen), max_arity, vocabulary)


def isomorphic_copy(structure: FinStructure, rng: np.random.Generator) -> FinStructure:
    return structure.relabel([int(x) for x in rng.permutation(structure.universe_size)])


def induced_extension(structure: FinStructure, extra: int, density: float, rng: np.random.Generator) -> FinStructure:
    """Random structure on extra further elements that induces structure on
    its first elements, randomly relabeled. Every existential sentence over
    literals true in structure stays true in the extension."""
    size = structure.universe_size
    noise = random_structure(structure.vocabulary, size + extra, density, rng)
    tables = {name: structure.tuples(name) + [entry for entry in noise.tuples(name) if any(x >= size for x in entry)]
        for name in structure.vocabulary.names}
    return isomorphic_copy(FinStructure(structure.vocabulary, size + extra, tables), rng)


def equivalent_chains(rounds: int, symbol: str, rng: np.random.Generator) -> Tuple[FinStructure, FinStructure]:
    """Strict chains of two different lengths, both at least 2**rounds - 1,
    so player II wins the EF game of rounds rounds on them."""
    short = 2**rounds - 1 + int(rng.integers(0, 2))
    lengths = [short, short + 1]
    if rng.random() < 0.5:
        lengths.reverse()
    return strict_chain(lengths[0], symbol), strict_chain(lengths[1], symbol)


def generate_structure(rng: np.random.Generator, size: int = 4, density: float = 0.5,
        vocabulary: Vocabulary = DEFAULT_VOCABULARY, **kwargs: Any) -> Dict[str, Dict]:
    return {"structure": random_structure(vocabulary, size, density, rng).to_json()}


def generate_chain(rng: np.random.Generator, size: int = 4, **kwargs: Any) -> Dict[str, Dict]:
    return {"structure": strict_chain(size).to_json()}


def generate_filter(rng: np.random.Generator, index_size: int = 3, delta_size: int = 3,
        **kwargs: Any) -> Dict[str, Dict]:
    index_filter = random_filter(index_size, rng)
    return {"filter": index_filter.to_json(), "witness": random_witness(index_filter, delta_size, rng).to_json()}


def generate_square(rng: np.random.Generator, size: int = 4, levels: int = 2, twin_free: bool = True,
        **kwargs: Any) -> Dict[str, Dict]:
    """A square witness from generate_square_witness. Twin-free witnesses
    realize every type of two or more elements once, which derive-family
    requires; twin_free=false gives witnesses with shared colours."""
    return {"square": generate_square_witness(size, levels, rng, twin_free=bool(twin_free)).to_json()}


def generate_embedding(rng: np.random.Generator, size: int = 4, index_size: int = 3, delta_size: int = 3,
        levels: int = 2, density: float = 0.5, extra: int = 1, vocabulary: Vocabulary = DEFAULT_VOCABULARY,
        **kwargs: Any) -> Dict[str, Dict]:
    """Inputs of the pipeline derive-family, pullback, build-embedding,
    verify-embedding: a twin-free square witness on the elements of M, a
    target N inducing M on extra further elements (an isomorphic copy for
    extra=0), a random atomic Delta, a random proper filter D' with a
    regularity witness of |Delta| sets, and the initial-segment family as
    a directly usable alternative."""
    source = random_structure(vocabulary, size, density, rng)
    index_filter = random_filter(index_size, rng)
    delta = random_delta(vocabulary, delta_size, rng)
    target = induced_extension(source, int(extra), density, rng) if extra > 0 else isomorphic_copy(source, rng)
    return {
        "square": generate_square_witness(size, levels, rng, twin_free=True).to_json(),
        "source": source.to_json(),
        "target": target.to_json(),
        "delta": delta.to_json(),
        "filter": index_filter.to_json(),
        "witness": random_witness(index_filter, len(delta), rng).to_json(),
        "family": initial_segments(size, index_size).to_json(),
    }


def generate_game(rng: np.random.Generator, size: int = 3, index_size: int = 2, rounds: int = 2, cap: int = 2,
        density: float = 0.5, chain_probability: float = 0.5, vocabulary: Vocabulary = DEFAULT_VOCABULARY,
        **kwargs: Any) -> Dict[str, Any]:
    """Inputs of compose-ef: factor pairs (M_i, N_i), a random proper
    filter, the initial-segment family on the rounds with cap n, and
    solver strategies sigma_i certified for n rounds. With probability
    chain_probability a factor pair is two strict chains of different
    lengths, both at least 2**n - 1; otherwise N_i is an isomorphic copy
    of a random M_i. Chains need a vocabulary of one binary symbol."""
    assert cap >= rounds, "the initial-segment family on %d rounds needs a cap of at least %d" % (rounds, rounds)
    chains_allowed = len(vocabulary.symbols) == 1 and vocabulary.symbols[0][1] == 2
    source_factors: List[FinStructure] = []
    target_factors: List[FinStructure] = []
    strategies: List[Dict] = []
    family = initial_segments(rounds, index_size, cap)
    for i in range(index_size):
        if chains_allowed and rng.random() < chain_probability:
            source, target = equivalent_chains(family.caps[i], vocabulary.names[0], rng)
        else:
            source = random_structure(vocabulary, size, density, rng)
            target = isomorphic_copy(source, rng)
        budget = max(size, source.universe_size, target.universe_size, 8)
        result = solve_ef(source, target, family.caps[i], size_budget=budget)
        source_factors.append(source)
        target_factors.append(target)
        strategies.append(result.strategy.to_json())
    return {
        "source_factors": {"factors": [M.to_json() for M in source_factors]},
        "target_factors": {"factors": [N.to_json() for N in target_factors]},
        "filter": random_filter(index_size, rng).to_json(),
        "family": family.to_json(),
        "strategies": {"strategies": strategies},
    }


DICT_INSTANCE_KIND = {
    'structure':    generate_structure,
    'chain':        generate_chain,
    'filter':       generate_filter,
    'square':       generate_square,
    'embedding':    generate_embedding,
    'game':         generate_game,
}


def generate_instances(kind: str, seed: int = 0, count: int = 1,
        parameters: Optional[Dict[str, Any]] = None) -> List[Dict[str, Any]]:
    """count seeded instances of the given kind, each a map from input
    role to its JSON content. Instance k uses the generator seeded with
    (seed, k).

    :raises KeyError: Unknown kind.
    """
    generator = DICT_INSTANCE_KIND[kind]
    parameters = parameters or {}
    return [generator(np.random.default_rng([seed, k]), **parameters) for k in range(count)]
