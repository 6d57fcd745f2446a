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

from typing import Dict, List, Optional, Tuple

import numpy as np

from modelforge.coherence.square_witness import MapKey, SquareWitness


def random_forest(order_size: int, rng: np.random.Generator, root_probability: float = 0.3) -> List[Optional[int]]:
    """Parent pointers of a random forest on L with parent[a] < a."""
    parents: List[Optional[int]] = []
    for a in range(order_size):
        if a == 0 or rng.random() < root_probability:
            parents.append(None)
        else:
            parents.append(int(rng.integers(0, a)))
    return parents


def _ancestors(parents: List[Optional[int]], a: int) -> List[int]:
    # root first
    chain = []
    node = parents[a]
    while node is not None:
        chain.append(node)
        node = parents[node]
    return chain[::-1]


def forest_witness(parents: List[Optional[int]], colours: List[int], level_count: int) -> SquareWitness:
    """Square witness whose lower levels all describe the forest: C[a] is
    the set of ancestors of a, two elements are equivalent iff they have
    the same colour path from their root, and f maps ancestors depth by
    depth. The last level is equality with C[a] all predecessors of a.

    :param parents: Parent pointers with parents[a] < a.
    :type parents: List[Optional[int]]
    :param colours: One colour per element.
    :type colours: List[int]
    :param level_count: Number of levels c >= 2.
    :type level_count: int
    :return: Witness satisfying all eight axioms.
    :rtype: SquareWitness
    """
    assert level_count >= 2, "a forest witness needs a forest level and a top level"
    order_size = len(parents)
    ancestors = [_ancestors(parents, a) for a in range(order_size)]
    paths = [tuple(colours[x] for x in ancestors[a]) + (colours[a],) for a in range(order_size)]

    label_of_path: Dict[Tuple[int, ...], int] = {}
    forest_labels = [label_of_path.setdefault(path, a) for a, path in enumerate(paths)]

    forest_C = [ancestors[a] for a in range(order_size)]
    forest_maps: Dict[Tuple[int, int], Dict[int, int]] = {}
    for a in range(order_size):
        for b in range(order_size):
            if forest_labels[a] == forest_labels[b]:
                forest_maps[(a, b)] = dict(zip(ancestors[a], ancestors[b]))

    C, E = [], []
    f: Dict[MapKey, Dict[int, int]] = {}
    for zeta in range(level_count - 1):
        C.append(forest_C)
        E.append(forest_labels)
        for (a, b), mapping in forest_maps.items():
            f[(zeta, a, b)] = mapping

    top = level_count - 1
    C.append([range(a) for a in range(order_size)])
    E.append(list(range(order_size)))
    for a in range(order_size):
        f[(top, a, a)] = {x: x for x in range(a)}
    return SquareWitness(order_size, level_count, C, E, f)


def generate_square_witness(order_size: int, level_count: int, rng: np.random.Generator,
        colour_count: int = 2, twin_free: bool = False) -> SquareWitness:
    """Random witness built by forest_witness; one level gives the trivial witness.

    :param twin_free: Give every element its own colour, which makes
        every E[zeta] the equality relation.
    :type twin_free: bool
    """
    if level_count == 1:
        return SquareWitness.trivial(order_size)
    parents = random_forest(order_size, rng)
    if twin_free:
        colours = list(range(order_size))
    else:
        colours = [int(x) for x in rng.integers(0, colour_count, size=order_size)]
    return forest_witness(parents, colours, level_count)
