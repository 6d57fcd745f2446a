import itertools
from typing import Dict, Iterator, List, Tuple

import hypothesis.strategies as st
import numpy as np
import pytest

from modelforge.logic.formula import And, Atom, Equals, Exists, Forall, Formula, Not, Or, TOP, BOTTOM
from modelforge.logic.structure import FinStructure, all_structures
from modelforge.logic.vocabulary import Vocabulary

BINARY = Vocabulary.of(("R", 2))
VARIABLE_COUNT = 3


# REFERENCE EVALUATOR
def naive_evaluate(structure: FinStructure, formula: Formula, assignment: Dict[int, int]) -> bool:
    """Definition-unfolding evaluator, independent of the table based one."""
    if isinstance(formula, Atom):
        return structure.holds(formula.symbol, [assignment[v] for v in formula.args])
    if isinstance(formula, Equals):
        return assignment[formula.left] == assignment[formula.right]
    if isinstance(formula, Not):
        return not naive_evaluate(structure, formula.body, assignment)
    if isinstance(formula, And):
        return all(naive_evaluate(structure, part, assignment) for part in formula.parts)
    if isinstance(formula, Or):
        return any(naive_evaluate(structure, part, assignment) for part in formula.parts)
    if isinstance(formula, Exists):
        return any(naive_evaluate(structure, formula.body, {**assignment, formula.var: a})
            for a in structure.universe)
    if isinstance(formula, Forall):
        return all(naive_evaluate(structure, formula.body, {**assignment, formula.var: a})
            for a in structure.universe)
    raise TypeError(formula)


def small_binary_structures(max_size: int = 3) -> Iterator[FinStructure]:
    for size in range(1, max_size + 1):
        yield from all_structures(BINARY, size)


def assignments(structure: FinStructure, width: int = VARIABLE_COUNT) -> Iterator[Dict[int, int]]:
    for values in itertools.product(structure.universe, repeat=width):
        yield dict(enumerate(values))


# HYPOTHESIS STRATEGIES
variables = st.integers(min_value=0, max_value=VARIABLE_COUNT - 1)

literals = st.one_of(
    st.builds(lambda a, b: Atom("R", (a, b)), variables, variables),
    st.builds(Equals, variables, variables),
    st.sampled_from([TOP, BOTTOM]),
)


def _extend(children: st.SearchStrategy) -> st.SearchStrategy:
    parts = st.lists(children, min_size=0, max_size=3).map(tuple)
    return st.one_of(
        st.builds(Not, children),
        parts.map(And),
        parts.map(Or),
        st.builds(Exists, variables, children),
        st.builds(Forall, variables, children),
    )


formulas = st.recursive(literals, _extend, max_leaves=8)


@st.composite
def binary_structures(draw: st.DrawFn, min_size: int = 1, max_size: int = 3) -> FinStructure:
    size = draw(st.integers(min_value=min_size, max_value=max_size))
    pairs = list(itertools.product(range(size), repeat=2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return FinStructure(BINARY, size, {"R": chosen})


@st.composite
def index_subsets(draw: st.DrawFn, index_size: int) -> List[int]:
    return sorted(draw(st.sets(st.integers(min_value=0, max_value=index_size - 1), min_size=1)))


# FIXTURES
@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture
def path_structure() -> FinStructure:
    """Directed path 0 -> 1 -> 2 with a loop at 2."""
    return FinStructure(BINARY, 3, {"R": [(0, 1), (1, 2), (2, 2)]})


def pairs_of_small_structures(max_size: int = 3) -> List[Tuple[FinStructure, FinStructure]]:
    structures = list(small_binary_structures(max_size))
    return list(itertools.product(structures, repeat=2))
