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

import json
from typing import Any, Callable, Dict, List, Union

from modelforge.coherence.coherent_family import CoherentFamily
from modelforge.coherence.square_witness import SquareWitness
from modelforge.errors import InputError
from modelforge.filters.filter_on_index import FilterOnIndex
from modelforge.filters.regularity_witness import RegularityWitness
from modelforge.games.interactive import load_transcript
from modelforge.games.position import GamePosition
from modelforge.games.strategy import strategy_from_json
from modelforge.logic.delta import DeltaSet
from modelforge.logic.structure import FinStructure

Source = Union[str, Dict, List]


def load_json(source: Source) -> Any:
    """Reads a JSON file, or passes a preloaded object through.

    :raises InputError: The file is missing or not JSON.
    """
    if not isinstance(source, str):
        return source
    try:
        with open(source, "r") as file:
            return json.load(file)
    except OSError as error:
        raise InputError("cannot read %s: %s" % (source, error)) from error
    except json.JSONDecodeError as error:
        raise InputError("%s is not a JSON file: %s" % (source, error)) from error


def _unwrap(data: Any) -> Any:
    # reports written by the cli carry the artifact under "result"
    if isinstance(data, dict) and "subcommand" in data and "result" in data:
        return data["result"]
    return data


def _factors(data: Any) -> List[FinStructure]:
    if isinstance(data, dict):
        assert "factors" in data, "factor file needs the key 'factors'"
        data = data["factors"]
    assert isinstance(data, list), "factors must be given as a list of structures"
    return [FinStructure.from_json(load_json(entry)) for entry in data]


def _family(data: Any) -> CoherentFamily:
    if isinstance(data, dict) and "sets" not in data and "family" in data:
        data = data["family"]
    return CoherentFamily.from_json(data)


def _derived(data: Any) -> Dict:
    assert isinstance(data, dict) and "generators" in data, "derived family file needs the key 'generators'"
    return {"family": _family(data), "generators": [frozenset(int(i) for i in Z) for Z in data["generators"]]}


def _groups(data: Any) -> Dict:
    assert isinstance(data, dict), "group file must be a JSON object"
    for key in ("generators", "groups", "caps"):
        assert key in data, "group file needs the key '%s'" % key
    return {
        "generators": [frozenset(int(i) for i in A) for A in data["generators"]],
        "groups": [[int(gamma) for gamma in group] for group in data["groups"]],
        "caps": [int(cap) for cap in data["caps"]],
    }


def _strategy(data: Any) -> Any:
    # solve-ef results carry the strategy next to the verdict
    if isinstance(data, dict) and "kind" not in data and "strategy" in data:
        data = data["strategy"]
    return strategy_from_json(data)


def _strategies(data: Any) -> List:
    if isinstance(data, dict):
        assert "strategies" in data, "strategy list needs the key 'strategies'"
        data = data["strategies"]
    assert isinstance(data, list), "strategies must be given as a list"
    return [strategy_from_json(load_json(entry)) for entry in data]


def _transcript(source: Source) -> GamePosition:
    if isinstance(source, str):
        return load_transcript(source)
    return GamePosition.from_json(source)


DICT_LOADER: Dict[str, Callable[[Any], Any]] = {
    "structure":    FinStructure.from_json,
    "factors":      _factors,
    "filter":       FilterOnIndex.from_json,
    "witness":      RegularityWitness.from_json,
    "delta":        DeltaSet.from_json,
    "family":       _family,
    "derived":      _derived,
    "square":       SquareWitness.from_json,
    "groups":       _groups,
    "strategy":     _strategy,
    "strategies":   _strategies,
    "embedding":    lambda data: data,
}


class InputReader:
    """The InputReader class reads the instance files of a workbench run.
    Every instance can be provided as either a path to a JSON file or as
    a preloaded dictionary (transcripts as a path to a JSON-lines file
    or a list of round records). Instances are addressed by their role
    in the run, e.g. "source" and "target" for the structures M and N.

    :param inputs: Role name to source.
    :type inputs: Dict[str, Union[str, Dict, List]]
    """

    ROLE_KINDS = {
        "structure":        "structure",
        "source":           "structure",
        "target":           "structure",
        "source_factors":   "factors",
        "target_factors":   "factors",
        "filter":           "filter",
        "witness":          "witness",
        "delta":            "delta",
        "family":           "family",
        "derived":          "derived",
        "square":           "square",
        "groups":           "groups",
        "strategy":         "strategy",
        "strategies":       "strategies",
        "embedding":        "embedding",
        "transcript":       "transcript",
    }

    def __init__(self, inputs: Dict[str, Source]) -> None:

        self.inputs = {role: source for role, source in inputs.items() if source is not None}
        for role in self.inputs:
            assert role in self.ROLE_KINDS, \
                "unknown input role '%s', choose one of %s" % (role, sorted(self.ROLE_KINDS))

        self.instances: Dict[str, Any] = {}
        for role, source in self.inputs.items():
            kind = self.ROLE_KINDS[role]
            try:
                if kind == "transcript":
                    self.instances[role] = _transcript(source)
                else:
                    self.instances[role] = DICT_LOADER[kind](_unwrap(load_json(source)))
            except AssertionError as error:
                raise InputError("%s: %s" % (role, error)) from error
            except (TypeError, ValueError, AttributeError) as error:
                raise InputError("malformed %s input: %s" % (role, error)) from error

    def __contains__(self, role: str) -> bool:
        return role in self.instances

    def __getitem__(self, role: str) -> Any:
        if role not in self.instances:
            raise InputError("this subcommand needs the input '%s'" % role)
        return self.instances[role]

    def paths(self) -> Dict[str, str]:
        """Input paths for the run configuration, preloaded inputs are
        listed as <preloaded>."""
        return {role: source if isinstance(source, str) else "<preloaded>"
            for role, source in sorted(self.inputs.items())}
