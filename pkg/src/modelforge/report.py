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

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class ConditionResult:
    """Verdict on a single checked condition.

    :param name: Short name of the condition, e.g. "iv" or "transitive".
    :type name: str
    :param passed: Whether the condition holds.
    :type passed: bool
    :param counterexample: JSON-serializable data locating the first violation.
    :type counterexample: Optional[Dict[str, Any]]
    :param details: Optional free-form extra information.
    :type details: Dict[str, Any]
    """

    name: str
    passed: bool
    counterexample: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        if self.details:
            data["details"] = self.details
        return data


@dataclass
class CheckReport:
    """Ordered collection of condition verdicts. Checkers return reports
    instead of raising, the caller decides what a failure means."""

    title: str
    conditions: List[ConditionResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, counterexample: Optional[Dict[str, Any]] = None,
            **details: Any) -> ConditionResult:
        result = ConditionResult(name, bool(passed), None if passed else counterexample, dict(details))
        self.conditions.append(result)
        return result

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for condition in other.conditions:
            self.conditions.append(ConditionResult(prefix + condition.name, condition.passed,
                condition.counterexample, condition.details))

    @property
    def passed(self) -> bool:
        return all(condition.passed for condition in self.conditions)

    def __getitem__(self, name: str) -> ConditionResult:
        for condition in self.conditions:
            if condition.name == name:
                return condition
        raise KeyError(name)

    def failures(self) -> List[ConditionResult]:
        return [condition for condition in self.conditions if not condition.passed]

    def to_json(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.passed,
            "conditions": [condition.to_json() for condition in self.conditions],
        }
