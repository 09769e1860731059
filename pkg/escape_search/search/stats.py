#
# This file is part of Escape Search.
# Copyright (C) 2025 INPE.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see <https://www.gnu.org/licenses/gpl-3.0.html>.
#

"""Per-run instrumentation and budgets."""

from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Dict, Optional

from ..exceptions import SpecError


class Termination(str, Enum):
    """How a run ended."""

    SOLVED = "Solved"
    EXHAUSTED = "Exhausted"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass
class RunStats:
    """Counters of a single run.

    Runtime is measured in goal tests. Every algorithm tests the initial
    state once and every generated state once, so
    ``goal_tests == generations + 1``.
    """

    goal_tests: int = 0
    generations: int = 0
    heuristic_evals: int = 0
    walks_started: int = 0
    escape_searches: int = 0
    solution_length: Optional[int] = None
    terminated: Optional[Termination] = None

    @property
    def solved(self) -> bool:
        """Return True if the run found a solution."""
        return self.terminated is Termination.SOLVED

    def to_dict(self) -> Dict[str, Any]:
        """Return the counters as a plain dictionary."""
        data = asdict(self)
        data["terminated"] = self.terminated.value if self.terminated else None
        return data


@dataclass(frozen=True)
class Budget:
    """Limits on a run; ``None`` means unlimited."""

    max_generations: Optional[int] = None
    max_walks: Optional[int] = None

    def __post_init__(self) -> None:
        """Validate the limits."""
        for name in ("max_generations", "max_walks"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise SpecError(f"{name} must be non-negative, got {value}.")

    @classmethod
    def unlimited(cls) -> "Budget":
        """Return a budget without limits."""
        return cls()

    @property
    def is_finite(self) -> bool:
        """Return True if at least one limit is set."""
        return self.max_generations is not None or self.max_walks is not None

    def generations_exhausted(self, stats: RunStats) -> bool:
        """Return True if no further state may be generated."""
        return self.max_generations is not None and stats.generations >= self.max_generations

    def walks_exhausted(self, stats: RunStats) -> bool:
        """Return True if no further walk may be started."""
        return self.max_walks is not None and stats.walks_started >= self.max_walks
