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

"""Results and the abstract search algorithm."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

from ..search import Budget, Heuristic, Path, RngStream, RunStats, SearchTask, Termination


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a search: a solution path or the reason there is none."""

    status: Termination
    path: Optional[Path] = None

    @property
    def solved(self) -> bool:
        """Return True if a solution was found."""
        return self.status is Termination.SOLVED


def finish(stats: RunStats, status: Termination, path: Optional[Path] = None) -> SearchResult:
    """Record the end of a run in ``stats`` and build its result."""
    stats.terminated = status
    stats.solution_length = path.length if path is not None else None
    return SearchResult(status, path)


class SearchAlgorithm(ABC):
    """Abstract class to represent a search algorithm."""

    #: Whether :meth:`solve` needs a heuristic.
    requires_heuristic = False

    #: Whether the algorithm samples random walks and may never terminate.
    uses_walks = False

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the descriptor of the algorithm (as accepted by the factory)."""
        pass

    @abstractmethod
    def solve(
        self,
        task: SearchTask,
        rng: RngStream,
        budget: Optional[Budget] = None,
        stats: Optional[RunStats] = None,
        heuristic: Optional[Heuristic] = None,
    ) -> SearchResult:
        """Solve ``task``.

        Args:
            task (SearchTask): The task.
            rng (RngStream): Source of randomness owned by this run.
            budget (Budget, optional): Limits; unlimited when omitted.
            stats (RunStats, optional): Counters owned by this run.
            heuristic (Heuristic, optional): Needed by heuristic algorithms.

        Returns:
            SearchResult: The outcome; ``stats`` holds the counters.
        """
        pass

    def __repr__(self) -> str:
        """Algorithm representation."""
        return f"<{type(self).__name__} {self.name}>"
