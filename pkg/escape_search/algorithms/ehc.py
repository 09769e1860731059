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

"""Enforced hill-climbing with pluggable escape strategies."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..exceptions import SpecError
from ..search import (INFINITY, Budget, Heuristic, Path, RngStream, RunStats,
                      SearchTask, Termination, make_escape_task)
from .base import SearchAlgorithm, SearchResult, finish
from .brfs import brfs
from .random_walk import ConstantDepth, DepthPolicy, LubyDepth, rrw

logger = logging.getLogger(__name__)


class StrategyKind(str, Enum):
    """Search used to escape each UHR."""

    BRFS = "brfs"
    CONSTANT_RRW = "crrw"
    LUBY_RRW = "luby"


@dataclass(frozen=True)
class EscapeStrategy:
    """An escape strategy: BrFS, RRW with constant depth, or RRW with Luby depths."""

    kind: StrategyKind
    parameter: Optional[int] = None

    def __post_init__(self) -> None:
        """Validate the walk length or multiplier."""
        if self.kind is StrategyKind.BRFS:
            if self.parameter is not None:
                raise SpecError("The BrFS escape strategy takes no parameter.")
        elif self.parameter is None or self.parameter < 1:
            raise SpecError(
                f"The {self.kind.value} escape strategy needs a parameter >= 1, "
                f"got {self.parameter}."
            )

    @classmethod
    def brfs(cls) -> "EscapeStrategy":
        """Return the BrFS strategy."""
        return cls(StrategyKind.BRFS)

    @classmethod
    def constant(cls, length: int) -> "EscapeStrategy":
        """Return the constant-depth RRW strategy."""
        return cls(StrategyKind.CONSTANT_RRW, length)

    @classmethod
    def luby(cls, multiplier: int = 1) -> "EscapeStrategy":
        """Return the Luby RRW strategy."""
        return cls(StrategyKind.LUBY_RRW, multiplier)

    @property
    def uses_walks(self) -> bool:
        """Return True for the random-walk strategies."""
        return self.kind is not StrategyKind.BRFS

    def policy(self) -> DepthPolicy:
        """Return the depth policy of a random-walk strategy."""
        if self.kind is StrategyKind.CONSTANT_RRW:
            return ConstantDepth(self.parameter)
        if self.kind is StrategyKind.LUBY_RRW:
            return LubyDepth(self.parameter)
        raise SpecError("The BrFS escape strategy has no depth policy.")

    def search(
        self, task: SearchTask, rng: RngStream, budget: Budget, stats: RunStats
    ) -> SearchResult:
        """Solve an escape task whose root is known not to pass the goal test."""
        if self.kind is StrategyKind.BRFS:
            return brfs(task, rng, budget, stats, test_initial=False)
        return rrw(task, self.policy(), rng, budget, stats, test_initial=False)

    def __str__(self) -> str:
        """Return the descriptor (``brfs``, ``crrw:l`` or ``luby:m``)."""
        if self.parameter is None:
            return self.kind.value
        return f"{self.kind.value}:{self.parameter}"


def ehc(
    task: SearchTask,
    heuristic: Heuristic,
    strategy: EscapeStrategy,
    rng: RngStream,
    budget: Optional[Budget] = None,
    stats: Optional[RunStats] = None,
) -> SearchResult:
    """Run enforced hill-climbing.

    Each iteration solves the escape task rooted at the last committed state
    with ``strategy`` and commits to the first escape found, until the
    committed state is a goal. Every BrFS escape starts with fresh open and
    closed lists.

    Args:
        task (SearchTask): The task.
        heuristic (Heuristic): The heuristic.
        strategy (EscapeStrategy): How UHRs are escaped.
        rng (RngStream): Stream shared by the escape searches.
        budget (Budget, optional): Limits over the whole run.
        stats (RunStats, optional): Counters of the run.

    Returns:
        SearchResult: A path valid in ``task``, ``Exhausted`` when a BrFS
        escape examines its whole region or h(s_I) is infinite, or
        ``BudgetExceeded``.
    """
    budget = budget or Budget.unlimited()
    stats = stats if stats is not None else RunStats()
    root = task.initial_state

    stats.goal_tests += 1
    if task.goal_test(root):
        return finish(stats, Termination.SOLVED, Path([root]))

    value = heuristic.evaluate(root)
    stats.heuristic_evals += 1
    if value == INFINITY:
        logger.info("The initial state is a recognized dead end.")
        return finish(stats, Termination.EXHAUSTED)

    path = Path([root])
    while True:
        escape_task = make_escape_task(task, heuristic, path.last, stats, value=value)
        stats.escape_searches += 1
        logger.debug("Escape search %d from h=%s.", stats.escape_searches, value)

        result = strategy.search(escape_task, rng, budget, stats)
        if not result.solved:
            logger.info(
                "Escape search %d ended with %s.", stats.escape_searches, result.status.value
            )
            return finish(stats, result.status)

        path = path + result.path
        if task.goal_test(path.last):
            return finish(stats, Termination.SOLVED, path)

        value = escape_task.value_of(path.last)
        if value is None:
            value = heuristic.evaluate(path.last)
            stats.heuristic_evals += 1


class EnforcedHillClimbing(SearchAlgorithm):
    """Enforced hill-climbing (``ehc:<strategy>``)."""

    requires_heuristic = True

    def __init__(self, strategy: EscapeStrategy) -> None:
        """Create the algorithm."""
        self.strategy = strategy
        self.uses_walks = strategy.uses_walks

    @property
    def name(self) -> str:
        """Return the descriptor."""
        return f"ehc:{self.strategy}"

    def solve(
        self,
        task: SearchTask,
        rng: RngStream,
        budget: Optional[Budget] = None,
        stats: Optional[RunStats] = None,
        heuristic: Optional[Heuristic] = None,
    ) -> SearchResult:
        """Run :func:`ehc` on ``task``."""
        if heuristic is None:
            raise SpecError(f"{self.name} needs a heuristic.")
        return ehc(task, heuristic, self.strategy, rng, budget, stats)
