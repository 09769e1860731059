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

"""Breadth-first search with goal tests on generation and random tie-breaking."""

import logging
from typing import Dict, Optional

from ..search import (Budget, Heuristic, Path, RngStream, RunStats, SearchTask,
                      State, Termination)
from .base import SearchAlgorithm, SearchResult, finish

logger = logging.getLogger(__name__)


def _trace(parents: Dict[State, Optional[State]], state: State) -> Path:
    states = []
    while state is not None:
        states.append(state)
        state = parents[state]
    states.reverse()
    return Path(states)


def brfs(
    task: SearchTask,
    rng: RngStream,
    budget: Optional[Budget] = None,
    stats: Optional[RunStats] = None,
    test_initial: bool = True,
) -> SearchResult:
    """Run breadth-first search.

    States of the current depth are kept in one queue and expanded in a
    uniformly random order; their successors go to the queue of the next
    depth, and the queues swap when the current one empties. A state is
    goal-tested when it is generated for the first time.

    Args:
        task (SearchTask): The task.
        rng (RngStream): Tie-breaking stream.
        budget (Budget, optional): Generation limit.
        stats (RunStats, optional): Counters of the run.
        test_initial (bool): Goal-test the initial state. Escape searches
            skip it because their root is known not to pass.

    Returns:
        SearchResult: A shortest path, ``Exhausted`` when every reachable
        state was examined, or ``BudgetExceeded``.
    """
    budget = budget or Budget.unlimited()
    stats = stats if stats is not None else RunStats()
    root = task.initial_state

    if test_initial:
        stats.goal_tests += 1
        if task.goal_test(root):
            return finish(stats, Termination.SOLVED, Path([root]))

    # open and closed lists in one table
    parents: Dict[State, Optional[State]] = {root: None}
    current = [root]
    following = []

    while current:
        index = rng.below(len(current))
        state = current[index]
        current[index] = current[-1]
        current.pop()

        for child in task.successors(state):
            if child in parents:
                continue
            if budget.generations_exhausted(stats):
                logger.info("BrFS stopped after %d generations.", stats.generations)
                return finish(stats, Termination.BUDGET_EXCEEDED)
            stats.generations += 1
            stats.goal_tests += 1
            parents[child] = state
            if task.goal_test(child):
                return finish(stats, Termination.SOLVED, _trace(parents, child))
            following.append(child)

        if not current:
            current, following = following, []

    return finish(stats, Termination.EXHAUSTED)


class BreadthFirstSearch(SearchAlgorithm):
    """Breadth-first search (``brfs``)."""

    @property
    def name(self) -> str:
        """Return the descriptor."""
        return "brfs"

    def solve(
        self,
        task: SearchTask,
        rng: RngStream,
        budget: Optional[Budget] = None,
        stats: Optional[RunStats] = None,
        heuristic: Optional[Heuristic] = None,
    ) -> SearchResult:
        """Run :func:`brfs` on ``task``."""
        return brfs(task, rng, budget, stats)
