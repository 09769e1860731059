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

"""Unbiased random walks and restarting random walks."""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..exceptions import SpecError
from ..search import (Budget, Heuristic, Path, RngStream, RunStats, SearchTask,
                      Termination)
from .base import SearchAlgorithm, SearchResult, finish

logger = logging.getLogger(__name__)


def luby(i: int) -> int:
    """Return the ``i``-th value of the Luby sequence (1-based).

    >>> [luby(i) for i in range(1, 16)]
    [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]
    """
    if i < 1:
        raise SpecError(f"The Luby sequence starts at index 1, got {i}.")
    while True:
        k = i.bit_length()
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1


class DepthPolicy(ABC):
    """Chooses the depth limit of each walk of a restarting random walk."""

    @abstractmethod
    def next_depth(self, walk_index: int) -> int:
        """Return the depth limit of walk number ``walk_index`` (1-based)."""
        pass

    @property
    @abstractmethod
    def descriptor(self) -> str:
        """Return the policy descriptor (``crrw:l`` or ``luby:m``)."""
        pass


class ConstantDepth(DepthPolicy):
    """Every walk has the same depth limit."""

    def __init__(self, length: int) -> None:
        """Create the policy for walks of ``length`` steps."""
        if length < 1:
            raise SpecError(f"The walk length must be at least 1, got {length}.")
        self.length = length

    def next_depth(self, walk_index: int) -> int:
        """Return the constant length."""
        return self.length

    @property
    def descriptor(self) -> str:
        """Return ``crrw:<length>``."""
        return f"crrw:{self.length}"


class LubyDepth(DepthPolicy):
    """The ``i``-th walk has depth limit ``multiplier * luby(i)``."""

    def __init__(self, multiplier: int = 1) -> None:
        """Create the policy with the given multiplier."""
        if multiplier < 1:
            raise SpecError(f"The Luby multiplier must be at least 1, got {multiplier}.")
        self.multiplier = multiplier

    def next_depth(self, walk_index: int) -> int:
        """Return the scaled Luby value."""
        return self.multiplier * luby(walk_index)

    @property
    def descriptor(self) -> str:
        """Return ``luby:<multiplier>``."""
        return f"luby:{self.multiplier}"


class WalkOutcome(str, Enum):
    """How a single random walk ended."""

    SUCCESS = "Success"
    DEAD_END = "DeadEnd"
    DEPTH_EXHAUSTED = "DepthExhausted"
    # only when a budget is given to random_walk
    INTERRUPTED = "Interrupted"


@dataclass(frozen=True)
class WalkResult:
    """The path followed by a walk and how it ended."""

    path: Path
    outcome: WalkOutcome


def random_walk(
    task: SearchTask,
    max_depth: int,
    rng: RngStream,
    stats: Optional[RunStats] = None,
    budget: Optional[Budget] = None,
) -> WalkResult:
    """Walk from the initial state sampling successors uniformly.

    Every sampled state is goal-tested; the initial state is not. No
    duplicate detection is performed.

    Args:
        task (SearchTask): The task.
        max_depth (int): Maximum number of steps.
        rng (RngStream): Sampling stream.
        stats (RunStats, optional): Counters of the run.
        budget (Budget, optional): Generation limit checked before each step.

    Returns:
        WalkResult: The walk, tagged ``Success``, ``DeadEnd`` or
        ``DepthExhausted``.
    """
    if max_depth < 1:
        raise SpecError(f"The walk depth must be at least 1, got {max_depth}.")
    stats = stats if stats is not None else RunStats()
    state = task.initial_state
    states = [state]

    for _ in range(max_depth):
        children = task.successors(state)
        if not children:
            return WalkResult(Path(states), WalkOutcome.DEAD_END)
        if budget is not None and budget.generations_exhausted(stats):
            return WalkResult(Path(states), WalkOutcome.INTERRUPTED)
        state = rng.choice(children)
        stats.generations += 1
        stats.goal_tests += 1
        states.append(state)
        if task.goal_test(state):
            return WalkResult(Path(states), WalkOutcome.SUCCESS)

    return WalkResult(Path(states), WalkOutcome.DEPTH_EXHAUSTED)


def rrw(
    task: SearchTask,
    policy: DepthPolicy,
    rng: RngStream,
    budget: Optional[Budget] = None,
    stats: Optional[RunStats] = None,
    test_initial: bool = True,
) -> SearchResult:
    """Run random walks from the initial state until one reaches a goal.

    Args:
        task (SearchTask): The task.
        policy (DepthPolicy): Depth limit of each walk.
        rng (RngStream): Sampling stream.
        budget (Budget, optional): Generation and walk limits. Without one the
            search never ends on tasks where walks cannot succeed.
        stats (RunStats, optional): Counters of the run.
        test_initial (bool): Goal-test the initial state first.

    Returns:
        SearchResult: ``Solved`` with the successful walk, or
        ``BudgetExceeded``. A task whose initial state has no successors
        ends with ``BudgetExceeded`` after the first walk.
    """
    budget = budget or Budget.unlimited()
    stats = stats if stats is not None else RunStats()
    root = task.initial_state

    if test_initial:
        stats.goal_tests += 1
        if task.goal_test(root):
            return finish(stats, Termination.SOLVED, Path([root]))

    walk_index = 0
    while True:
        if budget.walks_exhausted(stats) or budget.generations_exhausted(stats):
            logger.info(
                "RRW (%s) stopped after %d walks and %d generations.",
                policy.descriptor, stats.walks_started, stats.generations,
            )
            return finish(stats, Termination.BUDGET_EXCEEDED)
        walk_index += 1
        stats.walks_started += 1
        walk = random_walk(task, policy.next_depth(walk_index), rng, stats, budget)
        if walk.outcome is WalkOutcome.SUCCESS:
            return finish(stats, Termination.SOLVED, walk.path)
        if walk.outcome is WalkOutcome.DEAD_END and walk.path.length == 0:
            # no walk can leave the initial state
            logger.info(
                "RRW (%s) stopped: the initial state has no successors.", policy.descriptor
            )
            return finish(stats, Termination.BUDGET_EXCEEDED)


class RestartingRandomWalk(SearchAlgorithm):
    """Restarting random walks with a pluggable depth policy."""

    uses_walks = True

    def __init__(self, policy: DepthPolicy) -> None:
        """Create the algorithm."""
        self.policy = policy

    @property
    def name(self) -> str:
        """Return the descriptor."""
        return self.policy.descriptor

    def solve(
        self,
        task: SearchTask,
        rng: RngStream,
        budget: Optional[Budget] = None,
        stats: Optional[RunStats] = None,
        heuristic: Optional[Heuristic] = None,
    ) -> SearchResult:
        """Run :func:`rrw` on ``task``."""
        return rrw(task, self.policy, rng, budget, stats)
