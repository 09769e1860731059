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

"""Exhaustive census and exact random-walk probabilities of small tasks."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from ..exceptions import NodeCapExceeded, SpecError
from ..search import RngStream, SearchTask, State
from .specs import TaskSpec
from .tasks import DEFAULT_NODE_CAP, build_task

TaskOrSpec = Union[SearchTask, TaskSpec]


def _as_task(source: TaskOrSpec) -> SearchTask:
    if isinstance(source, TaskSpec):
        return build_task(source).task
    return source


def _goal_depth(task: SearchTask) -> int:
    try:
        return task.dstar
    except AttributeError:
        raise SpecError(f"{type(task).__name__} has no goal depth.") from None


@dataclass(frozen=True)
class Census:
    """Number of states at every depth of a tree-shaped task."""

    levels: Tuple[int, ...]

    @property
    def size_below(self) -> int:
        """Return the number of states shallower than the last level."""
        return sum(self.levels[:-1])

    @property
    def size_at(self) -> int:
        """Return the number of states at the last level."""
        return self.levels[-1]


def census(
    source: TaskOrSpec, depth: Optional[int] = None, node_cap: int = DEFAULT_NODE_CAP
) -> Census:
    """Count the states of every depth from 0 to ``depth`` level by level.

    Args:
        source (TaskOrSpec): A synthetic spec or a tree-shaped task.
        depth (int, optional): Last depth; the task's goal depth by default.
        node_cap (int): Largest number of states to visit.

    Raises:
        NodeCapExceeded: If more than ``node_cap`` states would be visited.
    """
    task = _as_task(source)
    depth = _goal_depth(task) if depth is None else depth
    level: List[State] = [task.initial_state]
    counts = [1]
    visited = 1
    for _ in range(depth):
        level = [child for state in level for child in task.successors(state)]
        visited += len(level)
        if visited > node_cap:
            raise NodeCapExceeded(
                f"The census visits more than {node_cap} states; use a smaller instance."
            )
        counts.append(len(level))
    return Census(tuple(counts))


class _Counter:
    def __init__(self, cap: int) -> None:
        self.cap = cap
        self.count = 0

    def visit(self) -> None:
        self.count += 1
        if self.count > self.cap:
            raise NodeCapExceeded(
                f"Exact enumeration visits more than {self.cap} states; "
                "estimate the probability with monte_carlo_reach_prob instead."
            )


def exact_reach_prob(source: TaskOrSpec, node_cap: int = DEFAULT_NODE_CAP) -> Fraction:
    """Return p_d*, the probability an unbiased walk reaches the goal depth.

    Sums, over every root-to-goal-depth path, the product of
    ``1/|successors|`` along the path.

    Raises:
        NodeCapExceeded: If the tree is too large to enumerate.
    """
    task = _as_task(source)
    dstar = _goal_depth(task)
    counter = _Counter(node_cap)

    def reach(state: State, depth: int) -> Fraction:
        counter.visit()
        if depth == dstar:
            return Fraction(1)
        children = task.successors(state)
        if not children:
            return Fraction(0)
        return sum((reach(child, depth + 1) for child in children), Fraction(0)) / len(children)

    return reach(task.initial_state, 0)


def exact_success_prob(
    source: TaskOrSpec, walk_length: int, node_cap: int = DEFAULT_NODE_CAP
) -> Fraction:
    """Return p_g, the probability an unbiased walk of ``walk_length`` steps hits a goal.

    The walk stops at the first goal; a state without successors ends it.

    Raises:
        SpecError: If ``walk_length < 1``.
        NodeCapExceeded: If the tree is too large to enumerate.
    """
    if walk_length < 1:
        raise SpecError(f"The walk length must be at least 1, got {walk_length}.")
    task = _as_task(source)
    counter = _Counter(node_cap)

    def success(state: State, remaining: int) -> Fraction:
        counter.visit()
        children = task.successors(state)
        if remaining == 0 or not children:
            return Fraction(0)
        total = Fraction(0)
        for child in children:
            if task.goal_test(child):
                total += 1
            else:
                total += success(child, remaining - 1)
        return total / len(children)

    root = task.initial_state
    if task.goal_test(root):
        return Fraction(1)
    return success(root, walk_length)


def monte_carlo_reach_prob(
    source: TaskOrSpec, walks: int, rng: RngStream, dstar: Optional[int] = None
) -> Tuple[float, float]:
    """Estimate p_d* from ``walks`` unbiased walks.

    Returns:
        Tuple[float, float]: The estimate and its standard error.
    """
    if walks < 1:
        raise SpecError(f"At least one walk is needed, got {walks}.")
    task = _as_task(source)
    dstar = _goal_depth(task) if dstar is None else dstar
    hits = 0
    for _ in range(walks):
        state = task.initial_state
        for _ in range(dstar):
            children = task.successors(state)
            if not children:
                break
            state = rng.choice(children)
        else:
            hits += 1
    estimate = hits / walks
    return estimate, math.sqrt(estimate * (1.0 - estimate) / walks)
