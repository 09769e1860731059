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

"""Synthetic search tasks built from their specs.

States are tuples of child indices: ``()`` is the initial state and
``s + (i,)`` is the ``i``-th successor of ``s``.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..exceptions import NodeCapExceeded, SpecError
from ..search import Heuristic, RngStream, SearchTask
from .specs import (DeadLeafTreeSpec, StarTaskSpec, TaskSpec, TreeTaskSpec,
                    UhrChainSpec)

logger = logging.getLogger(__name__)

TreeState = Tuple[int, ...]

#: Default cap on the states materialized or enumerated exhaustively.
DEFAULT_NODE_CAP = 5_000_000


def index_to_state(index: int, b: int, depth: int) -> TreeState:
    """Return the state at position ``index`` (lexicographic) of depth ``depth``."""
    digits = [0] * depth
    for position in range(depth - 1, -1, -1):
        index, digits[position] = divmod(index, b)
    return tuple(digits)


def _place(population: List[TreeState], g: int, rng: RngStream) -> List[TreeState]:
    return [population[i] for i in rng.sample_indices(len(population), g)]


class SyntheticTask(SearchTask):
    """Base class of the tree-shaped synthetic tasks."""

    def __init__(self, spec: TaskSpec, goals: Iterable[TreeState]) -> None:
        """Create the task with its goal set."""
        self.spec = spec
        self._goals: FrozenSet[TreeState] = frozenset(goals)

    @property
    def initial_state(self) -> TreeState:
        """Return the root."""
        return ()

    @property
    def goals(self) -> FrozenSet[TreeState]:
        """Return the goal states."""
        return self._goals

    def goal_test(self, state: TreeState) -> bool:
        """Return True if ``state`` is a goal."""
        return state in self._goals

    def describe(self) -> Dict[str, Any]:
        """Return the spec and the goal count."""
        return {
            "type": type(self).__name__,
            "spec": self.spec.to_dict(),
            "goals": len(self._goals),
        }


class TreeTask(SyntheticTask):
    """Full tree with constant branching."""

    def __init__(self, spec: TreeTaskSpec, placement: Optional[RngStream] = None) -> None:
        """Create the task.

        Args:
            spec (TreeTaskSpec): The spec.
            placement (RngStream, optional): Stream for the goal placement;
                ``RngStream(spec.goal_seed)`` when omitted.
        """
        rng = placement or RngStream(spec.goal_seed)
        goals = [
            index_to_state(i, spec.b, spec.dstar)
            for i in rng.sample_indices(spec.size_at, spec.g)
        ]
        if spec.deep_goals:
            deepest = spec.b ** spec.max_depth
            goals.extend(
                index_to_state(i, spec.b, spec.max_depth)
                for i in rng.sample_indices(deepest, spec.deep_goals)
            )
        super().__init__(spec, goals)
        self.dstar = spec.dstar

    def successors(self, state: TreeState) -> List[TreeState]:
        """Return the ``b`` children of ``state``, none at the deepest level."""
        if len(state) >= self.spec.max_depth:
            return []
        return [state + (i,) for i in range(self.spec.b)]


class StarTask(SyntheticTask):
    """One level of ``n`` leaves below the initial state."""

    def __init__(self, spec: StarTaskSpec, placement: Optional[RngStream] = None) -> None:
        """Create the task; see :class:`TreeTask`."""
        rng = placement or RngStream(spec.goal_seed)
        super().__init__(spec, [(i,) for i in rng.sample_indices(spec.n, spec.g)])
        self.dstar = 1

    def successors(self, state: TreeState) -> List[TreeState]:
        """Return the leaves for the root, nothing otherwise."""
        if state:
            return []
        return [(i,) for i in range(self.spec.n)]


class DeadLeafTreeTask(SyntheticTask):
    """Tree whose states above the goal depth may have no successors."""

    def __init__(
        self,
        spec: DeadLeafTreeSpec,
        placement: Optional[RngStream] = None,
        dead: Optional[Iterable[TreeState]] = None,
        node_cap: int = DEFAULT_NODE_CAP,
    ) -> None:
        """Materialize the structure and place the goals.

        Args:
            spec (DeadLeafTreeSpec): The spec.
            placement (RngStream, optional): Stream for the goal placement.
            dead (Iterable[TreeState], optional): Explicit dead ends; replaces
                the draws from ``structure_seed``.
            node_cap (int): Largest number of states to materialize.

        Raises:
            SpecError: If ``g`` exceeds the reachable goal-depth states.
            NodeCapExceeded: If the structure is too large to materialize.
        """
        self.spec = spec
        self.dstar = spec.dstar
        if dead is not None:
            self._dead = frozenset(tuple(s) for s in dead)
        else:
            self._dead = self._draw_structure(spec, node_cap)

        reachable = self._reachable_at_goal_depth(spec, node_cap)
        if spec.g > len(reachable):
            raise SpecError(
                f"g={spec.g} exceeds the {len(reachable)} reachable states at depth {spec.dstar}."
            )
        rng = placement or RngStream(spec.goal_seed)
        super().__init__(spec, _place(reachable, spec.g, rng))

    @staticmethod
    def _draw_structure(spec: DeadLeafTreeSpec, node_cap: int) -> FrozenSet[TreeState]:
        # breadth-first in lexicographic order, one draw per live non-root state
        rng = RngStream(spec.structure_seed)
        dead = set()
        level = [()]
        visited = 1
        for _ in range(1, spec.dstar):
            following = []
            for state in level:
                for i in range(spec.b):
                    child = state + (i,)
                    visited += 1
                    if visited > node_cap:
                        raise NodeCapExceeded(
                            f"Materializing the tree needs more than {node_cap} states."
                        )
                    if rng.random() < spec.dead_prob:
                        dead.add(child)
                    else:
                        following.append(child)
            level = following
        logger.debug("Dead-leaf tree has %d dead ends.", len(dead))
        return frozenset(dead)

    def _reachable_at_goal_depth(self, spec: DeadLeafTreeSpec, node_cap: int) -> List[TreeState]:
        level = [()]
        visited = 1
        for _ in range(spec.dstar):
            level = [child for state in level for child in self.successors(state)]
            visited += len(level)
            if visited > node_cap:
                raise NodeCapExceeded(f"The tree has more than {node_cap} reachable states.")
        return level

    @property
    def dead_ends(self) -> FrozenSet[TreeState]:
        """Return the states without successors above the goal depth."""
        return self._dead

    def successors(self, state: TreeState) -> List[TreeState]:
        """Return the children of a live state above the goal depth."""
        if len(state) >= self.spec.dstar or state in self._dead:
            return []
        return [state + (i,) for i in range(self.spec.b)]


class UhrChainTask(SearchTask):
    """A chain of uninformative heuristic regions.

    A state is the concatenation of one child-index segment per UHR it has
    crossed, followed by its position inside the current UHR.
    """

    def __init__(self, spec: UhrChainSpec) -> None:
        """Draw the escape states of every UHR from ``spec.seed``."""
        self.spec = spec
        self._escapes: List[FrozenSet[TreeState]] = []
        for i, (b, e, x) in enumerate(zip(spec.branching, spec.exit_depth, spec.exit_count)):
            rng = RngStream(spec.seed, i)
            self._escapes.append(
                frozenset(index_to_state(j, b, e) for j in rng.sample_indices(b**e, x))
            )

    @property
    def initial_state(self) -> TreeState:
        """Return the root of the first UHR."""
        return ()

    def escapes(self, level: int) -> FrozenSet[TreeState]:
        """Return the escape segments of UHR ``level``."""
        return self._escapes[level]

    def locate(self, state: TreeState) -> Tuple[int, bool]:
        """Return the UHR of ``state`` and whether it is a non-escape leaf.

        The level of a goal is ``k``.
        """
        position = 0
        for level, depth in enumerate(self.spec.exit_depth):
            if len(state) - position < depth:
                return level, False
            if state[position:position + depth] not in self._escapes[level]:
                return level, True
            position += depth
        return self.spec.k, False

    def successors(self, state: TreeState) -> List[TreeState]:
        """Return the children inside the current UHR."""
        level, leaf = self.locate(state)
        if leaf or level == self.spec.k:
            return []
        return [state + (i,) for i in range(self.spec.branching[level])]

    def goal_test(self, state: TreeState) -> bool:
        """Return True for the escapes of the last UHR."""
        return self.locate(state)[0] == self.spec.k

    def describe(self) -> Dict[str, Any]:
        """Return the spec."""
        return {"type": "UhrChainTask", "spec": self.spec.to_dict()}


class UhrChainHeuristic(Heuristic):
    """``h(s) = k - i`` for every state of UHR ``i``."""

    def __init__(self, task: UhrChainTask) -> None:
        """Create the heuristic of ``task``."""
        self.task = task

    def evaluate(self, state: TreeState) -> float:
        """Return the number of UHRs left to cross."""
        return self.task.spec.k - self.task.locate(state)[0]


@dataclass(frozen=True)
class BuiltTask:
    """A synthetic task and, for UHR chains, its heuristic."""

    task: SearchTask
    heuristic: Optional[Heuristic] = None


def build_task(
    spec: TaskSpec,
    placement: Optional[RngStream] = None,
    node_cap: int = DEFAULT_NODE_CAP,
) -> BuiltTask:
    """Build the task described by ``spec``.

    Args:
        spec (TaskSpec): Any synthetic spec.
        placement (RngStream, optional): Goal placement stream overriding the
            spec's ``goal_seed`` (used to redraw goals per trial).
        node_cap (int): Cap on materialized states for dead-leaf trees.

    Returns:
        BuiltTask: The task, with a heuristic for :class:`UhrChainSpec`.
    """
    if isinstance(spec, TreeTaskSpec):
        return BuiltTask(TreeTask(spec, placement))
    if isinstance(spec, StarTaskSpec):
        return BuiltTask(StarTask(spec, placement))
    if isinstance(spec, DeadLeafTreeSpec):
        return BuiltTask(DeadLeafTreeTask(spec, placement, node_cap=node_cap))
    if isinstance(spec, UhrChainSpec):
        task = UhrChainTask(spec)
        return BuiltTask(task, UhrChainHeuristic(task))
    raise SpecError(f"Unsupported spec type {type(spec).__name__}.")
