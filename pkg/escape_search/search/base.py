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

"""Task, path and heuristic contracts shared by every search algorithm."""

import math
from abc import ABC, abstractmethod
from typing import Any, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from ..exceptions import DeadEndError, PathError
from .stats import RunStats

State = Hashable

#: Heuristic value of a recognized dead end.
INFINITY = math.inf


class SearchTask(ABC):
    """Abstract class to represent a search task.

    A task houses the initial state, the successor function and the goal
    test. Implementations must be deterministic and must not mutate shared
    data, so one task may serve many concurrent trials.
    """

    @property
    @abstractmethod
    def initial_state(self) -> State:
        """Return the initial state."""
        pass

    @abstractmethod
    def successors(self, state: State) -> List[State]:
        """Return the ordered successors of ``state``.

        Args:
            state (State): A state of the task.

        Returns:
            List[State]: The same list (same order) on every call.
        """
        pass

    @abstractmethod
    def goal_test(self, state: State) -> bool:
        """Return True if ``state`` is a goal."""
        pass

    def describe(self) -> Dict[str, Any]:
        """Return metadata about the task."""
        return {"type": type(self).__name__}

    def __repr__(self) -> str:
        """Task representation."""
        return f"<{type(self).__name__} initial_state={self.initial_state!r}>"


class Heuristic(ABC):
    """Abstract class to represent a heuristic function.

    Values are non-negative integers, or :data:`INFINITY` for recognized
    dead ends.
    """

    @abstractmethod
    def evaluate(self, state: State) -> float:
        """Return the heuristic value of ``state``."""
        pass

    def __call__(self, state: State) -> float:
        """Shortcut for :meth:`evaluate`."""
        return self.evaluate(state)


class Path:
    """An immutable sequence of states where each state succeeds the previous one."""

    __slots__ = ("_states",)

    def __init__(self, states: Sequence[State]) -> None:
        """Create a path.

        Args:
            states (Sequence[State]): At least one state.
        """
        if len(states) < 1:
            raise PathError("A path holds at least one state.")
        self._states: Tuple[State, ...] = tuple(states)

    @property
    def states(self) -> Tuple[State, ...]:
        """Return the states of the path."""
        return self._states

    @property
    def first(self) -> State:
        """Return the first state."""
        return self._states[0]

    @property
    def last(self) -> State:
        """Return the last state."""
        return self._states[-1]

    @property
    def length(self) -> int:
        """Return the number of transitions of the path."""
        return len(self._states) - 1

    def concat(self, other: "Path", shared: bool = True) -> "Path":
        """Return ``self + other``; see :func:`concat`."""
        return concat(self, other, shared=shared)

    def __add__(self, other: "Path") -> "Path":
        """Concatenate over a shared endpoint."""
        return concat(self, other)

    def is_valid(self, task: SearchTask) -> bool:
        """Check that every state is a successor of the state before it."""
        for previous, current in zip(self._states, self._states[1:]):
            if current not in task.successors(previous):
                return False
        return True

    def __len__(self) -> int:
        """Return the number of states of the path."""
        return len(self._states)

    def __iter__(self) -> Iterator[State]:
        """Iterate over the states."""
        return iter(self._states)

    def __getitem__(self, index):
        """Return a state by position."""
        return self._states[index]

    def __eq__(self, other: object) -> bool:
        """Paths are equal when their states are."""
        if not isinstance(other, Path):
            return NotImplemented
        return self._states == other._states

    def __hash__(self) -> int:
        """Hash of the states."""
        return hash(self._states)

    def __repr__(self) -> str:
        """Path representation."""
        return f"<Path length={self.length} states={list(self._states)!r}>"


def concat(p1: Path, p2: Path, shared: bool = True) -> Path:
    """Concatenate two paths.

    Args:
        p1 (Path): The prefix.
        p2 (Path): The suffix.
        shared (bool): If True, ``p2`` must start at ``last(p1)`` and the
            duplicated junction state is kept once. Otherwise ``p2`` is
            appended as it is.

    Returns:
        Path: The joined path.

    Raises:
        PathError: If ``shared`` and the junction states differ.
    """
    if not shared:
        return Path(p1.states + p2.states)
    if p1.last != p2.first:
        raise PathError(
            f"Cannot join paths: {p1.last!r} is not the first state {p2.first!r}."
        )
    return Path(p1.states + p2.states[1:])


class EscapeGoalTest:
    """Goal test that succeeds on a goal or on any strict heuristic improvement."""

    def __init__(self, base: SearchTask, heuristic: Heuristic, threshold: float) -> None:
        """Create the goal test.

        Args:
            base (SearchTask): Task providing the original goal test.
            heuristic (Heuristic): The heuristic.
            threshold (float): Heuristic value of the UHR entry state.
        """
        self.base = base
        self.heuristic = heuristic
        self.threshold = threshold

    def __call__(self, state: State, value: Optional[float] = None) -> bool:
        """Return True iff ``state`` is a goal or improves on the threshold."""
        if self.base.goal_test(state):
            return True
        if value is None:
            value = self.heuristic.evaluate(state)
        return self.improves(value)

    def improves(self, value: float) -> bool:
        """Return True if ``value`` is lower than the threshold."""
        return value < self.threshold


class EscapeTask(SearchTask):
    """The task of escaping the UHR entered at ``entry``.

    Successors with an infinite heuristic value are dropped when they are
    generated. Heuristic values computed while generating successors are
    reused by the goal test of the same states.
    """

    def __init__(
        self,
        task: SearchTask,
        heuristic: Heuristic,
        entry: State,
        threshold: float,
        stats: Optional[RunStats] = None,
    ) -> None:
        """Create the escape task (see :func:`make_escape_task`)."""
        self._task = task
        self._heuristic = heuristic
        self._entry = entry
        self._stats = stats
        self._values: Dict[State, float] = {}
        self.goal = EscapeGoalTest(task, heuristic, threshold)

    @property
    def initial_state(self) -> State:
        """Return the UHR entry."""
        return self._entry

    @property
    def base(self) -> SearchTask:
        """Return the task being escaped."""
        return self._task

    @property
    def threshold(self) -> float:
        """Return the heuristic value of the entry."""
        return self.goal.threshold

    def _evaluate(self, state: State) -> float:
        if self._stats is not None:
            self._stats.heuristic_evals += 1
        return self._heuristic.evaluate(state)

    def successors(self, state: State) -> List[State]:
        """Return the successors not recognized as dead ends."""
        values = {}
        result = []
        for child in self._task.successors(state):
            value = self._evaluate(child)
            if value == INFINITY:
                continue
            values[child] = value
            result.append(child)
        self._values = values
        return result

    def value_of(self, state: State) -> Optional[float]:
        """Return the cached heuristic value of a just generated state."""
        return self._values.get(state)

    def goal_test(self, state: State) -> bool:
        """Return the escape goal test of ``state``."""
        if self._task.goal_test(state):
            return True
        value = self._values.get(state)
        if value is None:
            value = self._evaluate(state)
        return self.goal.improves(value)

    def describe(self) -> Dict[str, Any]:
        """Return metadata about the escape task."""
        return {"type": "EscapeTask", "entry": self._entry, "threshold": self.threshold}


def make_escape_task(
    task: SearchTask,
    heuristic: Heuristic,
    entry: State,
    stats: Optional[RunStats] = None,
    value: Optional[float] = None,
) -> EscapeTask:
    """Build the task of escaping the UHR entered at ``entry``.

    The returned task is rooted at ``entry``; its goal test holds for goals of
    ``task`` and for states whose heuristic value is lower than ``h(entry)``.

    Args:
        task (SearchTask): The task being solved.
        heuristic (Heuristic): The heuristic.
        entry (State): UHR entry state.
        stats (RunStats, optional): Record receiving heuristic evaluations.
        value (float, optional): ``h(entry)`` when it is already known.

    Raises:
        DeadEndError: If ``h(entry)`` is infinite.
    """
    threshold = value
    if threshold is None:
        threshold = heuristic.evaluate(entry)
        if stats is not None:
            stats.heuristic_evals += 1
    if threshold == INFINITY:
        raise DeadEndError(f"State {entry!r} is a recognized dead end.")
    return EscapeTask(task, heuristic, entry, threshold, stats)
