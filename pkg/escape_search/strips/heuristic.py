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

"""The unit-cost FF heuristic over the relaxed planning graph."""

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Set, Tuple, Union

from ..search import INFINITY, Heuristic
from .grounding import GroundTask


@dataclass(frozen=True)
class RelaxedPlanResult:
    """Length of a relaxed plan and the plan itself.

    ``value`` is :data:`~escape_search.search.INFINITY` when the goal is
    relaxed-unreachable; the plan is then empty.
    """

    value: Union[int, float]
    relaxed_plan: Tuple[int, ...] = ()

    @property
    def is_dead_end(self) -> bool:
        """Return True if the state was recognized as a dead end."""
        return self.value == INFINITY


def _graph(task: GroundTask, facts: Set[int]) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Build the fact and action layers until the goal appears or a fixpoint."""
    fact_layer = {fact: 0 for fact in facts}
    action_layer: Dict[int, int] = {}
    layer = 0
    while not task.goal <= fact_layer.keys():
        new_facts = []
        for action in task.actions:
            if action.id in action_layer or not action.pre <= fact_layer.keys():
                continue
            action_layer[action.id] = layer
            new_facts.extend(f for f in action.add if f not in fact_layer)
        if not new_facts:
            break
        layer += 1
        for fact in new_facts:
            fact_layer.setdefault(fact, layer)
    return fact_layer, action_layer


def h_ff(task: GroundTask, state: Iterable[int]) -> RelaxedPlanResult:
    """Return the FF heuristic of ``state``.

    Delete lists are ignored while the planning graph grows. The relaxed
    plan is extracted backwards: each needed fact not yet added by a chosen
    action gets the achiever of the earliest layer, lowest id first.

    Args:
        task (GroundTask): The task.
        state (Iterable[int]): Fact ids of the state.

    Returns:
        RelaxedPlanResult: 0 with an empty plan iff the goal holds, INFINITY
        when the graph reaches a fixpoint without the goal.
    """
    facts = set(state)
    if task.goal <= facts:
        return RelaxedPlanResult(0)

    fact_layer, action_layer = _graph(task, facts)
    if not task.goal <= fact_layer.keys():
        return RelaxedPlanResult(INFINITY)

    pending: Dict[int, Set[int]] = defaultdict(set)
    for fact in task.goal:
        if fact_layer[fact] > 0:
            pending[fact_layer[fact]].add(fact)
    top = max(pending)

    selected: List[int] = []
    chosen: Set[int] = set()
    achieved: Set[int] = set()
    for layer in range(top, 0, -1):
        for fact in sorted(pending.pop(layer, ())):
            if fact in achieved:
                continue
            achiever = min(
                a for a in task.achievers[fact] if action_layer.get(a) == layer - 1
            )
            if achiever in chosen:
                continue
            chosen.add(achiever)
            selected.append(achiever)
            action = task.actions[achiever]
            achieved |= action.add
            for pre in action.pre:
                if fact_layer[pre] > 0 and pre not in achieved:
                    pending[fact_layer[pre]].add(pre)

    plan = tuple(sorted(selected, key=lambda a: (action_layer[a], a)))
    return RelaxedPlanResult(len(plan), plan)


class FFHeuristic(Heuristic):
    """:func:`h_ff` as a :class:`~escape_search.search.Heuristic`."""

    def __init__(self, task: GroundTask) -> None:
        """Create the heuristic of ``task``."""
        self.task = task

    def evaluate(self, state: Iterable[int]) -> float:
        """Return the relaxed plan length, or INFINITY for dead ends."""
        return h_ff(self.task, state).value
