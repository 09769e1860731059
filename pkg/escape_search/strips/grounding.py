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

"""Grounding of parsed STRIPS tasks into search tasks over fact ids."""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..exceptions import GroundingError
from ..search import SearchTask
from .parser import Atom, Domain, Problem

logger = logging.getLogger(__name__)

#: A state is the sorted tuple of the ids of its true facts.
StripsState = Tuple[int, ...]

DEFAULT_MAX_ACTIONS = 1_000_000


@dataclass(frozen=True)
class GroundAction:
    """A ground STRIPS action over fact ids."""

    id: int
    name: str
    pre: FrozenSet[int]
    add: FrozenSet[int]
    delete: FrozenSet[int]

    def applicable(self, facts: FrozenSet[int]) -> bool:
        """Return True if the precondition holds in ``facts``."""
        return self.pre <= facts

    def apply(self, facts: FrozenSet[int]) -> FrozenSet[int]:
        """Return ``(facts - delete) | add``."""
        return (facts - self.delete) | self.add


class GroundTask(SearchTask):
    """A grounded STRIPS task.

    Facts and actions are numbered in lexicographic order of their names.
    Successors are listed in action-id order without duplicates.
    """

    def __init__(
        self,
        facts: Sequence[str],
        actions: Sequence[GroundAction],
        init: Iterable[int],
        goal: Iterable[int],
    ) -> None:
        """Create the task."""
        self.facts: Tuple[str, ...] = tuple(facts)
        self.actions: Tuple[GroundAction, ...] = tuple(actions)
        self.init: FrozenSet[int] = frozenset(init)
        self.goal: FrozenSet[int] = frozenset(goal)
        self.fact_index: Dict[str, int] = {name: i for i, name in enumerate(self.facts)}
        self.action_index: Dict[str, int] = {a.name: a.id for a in self.actions}
        achievers: List[List[int]] = [[] for _ in self.facts]
        for action in self.actions:
            for fact in action.add:
                achievers[fact].append(action.id)
        self.achievers: Tuple[Tuple[int, ...], ...] = tuple(tuple(a) for a in achievers)

    @property
    def initial_state(self) -> StripsState:
        """Return the initial state."""
        return tuple(sorted(self.init))

    def applicable(self, state: StripsState) -> List[GroundAction]:
        """Return the actions applicable in ``state`` in id order."""
        facts = frozenset(state)
        return [a for a in self.actions if a.pre <= facts]

    def transitions(self, state: StripsState) -> List[Tuple[GroundAction, StripsState]]:
        """Return every applicable action with the state it produces."""
        facts = frozenset(state)
        return [
            (action, tuple(sorted(action.apply(facts))))
            for action in self.actions
            if action.pre <= facts
        ]

    def successors(self, state: StripsState) -> List[StripsState]:
        """Return the distinct successor states."""
        seen = set()
        result = []
        for _, child in self.transitions(state):
            if child not in seen:
                seen.add(child)
                result.append(child)
        return result

    def goal_test(self, state: StripsState) -> bool:
        """Return True if every goal fact holds."""
        return self.goal <= frozenset(state)

    def rooted_at(self, state: Iterable[int]) -> "GroundTask":
        """Return the same task with another initial state."""
        return GroundTask(self.facts, self.actions, state, self.goal)

    def state_names(self, state: StripsState) -> List[str]:
        """Return the names of the facts of ``state``."""
        return [self.facts[i] for i in state]

    def describe(self) -> Dict[str, Any]:
        """Return the task sizes."""
        return {
            "type": "GroundTask",
            "facts": len(self.facts),
            "actions": len(self.actions),
            "goal": len(self.goal),
        }


def _ground_name(predicate: str, args: Iterable[str]) -> str:
    return "(" + " ".join((predicate, *args)) + ")"


def _objects_by_type(domain: Domain, objects: Dict[str, str]) -> Dict[str, List[str]]:
    types = ["object", *domain.types]
    return {
        t: sorted(name for name, kind in objects.items() if domain.is_subtype(kind, t))
        for t in types
    }


def _substitute(atom: Atom, binding: Dict[str, str]) -> str:
    return _ground_name(atom.predicate, (binding.get(arg, arg) for arg in atom.args))


def ground(
    domain: Domain, problem: Problem, max_actions: Optional[int] = DEFAULT_MAX_ACTIONS
) -> GroundTask:
    """Ground ``problem`` over every type-consistent binding.

    No reachability pruning is applied. Facts and actions are ordered
    lexicographically, so grounding the same inputs twice gives identical
    tables.

    Args:
        domain (Domain): The parsed domain.
        problem (Problem): The parsed problem.
        max_actions (int, optional): Largest number of candidate ground
            actions; None disables the cap.

    Raises:
        GroundingError: If the cap is exceeded or a ground action adds and
            deletes the same fact.
    """
    by_type = _objects_by_type(domain, problem.objects)

    fact_names = set()
    for predicate in domain.predicates.values():
        for args in itertools.product(*(by_type[t] for t in predicate.types)):
            fact_names.add(_ground_name(predicate.name, args))
    for atom in (*problem.init, *problem.goal):
        fact_names.add(str(atom))
    facts = sorted(fact_names)
    index = {name: i for i, name in enumerate(facts)}

    schemas = sorted(domain.actions, key=lambda s: s.name)
    candidates = sum(
        math.prod(len(by_type[t]) for _, t in schema.parameters) for schema in schemas
    )
    if max_actions is not None and candidates > max_actions:
        raise GroundingError(
            f"Grounding needs {candidates} actions, more than the cap of {max_actions}."
        )

    ground_actions = []
    for schema in schemas:
        variables = [v for v, _ in schema.parameters]
        for values in itertools.product(*(by_type[t] for _, t in schema.parameters)):
            binding = dict(zip(variables, values))
            pre_names = [_substitute(a, binding) for a in schema.precondition]
            if any(name not in index for name in pre_names):
                # a precondition no state can satisfy
                continue
            try:
                add = frozenset(index[_substitute(a, binding)] for a in schema.add_effects)
                delete = frozenset(index[_substitute(a, binding)] for a in schema.del_effects)
            except KeyError as exc:
                raise GroundingError(
                    f"Action '{schema.name}' has an effect {exc.args[0]} outside the typed facts."
                ) from None
            name = _ground_name(schema.name, values)
            if add & delete:
                clash = ", ".join(facts[i] for i in sorted(add & delete))
                raise GroundingError(f"Ground action {name} adds and deletes {clash}.")
            ground_actions.append((name, frozenset(index[n] for n in pre_names), add, delete))

    ground_actions.sort(key=lambda item: item[0])
    actions = [GroundAction(i, *item) for i, item in enumerate(ground_actions)]
    task = GroundTask(
        facts,
        actions,
        (index[str(a)] for a in problem.init),
        (index[str(a)] for a in problem.goal),
    )
    logger.info(
        "Grounded %s/%s: %d facts, %d actions.",
        domain.name, problem.name, len(task.facts), len(task.actions),
    )
    return task
