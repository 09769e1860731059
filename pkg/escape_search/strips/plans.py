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

"""Plan extraction, validation and plan files."""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import pyparsing as pp

from ..exceptions import PathError, PDDLError
from ..search import Path
from .grounding import GroundTask
from .parser import Token, read_sexpressions

PRECONDITION_UNSATISFIED = "precondition-unsatisfied"
GOAL_UNSATISFIED = "goal-unsatisfied"


@dataclass(frozen=True)
class PlanValidation:
    """Result of replaying a plan.

    Attributes:
        valid (bool): True iff every action applies and the goal holds at the end.
        failed_step (int, optional): 1-based index of the first inapplicable action.
        reason (str, optional): ``precondition-unsatisfied`` or ``goal-unsatisfied``.
    """

    valid: bool
    failed_step: Optional[int] = None
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        """Return :attr:`valid`."""
        return self.valid


def validate_plan(task: GroundTask, plan: Sequence[int]) -> PlanValidation:
    """Replay ``plan`` (action ids) from the initial state."""
    facts = task.init
    for step, action_id in enumerate(plan, start=1):
        if not 0 <= action_id < len(task.actions):
            return PlanValidation(False, step, PRECONDITION_UNSATISFIED)
        action = task.actions[action_id]
        if not action.applicable(facts):
            return PlanValidation(False, step, PRECONDITION_UNSATISFIED)
        facts = action.apply(facts)
    if not task.goal <= facts:
        return PlanValidation(False, None, GOAL_UNSATISFIED)
    return PlanValidation(True)


def plan_from_path(task: GroundTask, path: Path) -> List[int]:
    """Return the action ids realizing every transition of ``path``.

    The lowest-id action producing the next state is used.

    Raises:
        PathError: If some transition is not produced by any action.
    """
    plan = []
    for state, following in zip(path.states, path.states[1:]):
        for action, child in task.transitions(state):
            if child == following:
                plan.append(action.id)
                break
        else:
            raise PathError(f"No action leads from {state!r} to {following!r}.")
    return plan


def format_plan(task: GroundTask, plan: Sequence[int]) -> str:
    """Return the plan file text, one ``(name obj ...)`` per line."""
    return "".join(f"{task.actions[a].name}\n" for a in plan)


def read_plan(task: GroundTask, text: str) -> List[int]:
    """Read a plan file into action ids.

    Lines starting with ``;`` are comments.

    Raises:
        PDDLError: On syntax errors or unknown actions, with their position.
    """
    plan = []
    for entry in read_sexpressions(text):
        line, column = pp.lineno(entry.loc, text), pp.col(entry.loc, text)
        if not entry.items or not all(isinstance(item, Token) for item in entry.items):
            raise PDDLError("expected (action obj ...)", line, column)
        name = "(" + " ".join(item.text for item in entry.items) + ")"
        try:
            plan.append(task.action_index[name])
        except KeyError:
            raise PDDLError(f"unknown action {name}", line, column) from None
    return plan
