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

"""STRIPS planning tasks: parsing, grounding, FF heuristic and plans."""

from .grounding import (DEFAULT_MAX_ACTIONS, GroundAction, GroundTask,
                        StripsState, ground)
from .heuristic import FFHeuristic, RelaxedPlanResult, h_ff
from .parser import (ActionSchema, Atom, Domain, Predicate, Problem, parse,
                     parse_domain, parse_problem, read_sexpressions)
from .plans import (GOAL_UNSATISFIED, PRECONDITION_UNSATISFIED, PlanValidation,
                    format_plan, plan_from_path, read_plan, validate_plan)

__all__ = [
    'DEFAULT_MAX_ACTIONS', 'GOAL_UNSATISFIED', 'PRECONDITION_UNSATISFIED',
    'ActionSchema', 'Atom', 'Domain', 'FFHeuristic', 'GroundAction',
    'GroundTask', 'PlanValidation', 'Predicate', 'Problem', 'RelaxedPlanResult',
    'StripsState', 'format_plan', 'ground', 'h_ff', 'parse', 'parse_domain',
    'parse_problem', 'plan_from_path', 'read_plan', 'read_sexpressions',
    'validate_plan',
]
