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

"""Facade over the analysis, the experiment manager and the planner."""

from typing import Any, Callable, Dict, List, Tuple

import pandas as pd

from .analysis import (AnalysisInput, brfs_bounds, crossover_curves,
                       ehc_brfs_expected, ehc_crrw_upper, expected_brfs,
                       figure1a, figure1b, figure1c, goal_crossover_accurate,
                       goal_crossover_simple, min_success_prob_for_crossover,
                       rrw_upper)
from .exceptions import SpecError
from .manager import ExperimentManager, PlanReport, TrialSummary
from .strips import GroundTask, PlanValidation, read_plan, validate_plan
from .synthetic import UhrChainSpec, spec_from_dict
from .utils import Utils


def _bounds(**params: Any) -> pd.DataFrame:
    inp = AnalysisInput.from_dict(params)
    lower, upper = brfs_bounds(inp)
    simple = goal_crossover_simple(inp.size_below, inp.size_at, inp.walk_len, inp.reach_prob)
    accurate = goal_crossover_accurate(inp.size_below, inp.size_at, inp.walk_len, inp.reach_prob)
    return pd.DataFrame([{
        "goals": inp.goals,
        "walk_len": inp.walk_len,
        "p_g": inp.p_g,
        "brfs_expected": expected_brfs(inp),
        "brfs_lower": lower,
        "brfs_upper": upper,
        "rrw_upper": rrw_upper(inp),
        "min_success_prob": min_success_prob_for_crossover(inp),
        "crossover_simple": simple.threshold,
        "crossover_accurate": accurate.threshold,
        "minimal_goals": accurate.minimal_goals,
    }])


def _ehc(spec: Dict[str, Any], walk_len: int = 0) -> pd.DataFrame:
    chain = spec_from_dict(spec)
    if not isinstance(chain, UhrChainSpec):
        raise SpecError("The ehc figure needs a uhr_chain spec.")
    row: Dict[str, Any] = {"k": chain.k, "ehc_brfs_expected": ehc_brfs_expected(chain)}
    if walk_len:
        row["walk_len"] = walk_len
        row["ehc_crrw_upper"] = ehc_crrw_upper(chain, walk_len)
    return pd.DataFrame([row])


class EscapeLab:
    """Escape Search entry points, one per command line subcommand."""

    manager = ExperimentManager()

    figures: Dict[str, Callable[..., pd.DataFrame]] = {
        "1a": figure1a,
        "1b": figure1b,
        "1c": figure1c,
        "crossover": crossover_curves,
        "bounds": _bounds,
        "ehc": _ehc,
    }

    @classmethod
    def analyze(cls, params: Dict[str, Any]) -> pd.DataFrame:
        """Return the table selected by the ``figure`` key of ``params``.

        The remaining keys are passed to the table builder; JSON lists become
        tuples and ``"n/d"`` strings are accepted wherever rationals are.
        """
        params = dict(params)
        name = str(params.pop("figure", "1a"))
        try:
            builder = cls.figures[name]
        except KeyError:
            raise SpecError(
                f"Unknown figure '{name}'; expected one of {sorted(cls.figures)}."
            ) from None
        arguments = {
            key: tuple(value) if isinstance(value, list) else value
            for key, value in params.items()
        }
        try:
            return builder(**arguments)
        except TypeError as e:
            raise SpecError(f"Invalid parameters for figure '{name}': {e}") from e

    @classmethod
    def simulate(cls, spec: Dict[str, Any], descriptor: str, **options: Any) -> TrialSummary:
        """Run seeded trials; see :meth:`ExperimentManager.simulate`."""
        return cls.manager.simulate(spec_from_dict(spec), descriptor, **options)

    @classmethod
    def load_task(cls, domain_path: str, problem_path: str) -> GroundTask:
        """Parse and ground the task of two PDDL files."""
        return cls.manager.ground(Utils.read_text(domain_path), Utils.read_text(problem_path))

    @classmethod
    def plan(
        cls, domain_path: str, problem_path: str, descriptor: str, **options: Any
    ) -> List[PlanReport]:
        """Run a planner once per seed; see :meth:`ExperimentManager.plan`."""
        return cls.manager.plan(cls.load_task(domain_path, problem_path), descriptor, **options)

    @classmethod
    def validate(
        cls, domain_path: str, problem_path: str, plan_path: str
    ) -> Tuple[PlanValidation, List[int]]:
        """Replay a plan file on a task.

        Raises:
            PDDLError: If a file cannot be read as PDDL or as a plan.
        """
        task = cls.load_task(domain_path, problem_path)
        plan = read_plan(task, Utils.read_text(plan_path))
        return validate_plan(task, plan), plan

    def __repr__(self) -> str:
        """EscapeLab representation."""
        return f"<EscapeLab figures={sorted(self.figures)}>"
