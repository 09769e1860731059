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

"""Configuration, seeded trials and plan runs."""

import importlib.resources
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional

import pandas as pd
import yaml

from ..algorithms import (BreadthFirstSearch, ConstantDepth,
                          RestartingRandomWalk, SearchAlgorithm)
from ..analysis import (PLACEMENT_STREAM_OFFSET, AnalysisInput, brfs_bounds,
                        rrw_upper)
from ..exceptions import NodeCapExceeded, SpecError
from ..search import Budget, RngStream, RunStats, SearchTask, Termination
from ..strips import (FFHeuristic, GroundTask, format_plan, ground, parse,
                      plan_from_path, validate_plan)
from ..synthetic import (DeadLeafTreeSpec, StarTaskSpec, TaskSpec,
                         TreeTaskSpec, UhrChainSpec, build_task, census,
                         exact_reach_prob, tree_size)
from .algorithm_factory import AlgorithmFactory

logger = logging.getLogger(__name__)

PLACEMENTS = ("fixed", "per_trial")

TRIAL_COLUMNS = [
    "trial", "seed", "goal_tests", "generations", "walks", "heuristic_evals",
    "escape_searches", "solved", "solution_length", "status",
]

AGGREGATED = ["goal_tests", "generations", "walks", "heuristic_evals"]


def load_config() -> Dict[str, Any]:
    """Load the packaged ``config/config.yaml``.

    Raises:
        RuntimeError: If the file is missing or is not valid YAML.
    """
    try:
        with (
            importlib.resources.files("escape_search")
            .joinpath("config/config.yaml")
            .open("r") as file
        ):
            config = yaml.safe_load(file)
    except FileNotFoundError:
        raise RuntimeError("Configuration file config.yaml not found")
    except yaml.YAMLError as e:
        raise RuntimeError(f"Error loading YAML: {e}")
    return config or {}


@dataclass(frozen=True)
class TrialJob:
    """Everything a worker process needs to run one trial."""

    index: int
    seed: int
    spec: TaskSpec
    descriptor: str
    budget: Budget
    placement: str
    node_cap: int


@lru_cache(maxsize=8)
def _fixed_task(spec: TaskSpec, node_cap: int):
    return build_task(spec, node_cap=node_cap)


def run_trial(job: TrialJob) -> Dict[str, Any]:
    """Run one seeded trial and return its row."""
    if job.placement == "per_trial":
        built = build_task(
            job.spec, RngStream(job.seed, PLACEMENT_STREAM_OFFSET + job.index), job.node_cap
        )
    else:
        built = _fixed_task(job.spec, job.node_cap)
    algorithm = AlgorithmFactory.make(job.descriptor)
    if algorithm.requires_heuristic and built.heuristic is None:
        raise SpecError(f"{algorithm.name} needs a heuristic; use a uhr_chain spec.")

    stats = RunStats()
    algorithm.solve(built.task, RngStream(job.seed, job.index), job.budget, stats, built.heuristic)
    return {
        "trial": job.index,
        "seed": job.seed,
        "goal_tests": stats.goal_tests,
        "generations": stats.generations,
        "walks": stats.walks_started,
        "heuristic_evals": stats.heuristic_evals,
        "escape_searches": stats.escape_searches,
        "solved": stats.solved,
        "solution_length": stats.solution_length,
        "status": stats.terminated.value,
    }


@dataclass
class TrialSummary:
    """Per-trial rows and their aggregates.

    Aggregates are computed over the solved trials: mean, sample standard
    deviation and standard error of every counter, plus the solved count.
    """

    rows: pd.DataFrame
    aggregates: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, rows: List[Dict[str, Any]]) -> "TrialSummary":
        """Build the summary from rows in any order."""
        frame = pd.DataFrame(sorted(rows, key=lambda r: r["trial"]), columns=TRIAL_COLUMNS)
        frame["solution_length"] = frame["solution_length"].astype("Int64")
        solved = frame[frame["solved"]]
        aggregates: Dict[str, Any] = {"trials": len(frame), "solved": len(solved)}
        for column in AGGREGATED:
            values = solved[column].astype(float)
            n = len(values)
            mean = float(values.mean()) if n else math.nan
            std = float(values.std(ddof=1)) if n > 1 else 0.0
            aggregates[column] = {
                "mean": mean,
                "std": std,
                "se": std / math.sqrt(n) if n else math.nan,
            }
        return cls(frame, aggregates)

    def mean(self, column: str = "goal_tests") -> float:
        """Return the mean of ``column`` over the solved trials."""
        return self.aggregates[column]["mean"]

    def se(self, column: str = "goal_tests") -> float:
        """Return the standard error of ``column`` over the solved trials."""
        return self.aggregates[column]["se"]

    @property
    def solved(self) -> int:
        """Return the number of solved trials."""
        return self.aggregates["solved"]

    def footer(self, digits: int = 6) -> List[str]:
        """Return the ``#agg,`` lines closing the CSV output."""
        lines = [f"#agg,solved,{self.aggregates['solved']},{self.aggregates['trials']}"]
        for column in AGGREGATED:
            values = self.aggregates[column]
            rendered = ",".join(
                f"{values[key]:.{digits}g}" for key in ("mean", "std", "se")
            )
            lines.append(f"#agg,{column},{rendered}")
        return lines

    def to_dict(self) -> Dict[str, Any]:
        """Return rows and aggregates as plain JSON values."""
        rows = self.rows.astype(object).where(self.rows.notna(), None)
        aggregates = {
            key: (
                {k: None if math.isnan(v) else v for k, v in value.items()}
                if isinstance(value, dict) else value
            )
            for key, value in self.aggregates.items()
        }
        return {"rows": rows.to_dict(orient="records"), "aggregates": aggregates}


@dataclass
class PlanReport:
    """Outcome of one seeded planner run."""

    seed: int
    algorithm: str
    status: str
    solved: bool
    plan: List[str]
    plan_length: Optional[int]
    heuristic_evals: int
    goal_tests: int
    generations: int
    escape_searches: int
    walks: int
    valid: Optional[bool]
    wall_time: float = 0.0

    def to_dict(self, include_time: bool = False) -> Dict[str, Any]:
        """Return the report; the wall time is left out unless asked for."""
        data = asdict(self)
        if not include_time:
            data.pop("wall_time")
        return data


class ExperimentManager:
    """Runs experiments with the defaults of the configuration file."""

    def __init__(self, config: Optional[Dict[str, Any]] = None) -> None:
        """Initializes the manager.

        Args:
            config (Dict[str, Any], optional): Configuration overriding the
                packaged ``config.yaml``.
        """
        self._config = config if config is not None else load_config()

    def setting(self, section: str, key: str, default: Any = None) -> Any:
        """Return ``config[section][key]``."""
        return (self._config.get(section) or {}).get(key, default)

    @property
    def node_cap(self) -> int:
        """Return the cap on exhaustively enumerated states."""
        return int(self.setting("synthetic", "node_cap", 5_000_000))

    def budget_for(
        self,
        algorithm: SearchAlgorithm,
        max_generations: Optional[int] = None,
        max_walks: Optional[int] = None,
    ) -> Budget:
        """Return the budget of a run.

        Algorithms sampling random walks get the configured limits unless
        overridden; the others are only limited when asked.
        """
        if algorithm.uses_walks:
            if max_generations is None:
                max_generations = int(self.setting("budget", "rrw_max_generations"))
            if max_walks is None:
                max_walks = int(self.setting("budget", "rrw_max_walks"))
        return Budget(max_generations, max_walks)

    def check_size(self, spec: TaskSpec) -> None:
        """Reject specs with more states than ``synthetic.max_states``."""
        limit = int(self.setting("synthetic", "max_states", 2**62))
        if isinstance(spec, TreeTaskSpec):
            states = tree_size(spec.b, spec.max_depth)
        elif isinstance(spec, DeadLeafTreeSpec):
            states = tree_size(spec.b, spec.dstar)
        elif isinstance(spec, StarTaskSpec):
            states = spec.n + 1
        else:
            states = sum(tree_size(b, e) for b, e in zip(spec.branching, spec.exit_depth))
        if states > limit:
            raise SpecError(f"The task has {states} states, more than the limit of {limit}.")

    def analytic_bound(self, spec: TaskSpec, algorithm: SearchAlgorithm) -> Optional[float]:
        """Return the closed-form runtime bound of ``algorithm`` on ``spec``, if one applies."""
        if isinstance(spec, (TreeTaskSpec, StarTaskSpec)):
            size_below, size_at = spec.size_below, spec.size_at
            reach_prob = 1
        elif isinstance(spec, DeadLeafTreeSpec):
            try:
                task = _fixed_task(spec, self.node_cap).task
                levels = census(task, spec.dstar, self.node_cap)
                reach_prob = exact_reach_prob(task, self.node_cap)
            except NodeCapExceeded:
                return None
            size_below, size_at = levels.size_below, levels.size_at
        else:
            return None

        if isinstance(algorithm, BreadthFirstSearch):
            return float(brfs_bounds(AnalysisInput(size_below, size_at, spec.g, 1))[1])
        if isinstance(algorithm, RestartingRandomWalk) and isinstance(
            algorithm.policy, ConstantDepth
        ):
            walk_len = algorithm.policy.length
            inp = AnalysisInput(size_below, size_at, spec.g, walk_len, reach_prob)
            if walk_len < spec.dstar:
                inp = inp.with_success_prob(0)
            return float(rrw_upper(inp))
        return None

    def precheck(self, spec: TaskSpec, algorithm: SearchAlgorithm, budget: Budget) -> None:
        """Warn when the expected-runtime bound approaches the generation budget."""
        if budget.max_generations is None or not algorithm.uses_walks:
            return
        bound = self.analytic_bound(spec, algorithm)
        fraction = float(self.setting("budget", "precheck_fraction", 0.01))
        if bound is not None and bound > fraction * budget.max_generations:
            logger.warning(
                "The expected-runtime bound of %s (%.6g) exceeds %g of the budget of %d "
                "generations; trials may end with BudgetExceeded.",
                algorithm.name, bound, fraction, budget.max_generations,
            )

    def simulate(
        self,
        spec: TaskSpec,
        descriptor: str,
        trials: Optional[int] = None,
        seed: int = 0,
        max_generations: Optional[int] = None,
        max_walks: Optional[int] = None,
        jobs: Optional[int] = None,
        placement: Optional[str] = None,
    ) -> TrialSummary:
        """Run ``trials`` seeded trials of an algorithm on a synthetic task.

        Trial ``i`` samples from ``RngStream(seed, i)``; with ``per_trial``
        placement its goals come from ``RngStream(seed, 2^32 + i)``. Rows are
        sorted by trial index, so the worker count never changes the output.
        """
        algorithm = AlgorithmFactory.make(descriptor)
        trials = int(trials if trials is not None else self.setting("simulate", "trials", 1000))
        jobs = int(jobs if jobs is not None else self.setting("simulate", "jobs", 1))
        placement = placement or self.setting("simulate", "placement", "fixed")
        if trials < 1:
            raise SpecError(f"At least one trial is needed, got {trials}.")
        if jobs < 1:
            raise SpecError(f"At least one job is needed, got {jobs}.")
        if placement not in PLACEMENTS:
            raise SpecError(f"Unknown placement '{placement}'; expected one of {PLACEMENTS}.")
        if algorithm.requires_heuristic and not isinstance(spec, UhrChainSpec):
            raise SpecError(f"{algorithm.name} needs a heuristic; use a uhr_chain spec.")
        self.check_size(spec)
        budget = self.budget_for(algorithm, max_generations, max_walks)
        self.precheck(spec, algorithm, budget)

        work = [
            TrialJob(i, seed, spec, descriptor, budget, placement, self.node_cap)
            for i in range(trials)
        ]
        logger.info("Running %d trials of %s with %d jobs.", trials, algorithm.name, jobs)
        if jobs == 1:
            rows = [run_trial(job) for job in work]
        else:
            chunksize = max(1, trials // (jobs * 4))
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                rows = list(executor.map(run_trial, work, chunksize=chunksize))
        return TrialSummary.from_rows(rows)

    def ground(self, domain_text: str, problem_text: str) -> GroundTask:
        """Parse and ground a STRIPS task with the configured cap."""
        domain, problem = parse(domain_text, problem_text)
        return ground(domain, problem, int(self.setting("grounding", "max_actions", 1_000_000)))

    def plan(
        self,
        task: GroundTask,
        descriptor: str,
        seeds: Optional[List[int]] = None,
        max_generations: Optional[int] = None,
        max_walks: Optional[int] = None,
    ) -> List[PlanReport]:
        """Run an algorithm on a ground task once per seed.

        A run is reported as solved only when its plan validates.
        """
        algorithm = AlgorithmFactory.make(descriptor)
        if seeds is None:
            seeds = list(range(int(self.setting("plan", "seeds", 5))))
        heuristic = FFHeuristic(task)
        reports = []
        for seed in seeds:
            budget = self.budget_for(algorithm, max_generations, max_walks)
            reports.append(self._plan_once(task, algorithm, heuristic, seed, budget))
        return reports

    def _plan_once(
        self,
        task: SearchTask,
        algorithm: SearchAlgorithm,
        heuristic: FFHeuristic,
        seed: int,
        budget: Budget,
    ) -> PlanReport:
        stats = RunStats()
        started = time.perf_counter()
        result = algorithm.solve(task, RngStream(seed), budget, stats, heuristic)
        elapsed = time.perf_counter() - started

        plan: List[str] = []
        valid = None
        if result.solved:
            action_ids = plan_from_path(task, result.path)
            valid = validate_plan(task, action_ids).valid
            plan = format_plan(task, action_ids).splitlines()
            if not valid:
                logger.error("Seed %d produced a plan that does not validate.", seed)
        status = {
            Termination.SOLVED: "Solved",
            Termination.EXHAUSTED: "NoSolution",
            Termination.BUDGET_EXCEEDED: "BudgetExceeded",
        }[result.status]
        if result.solved and not valid:
            status = "InvalidPlan"
        return PlanReport(
            seed=seed,
            algorithm=algorithm.name,
            status=status,
            solved=bool(result.solved and valid),
            plan=plan,
            plan_length=len(plan) if result.solved else None,
            heuristic_evals=stats.heuristic_evals,
            goal_tests=stats.goal_tests,
            generations=stats.generations,
            escape_searches=stats.escape_searches,
            walks=stats.walks_started,
            valid=valid,
            wall_time=elapsed,
        )

    def __repr__(self) -> str:
        """Instance representation for debugging."""
        return f"<ExperimentManager sections={sorted(self._config)}>"
