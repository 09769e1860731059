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

"""Tests for the experiment manager: budgets, trials and planner runs."""

import logging
import math

import pytest

from escape_search.exceptions import SpecError
from escape_search.manager import (AlgorithmFactory, ExperimentManager,
                                   TrialSummary, load_config)
from escape_search.search import RngStream
from escape_search.synthetic import (DeadLeafTreeSpec, StarTaskSpec,
                                     TreeTaskSpec, UhrChainSpec)


def within(summary, expected, width=4):
    return abs(summary.mean() - expected) <= width * summary.se()


def separated(first, second, width=3):
    return first.mean() + width * first.se() < second.mean() - width * second.se()


def test_packaged_configuration():
    config = load_config()
    assert config["budget"]["rrw_max_generations"] == 10**8
    assert config["budget"]["rrw_max_walks"] == 10**6
    assert config["plan"]["seeds"] == 5


def test_walk_algorithms_get_the_default_budget(manager):
    budget = manager.budget_for(AlgorithmFactory.make("crrw:3"))
    assert (budget.max_generations, budget.max_walks) == (10**8, 10**6)
    budget = manager.budget_for(AlgorithmFactory.make("luby:1"), max_walks=7)
    assert (budget.max_generations, budget.max_walks) == (10**8, 7)


def test_brfs_is_unlimited_by_default(manager):
    assert not manager.budget_for(AlgorithmFactory.make("brfs")).is_finite
    assert manager.budget_for(AlgorithmFactory.make("ehc:brfs"), 50).max_generations == 50


def test_brfs_mean_matches_the_expectation(manager):
    spec = TreeTaskSpec(3, 3, g=2)
    summary = manager.simulate(spec, "brfs", trials=3000, seed=1, placement="per_trial")
    assert summary.solved == 3000
    assert within(summary, 22 + 1 / 3)
    assert summary.rows["goal_tests"].min() >= 14
    assert summary.rows["goal_tests"].max() <= 40


def test_rrw_with_every_goal_state_a_goal(manager):
    summary = manager.simulate(TreeTaskSpec(4, 6, g=4096), "crrw:6", trials=50)
    assert (summary.rows["goal_tests"] == 7).all()
    assert summary.mean() == 7
    assert summary.se() == 0


def test_depth_one_brfs_beats_rrw(manager):
    spec = StarTaskSpec(20, g=5)
    brfs = manager.simulate(spec, "brfs", trials=4000, seed=2, placement="per_trial")
    walks = manager.simulate(spec, "crrw:1", trials=4000, seed=2, placement="per_trial")
    assert within(brfs, 4.5)
    assert within(walks, 5)
    assert brfs.mean() + 3 * brfs.se() < walks.mean() - 3 * walks.se()


def test_goal_crossover_on_a_small_tree(manager):
    # b=2, d*=4, l=4: the simple crossover is 64/15, so RRW wins from g=5 on
    options = {"trials": 3000, "seed": 3, "placement": "per_trial"}
    few_brfs = manager.simulate(TreeTaskSpec(2, 4, g=1), "brfs", **options)
    few_rrw = manager.simulate(TreeTaskSpec(2, 4, g=1), "crrw:4", **options)
    assert separated(few_brfs, few_rrw)
    many_brfs = manager.simulate(TreeTaskSpec(2, 4, g=5), "brfs", **options)
    many_rrw = manager.simulate(TreeTaskSpec(2, 4, g=5), "crrw:4", **options)
    assert separated(many_rrw, many_brfs)


def test_unsolved_trials_are_counted_but_not_averaged(manager):
    summary = manager.simulate(TreeTaskSpec(2, 3), "crrw:2", trials=4, max_walks=5)
    assert summary.solved == 0
    assert not summary.rows["solved"].any()
    assert (summary.rows["status"] == "BudgetExceeded").all()
    assert math.isnan(summary.mean())
    assert summary.to_dict()["aggregates"]["goal_tests"]["mean"] is None


def test_rows_are_sorted_and_seeded(manager):
    summary = manager.simulate(TreeTaskSpec(2, 4, g=2), "luby:1", trials=12, seed=9)
    assert list(summary.rows["trial"]) == list(range(12))
    assert (summary.rows["seed"] == 9).all()
    again = manager.simulate(TreeTaskSpec(2, 4, g=2), "luby:1", trials=12, seed=9)
    assert summary.rows.equals(again.rows)


def test_worker_count_does_not_change_the_rows(manager):
    spec = TreeTaskSpec(3, 3, g=1)
    single = manager.simulate(spec, "crrw:3", trials=30, seed=4, placement="per_trial")
    parallel = manager.simulate(
        spec, "crrw:3", trials=30, seed=4, jobs=2, placement="per_trial"
    )
    assert single.rows.equals(parallel.rows)
    assert single.footer() == parallel.footer()


def test_summary_from_unordered_rows():
    rows = [
        {"trial": i, "seed": 0, "goal_tests": 10 + i, "generations": 9 + i, "walks": 0,
         "heuristic_evals": 0, "escape_searches": 0, "solved": True,
         "solution_length": 2, "status": "Solved"}
        for i in (2, 0, 1)
    ]
    summary = TrialSummary.from_rows(rows)
    assert list(summary.rows["trial"]) == [0, 1, 2]
    assert summary.mean("goal_tests") == 11
    assert summary.aggregates["goal_tests"]["std"] == 1
    footer = summary.footer()
    assert footer[0] == "#agg,solved,3,3"
    assert footer[1] == f"#agg,goal_tests,11,1,{1 / math.sqrt(3):.6g}"


def test_ehc_on_uhr_chains(manager):
    spec = UhrChainSpec.uniform(3, 2, 3, x=1, seed=5)
    summary = manager.simulate(spec, "ehc:brfs", trials=20)
    assert summary.solved == 20
    assert (summary.rows["escape_searches"] == 3).all()
    walks = manager.simulate(spec, "ehc:crrw:3", trials=20, max_generations=10**7)
    assert walks.solved == 20


def uhr_chains(count=100):
    for index in range(count):
        rng = RngStream(2024, index)
        k = 1 + rng.below(5)
        branching = [1 + rng.below(3) for _ in range(k)]
        exit_depth = [1 + rng.below(3) for _ in range(k)]
        exit_count = [1 + rng.below(b**e) for b, e in zip(branching, exit_depth)]
        yield UhrChainSpec(k, branching, exit_depth, exit_count, seed=index)


def test_ehc_solves_seeded_uhr_chains(manager):
    for index, spec in enumerate(uhr_chains()):
        summary = manager.simulate(spec, "ehc:brfs", trials=1, seed=index)
        assert summary.solved == 1
        assert summary.rows.loc[0, "escape_searches"] == spec.k
        for descriptor in (f"ehc:crrw:{spec.max_exit_depth}", "ehc:luby:1"):
            summary = manager.simulate(
                spec, descriptor, trials=1, seed=index, max_generations=10**7
            )
            assert summary.solved == 1, (spec, descriptor)
            assert summary.rows.loc[0, "escape_searches"] == spec.k


def test_ehc_needs_a_uhr_chain(manager):
    with pytest.raises(SpecError):
        manager.simulate(TreeTaskSpec(2, 2), "ehc:brfs", trials=1)


@pytest.mark.parametrize(
    "options", [{"trials": 0}, {"jobs": 0}, {"placement": "shuffled"}]
)
def test_simulate_rejects_bad_options(manager, options):
    with pytest.raises(SpecError):
        manager.simulate(TreeTaskSpec(2, 2), "brfs", **options)


def test_precheck_warns_about_small_budgets(manager, caplog):
    with caplog.at_level(logging.WARNING, logger="escape_search"):
        manager.simulate(TreeTaskSpec(4, 6), "crrw:6", trials=1, max_generations=1000)
    assert "expected-runtime bound" in caplog.text


def test_analytic_bound_on_dead_leaf_trees(manager):
    spec = DeadLeafTreeSpec(2, 3, g=1, dead_prob=0.05, structure_seed=3)
    bound = manager.analytic_bound(spec, AlgorithmFactory.make("crrw:3"))
    assert bound is not None and bound > 9
    assert manager.analytic_bound(spec, AlgorithmFactory.make("brfs")) <= 15
    summary = manager.simulate(spec, "brfs", trials=20)
    assert summary.solved == 20


def test_state_limit_from_configuration():
    small = ExperimentManager({"synthetic": {"max_states": 100}})
    with pytest.raises(SpecError):
        small.simulate(TreeTaskSpec(2, 7), "brfs", trials=1)


def test_plan_gripper_with_brfs_escapes(manager, gripper_task):
    reports = manager.plan(gripper_task, "ehc:brfs", seeds=[0, 1, 2])
    assert [r.seed for r in reports] == [0, 1, 2]
    for report in reports:
        assert report.status == "Solved"
        assert report.valid
        assert report.plan_length == len(report.plan) >= 5
        assert report.escape_searches >= 1


@pytest.mark.parametrize("descriptor", ["ehc:crrw:4", "ehc:luby:1"])
def test_plan_gripper_with_random_walk_escapes(manager, gripper_task, descriptor):
    reports = manager.plan(gripper_task, descriptor)
    assert len(reports) == 5
    assert all(r.solved and r.valid for r in reports)
    again = manager.plan(gripper_task, descriptor)
    assert [r.to_dict() for r in reports] == [r.to_dict() for r in again]


def test_plan_reports_distinguish_failures(manager, token_task):
    (report,) = manager.plan(token_task, "ehc:brfs", seeds=[0])
    assert report.status == "NoSolution"
    assert not report.solved and report.plan == []
    (report,) = manager.plan(token_task, "ehc:crrw:2", seeds=[0], max_walks=50)
    assert report.status == "BudgetExceeded"
    assert "wall_time" not in report.to_dict()
    assert "wall_time" in report.to_dict(include_time=True)


@pytest.mark.slow
@pytest.mark.parametrize("goals, expected", [(1, 27), (2, 22 + 1 / 3), (5, 17 + 2 / 3)])
def test_brfs_expectation_at_scale(manager, goals, expected):
    summary = manager.simulate(
        TreeTaskSpec(3, 3, g=goals), "brfs", trials=100_000, seed=0, placement="per_trial"
    )
    assert within(summary, expected, width=3)


@pytest.mark.slow
def test_rrw_bound_at_scale(manager):
    summary = manager.simulate(
        TreeTaskSpec(4, 6, g=64), "crrw:6", trials=100_000, seed=0, placement="per_trial"
    )
    assert summary.mean() <= 385 + 3 * summary.se()
    assert abs(summary.mean("walks") - 64) <= 3 * summary.se("walks")


@pytest.mark.slow
@pytest.mark.parametrize("goals", [19, 16])
def test_rrw_beats_brfs_above_the_goal_crossover(manager, goals):
    options = {"trials": 100_000, "seed": 0, "placement": "per_trial", "jobs": 4}
    brfs = manager.simulate(TreeTaskSpec(4, 6, g=goals), "brfs", **options)
    rrw = manager.simulate(TreeTaskSpec(4, 6, g=goals), "crrw:6", **options)
    assert rrw.solved == brfs.solved == 100_000
    assert rrw.mean() <= brfs.mean()


@pytest.mark.slow
def test_brfs_beats_rrw_with_a_single_goal(manager):
    options = {"trials": 10_000, "seed": 0, "placement": "per_trial", "jobs": 4}
    brfs = manager.simulate(TreeTaskSpec(4, 6, g=1), "brfs", **options)
    rrw = manager.simulate(TreeTaskSpec(4, 6, g=1), "crrw:6", **options)
    assert separated(brfs, rrw)
