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

"""Tests for BrFS, random walks, RRW, Luby and EHC."""

import pytest

from escape_search.algorithms import (BreadthFirstSearch, ConstantDepth,
                                      EnforcedHillClimbing, EscapeStrategy,
                                      LubyDepth, RestartingRandomWalk,
                                      WalkOutcome, brfs, ehc, luby,
                                      random_walk, rrw)
from escape_search.exceptions import SpecError
from escape_search.manager import AlgorithmFactory
from escape_search.search import Budget, RngStream, RunStats, Termination
from escape_search.strips import FFHeuristic
from escape_search.synthetic import (StarTaskSpec, TreeTaskSpec, UhrChainSpec,
                                     build_task)


def luby_table(size):
    sequence = [1]
    while len(sequence) < size:
        sequence = sequence + sequence + [2 * sequence[-1]]
    return sequence[:size]


def test_luby_first_values():
    assert [luby(i) for i in range(1, 16)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


def test_luby_matches_doubling_construction():
    assert [luby(i) for i in range(1, 1024)] == luby_table(1023)


def test_luby_starts_at_one():
    with pytest.raises(SpecError):
        luby(0)


def test_depth_policies():
    assert ConstantDepth(4).next_depth(10) == 4
    assert [LubyDepth(3).next_depth(i) for i in range(1, 4)] == [3, 3, 6]
    with pytest.raises(SpecError):
        ConstantDepth(0)


def test_brfs_counts_one_goal_test_per_generation():
    task = build_task(TreeTaskSpec(3, 3, g=2, goal_seed=4)).task
    stats = RunStats()
    result = brfs(task, RngStream(0), stats=stats)
    assert result.solved
    assert stats.goal_tests == stats.generations + 1
    assert result.path.length == 3
    assert result.path.is_valid(task)
    assert task.goal_test(result.path.last)
    assert 14 <= stats.goal_tests <= 13 + 27


@pytest.mark.parametrize("b", [1, 2, 3])
@pytest.mark.parametrize("dstar", [1, 2, 3, 4])
def test_brfs_paths_have_the_goal_depth(b, dstar):
    size_at = b**dstar
    for seed in range(25):
        spec = TreeTaskSpec(b, dstar, g=1 + seed % size_at, goal_seed=seed)
        task = build_task(spec).task
        stats = RunStats()
        result = brfs(task, RngStream(seed), stats=stats)
        assert result.solved
        assert result.path.length == dstar
        assert result.path.is_valid(task)
        assert spec.size_below + 1 <= stats.goal_tests <= spec.size_below + size_at


def test_brfs_initial_goal(line_task):
    stats = RunStats()
    result = brfs(line_task(3, goal=0), RngStream(0), stats=stats)
    assert result.solved and result.path.length == 0
    assert stats.goal_tests == 1


def test_brfs_exhausts_a_task_without_goals(line_task):
    stats = RunStats()
    result = brfs(line_task(4), RngStream(0), stats=stats)
    assert result.status is Termination.EXHAUSTED
    assert stats.generations == 4
    assert stats.terminated is Termination.EXHAUSTED


def test_brfs_stops_at_the_generation_budget(line_task):
    stats = RunStats()
    result = brfs(line_task(10, goal=10), RngStream(0), Budget(max_generations=3), stats)
    assert result.status is Termination.BUDGET_EXCEEDED
    assert stats.generations == 3


def test_brfs_is_reproducible():
    task = build_task(TreeTaskSpec(2, 5, g=3)).task
    runs = []
    for _ in range(2):
        stats = RunStats()
        brfs(task, RngStream(11, 3), stats=stats)
        runs.append(stats)
    assert runs[0] == runs[1]


def test_random_walk_reports_dead_ends(line_task):
    walk = random_walk(line_task(2), 5, RngStream(0))
    assert walk.outcome is WalkOutcome.DEAD_END
    assert walk.path.length == 2


def test_random_walk_reports_exhausted_depth(line_task):
    stats = RunStats()
    walk = random_walk(line_task(9), 3, RngStream(0), stats)
    assert walk.outcome is WalkOutcome.DEPTH_EXHAUSTED
    assert stats.goal_tests == stats.generations == 3


def test_random_walk_stops_at_goals(line_task):
    walk = random_walk(line_task(9, goal=2), 5, RngStream(0))
    assert walk.outcome is WalkOutcome.SUCCESS
    assert walk.path.last == 2


def test_rrw_with_every_goal_state_a_goal():
    task = build_task(TreeTaskSpec(4, 6, g=4096)).task
    for seed in range(5):
        stats = RunStats()
        result = rrw(task, ConstantDepth(6), RngStream(seed), stats=stats)
        assert result.solved
        assert stats.goal_tests == 7
        assert stats.walks_started == 1


def test_rrw_too_short_walks_hit_the_budget():
    task = build_task(TreeTaskSpec(2, 4)).task
    stats = RunStats()
    result = rrw(task, ConstantDepth(3), RngStream(0), Budget(max_walks=20), stats)
    assert result.status is Termination.BUDGET_EXCEEDED
    assert stats.walks_started == 20
    assert stats.generations == 60
    assert stats.solution_length is None


def test_rrw_path_is_valid():
    task = build_task(StarTaskSpec(20, g=5)).task
    result = rrw(task, LubyDepth(1), RngStream(3))
    assert result.solved
    assert result.path.is_valid(task)
    assert result.path.length == 1


def test_ehc_brfs_runs_one_escape_per_uhr():
    built = build_task(UhrChainSpec(3, [2, 3, 2], [2, 1, 3], [1, 2, 1], seed=9))
    stats = RunStats()
    result = ehc(built.task, built.heuristic, EscapeStrategy.brfs(), RngStream(0), stats=stats)
    assert result.solved
    assert stats.escape_searches == 3
    assert result.path.length == 2 + 1 + 3
    assert result.path.is_valid(built.task)
    assert stats.goal_tests == stats.generations + 1


@pytest.mark.parametrize("strategy", [EscapeStrategy.constant(3), EscapeStrategy.luby(1)])
def test_ehc_random_walk_escapes(strategy):
    built = build_task(UhrChainSpec.uniform(4, 3, 3, x=2, seed=1))
    stats = RunStats()
    result = ehc(
        built.task, built.heuristic, strategy, RngStream(5), Budget(10**7), stats
    )
    assert result.solved
    assert stats.escape_searches == 4
    assert result.path.is_valid(built.task)


def test_ehc_reports_exhaustion_on_dead_ends(token_task):
    result = ehc(token_task, FFHeuristic(token_task), EscapeStrategy.brfs(), RngStream(0))
    assert result.status is Termination.EXHAUSTED


@pytest.mark.parametrize("budget", [Budget(max_walks=25), Budget(max_generations=1000)])
def test_ehc_walks_on_dead_ends_hit_the_budget(token_task, budget):
    stats = RunStats()
    result = ehc(
        token_task, FFHeuristic(token_task), EscapeStrategy.constant(2),
        RngStream(0), budget, stats,
    )
    assert result.status is Termination.BUDGET_EXCEEDED
    assert stats.walks_started == 1
    assert stats.generations == 0


@pytest.mark.parametrize("policy", [ConstantDepth(3), LubyDepth(1)])
def test_rrw_stops_when_the_initial_state_has_no_successors(line_task, policy):
    stats = RunStats()
    result = rrw(line_task(0), policy, RngStream(0), Budget(max_generations=10), stats)
    assert result.status is Termination.BUDGET_EXCEEDED
    assert stats.walks_started == 1
    assert stats.goal_tests == 1
    assert result.path is None


def test_ehc_with_infinite_initial_heuristic(unsolvable_token_task):
    stats = RunStats()
    result = ehc(
        unsolvable_token_task, FFHeuristic(unsolvable_token_task),
        EscapeStrategy.brfs(), RngStream(0), stats=stats,
    )
    assert result.status is Termination.EXHAUSTED
    assert stats.escape_searches == 0


def test_escape_strategy_parameters():
    with pytest.raises(SpecError):
        EscapeStrategy.constant(0)
    assert str(EscapeStrategy.luby(2)) == "luby:2"
    assert not EscapeStrategy.brfs().uses_walks


@pytest.mark.parametrize(
    "descriptor, kind, name",
    [
        ("brfs", BreadthFirstSearch, "brfs"),
        ("crrw:6", RestartingRandomWalk, "crrw:6"),
        ("luby", RestartingRandomWalk, "luby:1"),
        ("ehc:brfs", EnforcedHillClimbing, "ehc:brfs"),
        ("ehc:crrw:4", EnforcedHillClimbing, "ehc:crrw:4"),
        ("EHC:Luby:2", EnforcedHillClimbing, "ehc:luby:2"),
    ],
)
def test_factory_descriptors(descriptor, kind, name):
    algorithm = AlgorithmFactory.make(descriptor)
    assert isinstance(algorithm, kind)
    assert algorithm.name == name


@pytest.mark.parametrize("descriptor", ["dfs", "crrw", "crrw:x", "brfs:3", "ehc:astar"])
def test_factory_rejects_bad_descriptors(descriptor):
    with pytest.raises(SpecError):
        AlgorithmFactory.make(descriptor)


def test_only_walk_algorithms_use_walks():
    assert AlgorithmFactory.make("crrw:2").uses_walks
    assert AlgorithmFactory.make("ehc:luby:1").uses_walks
    assert not AlgorithmFactory.make("brfs").uses_walks
    assert not AlgorithmFactory.make("ehc:brfs").uses_walks


def test_ehc_needs_a_heuristic():
    task = build_task(TreeTaskSpec(2, 2)).task
    with pytest.raises(SpecError):
        AlgorithmFactory.make("ehc:brfs").solve(task, RngStream(0))
