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

"""Tests for the closed forms and the figure tables."""

from fractions import Fraction

import pytest

from escape_search.analysis import (AnalysisInput, AnalysisResult, brfs_bounds,
                                    check_all_goals_condition,
                                    check_depth1_dominance, crossover_curves,
                                    depth1_crossover_prob,
                                    derivative_positivity_check,
                                    ehc_brfs_bound, ehc_brfs_expected,
                                    ehc_crrw_upper, expected_brfs, figure1a,
                                    figure1b, figure1c, gap,
                                    goal_crossover_accurate,
                                    goal_crossover_simple,
                                    min_success_prob_for_crossover, render,
                                    rrw_upper, to_fraction, tree_expectations,
                                    tree_input, walk_length)
from escape_search.exceptions import SpecError
from escape_search.search import RngStream
from escape_search.synthetic import UhrChainSpec


def random_inputs(count, seed=0):
    rng = RngStream(seed)
    for _ in range(count):
        size_at = 1 + rng.below(5000)
        yield AnalysisInput(
            size_below=1 + rng.below(5000),
            size_at=size_at,
            goals=1 + rng.below(size_at),
            walk_len=1 + rng.below(30),
            reach_prob=Fraction(1 + rng.below(100), 100),
        )


@pytest.mark.parametrize(
    "goals, expected", [(1, Fraction(27)), (2, Fraction(67, 3)), (5, Fraction(53, 3))]
)
def test_expected_brfs_on_ternary_tree(goals, expected):
    assert expected_brfs(tree_input(3, 3, goals, 3)) == expected


def test_brfs_bounds():
    assert brfs_bounds(tree_input(4, 6, 1, 6)) == (1366, 1365 + 4096)


def test_rrw_upper_on_quaternary_tree():
    brfs_value, rrw_value = tree_expectations(4, 6, 64, 6)
    assert rrw_value == 385
    assert brfs_value == 1365 + Fraction(4097, 65)


def test_rrw_upper_is_infinite_without_success():
    inp = AnalysisInput(10, 10, 1, 3).with_success_prob(0)
    result = rrw_upper(inp)
    assert result.infinite
    assert result.ceiling() is None
    assert str(result) == "Infinity"
    assert expected_brfs(inp) < result


def test_all_goals_make_rrw_cost_one_walk():
    assert rrw_upper(tree_input(4, 6, 4096, 6)) == 7


def test_simple_goal_crossover():
    crossover = goal_crossover_simple(1365, 4096, 6)
    assert crossover.threshold == Fraction(8192, 455)
    assert crossover.threshold.decimal() == "18.0044"
    assert crossover.minimal_goals == 19


def test_accurate_goal_crossover():
    accurate = goal_crossover_accurate(1365, 4096, 6, 1)
    assert float(accurate.threshold) == pytest.approx(15.56, abs=0.01)
    assert accurate.minimal_goals == 16
    assert float(accurate.kappa) == pytest.approx(215.58, abs=0.01)
    assert accurate.threshold <= goal_crossover_simple(1365, 4096, 6, 1).threshold


def test_accurate_crossover_never_exceeds_simple():
    for inp in random_inputs(1000, seed=3):
        simple = goal_crossover_simple(inp.size_below, inp.size_at, inp.walk_len, inp.reach_prob)
        accurate = goal_crossover_accurate(
            inp.size_below, inp.size_at, inp.walk_len, inp.reach_prob
        )
        assert accurate.threshold <= simple.threshold


def test_crossover_without_reachable_goals_is_infinite():
    crossover = goal_crossover_simple(10, 10, 2, 0)
    assert crossover.threshold.infinite
    assert crossover.minimal_goals is None


def test_threshold_probability_makes_bounds_meet():
    for inp in random_inputs(1000, seed=7):
        try:
            threshold = min_success_prob_for_crossover(inp)
        except SpecError:
            continue
        if threshold > 1:
            continue
        assert rrw_upper(inp.with_success_prob(threshold)) == expected_brfs(inp)


def test_min_success_prob_for_crossover():
    inp = AnalysisInput(1365, 4096, 63, 6)
    assert min_success_prob_for_crossover(inp) == Fraction(6) / Fraction(91393, 64)


def test_depth1_dominance():
    assert check_depth1_dominance(20, 5) == (Fraction(9, 2), Fraction(5))
    with pytest.raises(SpecError):
        check_depth1_dominance(5, 5)


def test_depth1_crossover_prob():
    assert depth1_crossover_prob(20, 5, 1) == Fraction(2, 7)


def test_all_goals_condition():
    assert check_all_goals_condition(6, 1365, 1)
    assert not check_all_goals_condition(6, 1365, Fraction(1, 1000))


def test_derivative_positivity():
    assert derivative_positivity_check(1365, 4096, 6)
    assert derivative_positivity_check(13, 27, 3, range(1, 28))


def test_gap_grows_with_goals():
    inp = tree_input(4, 6, 1, 6)
    gaps = [gap(inp, g) for g in range(1, 200)]
    assert all(a < b for a, b in zip(gaps, gaps[1:]))
    assert gap(inp, 15).value < 0 < gap(inp, 16).value


def test_gap_needs_reachable_goal_depth():
    with pytest.raises(SpecError):
        gap(AnalysisInput(10, 10, 1, 3, reach_prob=0))


def test_analysis_input_validation():
    with pytest.raises(SpecError):
        AnalysisInput(10, 10, 11, 3)
    with pytest.raises(SpecError):
        AnalysisInput(10, 10, 1, 3, reach_prob=2)
    with pytest.raises(SpecError):
        tree_input(4, 6, 1, 5)


def test_analysis_input_json():
    inp = AnalysisInput(13, 27, 2, 3, reach_prob="1/2")
    data = inp.to_dict()
    assert data["reach_prob"] == "1/2"
    assert AnalysisInput.from_dict(data) == inp
    with pytest.raises(SpecError):
        AnalysisInput.from_dict({"size_below": 1})


def test_to_fraction():
    assert to_fraction(0.4) == Fraction(2, 5)
    assert to_fraction("1/4") == Fraction(1, 4)
    with pytest.raises(SpecError):
        to_fraction("one")
    with pytest.raises(SpecError):
        to_fraction(float("nan"))


def test_render():
    assert render(Fraction(1, 3)) == "0.333333"
    assert render(AnalysisResult.infinity()) == "Infinity"
    assert render(12) == "12"
    assert AnalysisResult(Fraction(5, 2)).to_dict() == {"value": "5/2", "decimal": "2.5"}


def test_ehc_bounds():
    assert ehc_brfs_bound(3, 2, 2) == 21
    chain = UhrChainSpec.uniform(2, 2, 2, x=1)
    assert ehc_crrw_upper(chain, 1).infinite
    assert ehc_crrw_upper(chain, 2) == 18
    assert ehc_brfs_expected(UhrChainSpec.uniform(1, 2, 2, x=1)) == Fraction(11, 2)


def test_walk_length():
    assert walk_length(6, 0) == 6
    assert walk_length(6, Fraction(1, 4)) == 8
    assert walk_length(5, "1/2") == 8


def test_figure1a_columns():
    table = figure1a()
    assert len(table) == 4096
    assert list(table.columns) == [
        "g", "E_BrFS", "RRW_bound_l6", "RRW_bound_l9", "RRW_bound_l12", "brfs_floor",
    ]
    assert (table["brfs_floor"] == 1365).all()
    assert table.loc[0, "E_BrFS"] == Fraction(1365) + Fraction(4097, 2)
    assert table.loc[4095, "RRW_bound_l6"] == 7


def test_figure1a_simulated_means():
    table = figure1a(b=2, dstar=3, walk_lengths=(3,), goals=[1, 8], trials=200, seed=1)
    assert "BrFS_mean" in table.columns
    assert table.loc[1, "RRW_mean_l3"] == 4
    assert 8 <= table.loc[0, "BrFS_mean"] <= 15


def test_figure1b_closed_form_at_zero_error():
    table = figure1b()
    for dstar, value in zip(table["dstar"], table["e=0"]):
        size_at = 4**dstar
        assert value == Fraction(dstar * 3 * size_at, size_at - 1)


@pytest.mark.parametrize("column", ["e=0", "e=0.5", "e=1"])
def test_figure1b_increases_and_figure1c_decreases(column):
    crossover = list(figure1b()[column])
    density = list(figure1c()[column])
    assert all(a < b for a, b in zip(crossover, crossover[1:]))
    assert all(a > b for a, b in zip(density, density[1:]))


def test_crossover_curves_rows():
    curves = crossover_curves(4, range(2, 4), [0, "1/2"])
    assert list(curves["walk_len"]) == [2, 3, 3, 5]
    with pytest.raises(SpecError):
        crossover_curves(1, range(2, 4), [0])
