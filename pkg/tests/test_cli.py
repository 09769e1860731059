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

"""Tests for the command line interface."""

import json

import pytest
from click.testing import CliRunner

from escape_search.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def test_analyze_figure1b_csv(runner, tmp_path):
    out = tmp_path / "fig1b.csv"
    result = runner.invoke(cli, ["analyze", "--spec", '{"figure": "1b"}', "--out", str(out)])
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == "dstar,e=0,e=0.25,e=0.5,e=1"
    assert len(lines) == 10
    assert lines[1].startswith("2,")


def test_analyze_figure1a_header(runner, tmp_path):
    out = tmp_path / "fig1a.csv"
    spec = '{"figure": "1a", "goals": [1, 4096]}'
    result = runner.invoke(cli, ["analyze", "--spec", spec, "--out", str(out)])
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == "g,E_BrFS,RRW_bound_l6,RRW_bound_l9,RRW_bound_l12,brfs_floor"
    assert len(lines) == 3
    assert lines[2].startswith("4096,")
    assert lines[2].endswith(",1365")

def test_analyze_bounds_json(runner, tmp_path):
    out = tmp_path / "bounds.json"
    spec = {"figure": "bounds", "size_below": 1365, "size_at": 4096, "goals": 19, "walk_len": 6}
    result = runner.invoke(
        cli, ["analyze", "--spec", json.dumps(spec), "--format", "json", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    (row,) = json.loads(out.read_text())
    assert row["crossover_simple"] == {"value": "8192/455", "decimal": "18.0044"}
    assert row["crossover_accurate"]["decimal"].startswith("15.5")
    assert row["minimal_goals"] == 16
    assert row["brfs_lower"] == 1366


def test_analyze_reads_a_spec_file(runner, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text('{"figure": "crossover", "b": 4, "dstar_range": [2, 3], "ell_errors": [0]}')
    out = tmp_path / "curves.csv"
    result = runner.invoke(cli, ["analyze", "--spec", str(spec), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_text().splitlines()[0] == "dstar,ell_error,walk_len,crossover,density"


@pytest.mark.parametrize(
    "spec", ['{"figure": "2"}', '{"figure": "1a", "b": 1}', "{not json", "missing.json"]
)
def test_analyze_usage_errors(runner, spec):
    result = runner.invoke(cli, ["analyze", "--spec", spec])
    assert result.exit_code == 2


def test_simulate_csv_with_footer(runner, tmp_path):
    out = tmp_path / "trials.csv"
    result = runner.invoke(cli, [
        "simulate", "--spec", '{"kind": "star", "n": 20, "g": 5}', "--algo", "brfs",
        "--trials", "25", "--seed", "3", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == (
        "trial,seed,goal_tests,generations,walks,heuristic_evals,"
        "escape_searches,solved,solution_length,status"
    )
    assert len([line for line in lines if not line.startswith("#agg,")]) == 26
    assert lines[-5] == "#agg,solved,25,25"
    assert lines[1].endswith(",true,1,Solved")


def test_simulate_output_does_not_depend_on_jobs(runner, tmp_path):
    outputs = []
    for jobs in ("1", "3"):
        out = tmp_path / f"jobs{jobs}.csv"
        result = runner.invoke(cli, [
            "simulate", "--spec", '{"kind": "tree", "b": 3, "dstar": 3, "g": 2}',
            "--algo", "luby:1", "--trials", "40", "--seed", "17", "--jobs", jobs,
            "--placement", "per_trial", "--out", str(out),
        ])
        assert result.exit_code == 0, result.output
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_simulate_json(runner, tmp_path):
    out = tmp_path / "trials.json"
    result = runner.invoke(cli, [
        "simulate", "--spec", '{"kind": "tree", "b": 2, "dstar": 3}', "--algo", "crrw:2",
        "--trials", "3", "--max-walks", "4", "--format", "json", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())
    assert data["aggregates"]["solved"] == 0
    assert [row["status"] for row in data["rows"]] == ["BudgetExceeded"] * 3
    assert data["rows"][0]["solution_length"] is None


@pytest.mark.parametrize(
    "arguments",
    [
        ["--spec", '{"kind": "tree", "b": 2, "dstar": 2}', "--algo", "dfs"],
        ["--spec", '{"kind": "tree", "b": 2, "dstar": 2, "g": 9}', "--algo", "brfs"],
        ["--spec", '{"kind": "tree", "b": 2, "dstar": 2}', "--algo", "brfs", "--trials", "0"],
    ],
)
def test_simulate_usage_errors(runner, arguments):
    result = runner.invoke(cli, ["simulate", *arguments])
    assert result.exit_code == 2


def test_plan_gripper(runner, tmp_path, gripper_paths):
    out = tmp_path / "plans.json"
    result = runner.invoke(
        cli, ["plan", *gripper_paths, "--algo", "ehc:brfs", "--trials", "2", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    reports = json.loads(out.read_text())
    assert [r["seed"] for r in reports] == [0, 1]
    assert all(r["status"] == "Solved" and r["valid"] for r in reports)
    assert "wall_time" not in reports[0]


def test_plan_without_solution_exits_with_one(runner, tmp_path, token_paths):
    out = tmp_path / "plans.json"
    result = runner.invoke(cli, ["plan", *token_paths, "--trials", "1", "--out", str(out)])
    assert result.exit_code == 1
    assert json.loads(out.read_text())[0]["status"] == "NoSolution"


def test_validate(runner, tmp_path, gripper_paths, gripper_plan):
    plan = tmp_path / "plan.txt"
    plan.write_text("\n".join(gripper_plan) + "\n")
    result = runner.invoke(cli, ["validate", *gripper_paths, str(plan)])
    assert result.exit_code == 0, result.output

    plan.write_text("\n".join(gripper_plan[:4]) + "\n")
    result = runner.invoke(cli, ["validate", *gripper_paths, str(plan)])
    assert result.exit_code == 1
    assert "goal not satisfied after step 4" in result.output

    plan.write_text("(pick ball1 rooma left\n")
    result = runner.invoke(cli, ["validate", *gripper_paths, str(plan)])
    assert result.exit_code == 2
