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

"""Shared fixtures."""

import importlib.resources
from typing import List

import pytest

from escape_search.manager import ExperimentManager
from escape_search.search import SearchTask
from escape_search.strips import ground, parse


class LineTask(SearchTask):
    """States ``0..length`` in a line; ``goal`` is the goal state, if any."""

    def __init__(self, length: int, goal=None):
        self.length = length
        self.goal = goal

    @property
    def initial_state(self) -> int:
        return 0

    def successors(self, state: int) -> List[int]:
        return [state + 1] if state < self.length else []

    def goal_test(self, state: int) -> bool:
        return state == self.goal


def fixture_path(name: str) -> str:
    """Return the path of a bundled PDDL file."""
    return str(importlib.resources.files("escape_search").joinpath(f"fixtures/{name}"))


def read_fixture(name: str) -> str:
    """Return the text of a bundled PDDL file."""
    return importlib.resources.files("escape_search").joinpath(f"fixtures/{name}").read_text()


@pytest.fixture
def line_task():
    return LineTask


@pytest.fixture
def gripper_paths():
    return fixture_path("gripper-domain.pddl"), fixture_path("gripper-problem.pddl")


@pytest.fixture
def token_paths():
    return fixture_path("token-domain.pddl"), fixture_path("token-problem.pddl")


@pytest.fixture
def gripper_task():
    domain, problem = parse(
        read_fixture("gripper-domain.pddl"), read_fixture("gripper-problem.pddl")
    )
    return ground(domain, problem)


@pytest.fixture
def token_task():
    domain, problem = parse(read_fixture("token-domain.pddl"), read_fixture("token-problem.pddl"))
    return ground(domain, problem)


@pytest.fixture
def unsolvable_token_task():
    domain, problem = parse(
        read_fixture("token-domain.pddl"), read_fixture("token-unsolvable-problem.pddl")
    )
    return ground(domain, problem)


@pytest.fixture
def manager():
    return ExperimentManager()


@pytest.fixture
def gripper_plan():
    return [
        "(pick ball1 rooma left)",
        "(pick ball2 rooma right)",
        "(move-east rooma roomb d1)",
        "(drop ball1 roomb left)",
        "(drop ball2 roomb right)",
    ]
