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

"""Sweeps over the closed forms, returned as :class:`pandas.DataFrame`."""

import logging
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import pandas as pd

from ..algorithms import ConstantDepth, brfs, rrw
from ..exceptions import SpecError
from ..search import RngStream, RunStats
from ..synthetic import TreeTaskSpec, build_task, tree_size
from .closed_forms import (Number, expected_brfs, goal_crossover_simple,
                           rrw_upper, to_fraction, tree_input)

logger = logging.getLogger(__name__)

#: Offset of the per-trial goal placement streams.
PLACEMENT_STREAM_OFFSET = 2**32


def walk_length(dstar: int, ell_error: Number) -> int:
    """Return ``ceil((1 + e) d*)``."""
    return math.ceil((1 + to_fraction(ell_error)) * dstar)


def crossover_curves(
    b: int, dstar_range: Iterable[int], ell_errors: Iterable[Number]
) -> pd.DataFrame:
    """Return the goal crossover and goal density crossover on full trees.

    One row per ``(dstar, ell_error)`` with ``walk_len = ceil((1 + e) d*)``,
    ``crossover = l (b - 1) b^d / (b^d - 1)`` and
    ``density = crossover / b^d``. Values are exact rationals.
    """
    if b < 2:
        raise SpecError(f"The branching factor must be at least 2, got {b}.")
    errors = [to_fraction(e) for e in ell_errors]
    rows = []
    for dstar in dstar_range:
        if dstar < 1:
            raise SpecError(f"Goal depths start at 1, got {dstar}.")
        size_at = b**dstar
        for error in errors:
            ell = walk_length(dstar, error)
            simple = goal_crossover_simple(tree_size(b, dstar - 1), size_at, ell)
            crossover = simple.threshold.value
            rows.append({
                "dstar": dstar,
                "ell_error": error,
                "walk_len": ell,
                "crossover": crossover,
                "density": crossover / size_at,
            })
    return pd.DataFrame(rows, columns=["dstar", "ell_error", "walk_len", "crossover", "density"])


def _mean_goal_tests(
    spec: TreeTaskSpec, trials: int, seed: int, walk_len: Optional[int]
) -> float:
    total = 0
    for trial in range(trials):
        placement = RngStream(seed, PLACEMENT_STREAM_OFFSET + trial)
        task = build_task(spec, placement).task
        stats = RunStats()
        if walk_len is None:
            brfs(task, RngStream(seed, trial), stats=stats)
        else:
            rrw(task, ConstantDepth(walk_len), RngStream(seed, trial), stats=stats)
        total += stats.goal_tests
    return total / trials


def figure1a(
    b: int = 4,
    dstar: int = 6,
    walk_lengths: Sequence[int] = (6, 9, 12),
    goals: Optional[Iterable[int]] = None,
    trials: int = 0,
    seed: int = 0,
) -> pd.DataFrame:
    """Return expected runtimes of BrFS and RRW as the number of goals grows.

    Columns are ``g``, ``E_BrFS``, one ``RRW_bound_l<l>`` per walk length and
    ``brfs_floor`` (the states BrFS always examines). With ``trials > 0`` the
    Monte-Carlo means ``BrFS_mean`` and ``RRW_mean_l<l>`` are added,
    redrawing the goals of every trial.
    """
    goal_counts = list(goals) if goals is not None else range(1, b**dstar + 1)
    rows = []
    for g in goal_counts:
        base = tree_input(b, dstar, g, max(walk_lengths))
        row = {
            "g": g,
            "E_BrFS": expected_brfs(base).value,
        }
        for ell in walk_lengths:
            row[f"RRW_bound_l{ell}"] = rrw_upper(tree_input(b, dstar, g, ell)).value
        row["brfs_floor"] = base.size_below
        if trials > 0:
            spec = TreeTaskSpec(b, dstar, g)
            logger.debug("Simulating %d trials with g=%d.", trials, g)
            row["BrFS_mean"] = _mean_goal_tests(spec, trials, seed, None)
            for ell in walk_lengths:
                row[f"RRW_mean_l{ell}"] = _mean_goal_tests(spec, trials, seed, ell)
        rows.append(row)
    return pd.DataFrame(rows)


def figure1b(
    b: int = 4,
    dstar_range: Iterable[int] = range(2, 11),
    ell_errors: Iterable[Number] = (0, Fraction(1, 4), Fraction(1, 2), 1),
) -> pd.DataFrame:
    """Return the goal crossover per goal depth, one column per ``l`` error."""
    return _pivot(crossover_curves(b, dstar_range, ell_errors), "crossover")


def figure1c(
    b: int = 4,
    dstar_range: Iterable[int] = range(2, 11),
    ell_errors: Iterable[Number] = (0, Fraction(1, 4), Fraction(1, 2), 1),
) -> pd.DataFrame:
    """Return the goal density crossover per goal depth, one column per ``l`` error."""
    return _pivot(crossover_curves(b, dstar_range, ell_errors), "density")


def _pivot(curves: pd.DataFrame, column: str) -> pd.DataFrame:
    table = pd.DataFrame({"dstar": sorted(curves["dstar"].unique())})
    for error, group in curves.groupby("ell_error", sort=True):
        values = dict(zip(group["dstar"], group[column]))
        table[f"e={float(error):g}"] = [values[d] for d in table["dstar"]]
    return table
