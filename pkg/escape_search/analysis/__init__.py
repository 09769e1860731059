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

"""Closed-form analysis of BrFS and restarting random walks."""

from .closed_forms import (SIGNIFICANT_DIGITS, AnalysisInput, AnalysisResult,
                           Crossover, brfs_bounds, check_all_goals_condition,
                           check_depth1_dominance, depth1_crossover_prob,
                           derivative_positivity_check, ehc_brfs_bound,
                           ehc_brfs_expected, ehc_crrw_upper, expected_brfs,
                           format_fraction, gap, goal_crossover_accurate,
                           goal_crossover_simple,
                           min_success_prob_for_crossover, render, rrw_upper,
                           to_fraction, tree_expectations, tree_input)
from .figures import (PLACEMENT_STREAM_OFFSET, crossover_curves, figure1a,
                      figure1b, figure1c, walk_length)

__all__ = [
    'PLACEMENT_STREAM_OFFSET', 'SIGNIFICANT_DIGITS', 'AnalysisInput',
    'AnalysisResult', 'Crossover', 'brfs_bounds', 'check_all_goals_condition',
    'check_depth1_dominance', 'crossover_curves', 'depth1_crossover_prob',
    'derivative_positivity_check', 'ehc_brfs_bound', 'ehc_brfs_expected',
    'ehc_crrw_upper', 'expected_brfs', 'figure1a', 'figure1b', 'figure1c',
    'format_fraction', 'gap', 'goal_crossover_accurate',
    'goal_crossover_simple', 'min_success_prob_for_crossover', 'render',
    'rrw_upper', 'to_fraction', 'tree_expectations', 'tree_input',
    'walk_length',
]
