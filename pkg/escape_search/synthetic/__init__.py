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

"""Synthetic tasks with analytically known properties."""

from .probability import (Census, census, exact_reach_prob, exact_success_prob,
                          monte_carlo_reach_prob)
from .specs import (MAX_STATES, SPEC_TYPES, DeadLeafTreeSpec, StarTaskSpec,
                    TaskSpec, TreeTaskSpec, UhrChainSpec, spec_from_dict,
                    tree_size)
from .tasks import (DEFAULT_NODE_CAP, BuiltTask, DeadLeafTreeTask, StarTask,
                    SyntheticTask, TreeTask, UhrChainHeuristic, UhrChainTask,
                    build_task, index_to_state)

__all__ = [
    'DEFAULT_NODE_CAP', 'MAX_STATES', 'SPEC_TYPES', 'BuiltTask', 'Census',
    'DeadLeafTreeSpec', 'DeadLeafTreeTask', 'StarTask', 'StarTaskSpec',
    'SyntheticTask', 'TaskSpec', 'TreeTask', 'TreeTaskSpec', 'UhrChainHeuristic',
    'UhrChainSpec', 'UhrChainTask', 'build_task', 'census', 'exact_reach_prob',
    'exact_success_prob', 'index_to_state', 'monte_carlo_reach_prob',
    'spec_from_dict', 'tree_size',
]
