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

"""Search algorithms: BrFS, random walks, RRW and EHC."""

from .base import SearchAlgorithm, SearchResult
from .brfs import BreadthFirstSearch, brfs
from .ehc import EnforcedHillClimbing, EscapeStrategy, StrategyKind, ehc
from .random_walk import (ConstantDepth, DepthPolicy, LubyDepth,
                          RestartingRandomWalk, WalkOutcome, WalkResult, luby,
                          random_walk, rrw)

__all__ = [
    'BreadthFirstSearch', 'ConstantDepth', 'DepthPolicy', 'EnforcedHillClimbing',
    'EscapeStrategy', 'LubyDepth', 'RestartingRandomWalk', 'SearchAlgorithm',
    'SearchResult', 'StrategyKind', 'WalkOutcome', 'WalkResult', 'brfs', 'ehc',
    'luby', 'random_walk', 'rrw',
]
