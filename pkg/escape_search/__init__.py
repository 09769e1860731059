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

"""Escape Search: breadth-first search against restarting random walks."""
from .laboratory import EscapeLab
from .manager import AlgorithmFactory, ExperimentManager
from .version import __version__

__all__ = ['AlgorithmFactory', 'EscapeLab', 'ExperimentManager', '__version__',]
