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

"""Exceptions raised by Escape Search."""

from typing import Optional


class EscapeSearchError(Exception):
    """Base class for every error raised by the package."""


class SpecError(EscapeSearchError, ValueError):
    """Invalid parameters given to a task spec, algorithm or formula."""


class DeadEndError(SpecError):
    """An escape task was requested from a recognized dead end."""


class PathError(SpecError):
    """Two paths cannot be joined at their shared endpoint."""


class NodeCapExceeded(EscapeSearchError):
    """An exhaustive enumeration would visit more nodes than allowed."""


class GroundingError(EscapeSearchError):
    """A STRIPS task cannot be grounded."""


class PDDLError(EscapeSearchError):
    """A diagnostic produced while reading PDDL text or a plan file.

    Args:
        message (str): What went wrong.
        line (int, optional): 1-based line of the offending token.
        column (int, optional): 1-based column of the offending token.
    """

    def __init__(
        self, message: str, line: Optional[int] = None, column: Optional[int] = None
    ) -> None:
        """Build the diagnostic."""
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self) -> str:
        """Render as ``line:col: message`` when a position is known."""
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"
