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

"""Input and output helpers shared by the facade and the CLI."""

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import numpy as np
import pandas as pd

from .analysis import AnalysisResult, format_fraction, render
from .exceptions import SpecError
from .synthetic import TaskSpec, spec_from_dict


class Utils:
    """Utilities class for reading manifests and writing results."""

    @staticmethod
    def load_json(source: str) -> Dict[str, Any]:
        """Read a JSON object given inline or as a file path.

        Raises:
            SpecError: If the text is not a JSON object or the file is missing.
        """
        text = source.strip()
        if not text.startswith("{"):
            try:
                text = Path(source).read_text(encoding="utf-8")
            except OSError as e:
                raise SpecError(f"Cannot read '{source}': {e.strerror}.") from e
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecError(f"Invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}.")
        if not isinstance(data, dict):
            raise SpecError("Expected a JSON object.")
        return data

    @staticmethod
    def load_spec(source: str) -> TaskSpec:
        """Read a task spec given inline or as a file path."""
        return spec_from_dict(Utils.load_json(source))

    @staticmethod
    def read_text(path: str) -> str:
        """Return the content of a UTF-8 text file."""
        try:
            return Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise SpecError(f"Cannot read '{path}': {e.strerror}.") from e

    @staticmethod
    def _cell(value: Any, digits: int) -> str:
        if value is None or value is pd.NA:
            return ""
        if isinstance(value, (bool, np.bool_)):
            return "true" if value else "false"
        if isinstance(value, (float, np.floating)) and math.isnan(value):
            return ""
        if isinstance(value, np.integer):
            return str(int(value))
        if isinstance(value, np.floating):
            value = float(value)
        return render(value, digits)

    @staticmethod
    def to_csv(
        frame: pd.DataFrame, footer: Optional[Iterable[str]] = None, digits: int = 6
    ) -> str:
        """Render ``frame`` as CSV with ``digits`` significant digits.

        Args:
            frame (DataFrame): The table; Fractions and floats are rendered
                as decimals, integers exactly.
            footer (Iterable[str], optional): Lines appended after the rows.
            digits (int): Significant digits of decimals.
        """
        rendered = frame.astype(object).apply(
            lambda column: column.map(lambda value: Utils._cell(value, digits))
        )
        text = rendered.to_csv(index=False, lineterminator="\n")
        for line in footer or ():
            text += f"{line}\n"
        return text

    @staticmethod
    def _json_default(value: Any) -> Any:
        if isinstance(value, AnalysisResult):
            return value.to_dict()
        if isinstance(value, Fraction):
            return format_fraction(value)
        if isinstance(value, np.integer):
            return int(value)
        if isinstance(value, np.floating):
            return float(value)
        if isinstance(value, np.bool_):
            return bool(value)
        raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")

    @staticmethod
    def to_json(data: Any) -> str:
        """Render ``data`` as JSON with sorted keys; rationals become ``"n/d"``."""
        return json.dumps(data, sort_keys=True, indent=2, default=Utils._json_default) + "\n"

    @staticmethod
    def frame_records(frame: pd.DataFrame) -> list:
        """Return the rows of ``frame`` as JSON-ready dictionaries."""
        return frame.astype(object).where(frame.notna(), None).to_dict(orient="records")

    @staticmethod
    def write_text(path: str, text: str) -> None:
        """Write ``text`` to ``path`` as UTF-8 with ``\\n`` line endings."""
        with open(path, "w", encoding="utf-8", newline="") as file:
            file.write(text)
