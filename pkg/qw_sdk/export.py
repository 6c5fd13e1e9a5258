"""CSV rendering for experiment tables."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from numbers import Integral
from typing import List, Tuple

Cell = int | float
Row = Tuple[Cell, ...]

SIGNIFICANT_DIGITS = ".12g"


def format_cell(value: Cell) -> str:
    """Integers verbatim, floats with up to 12 significant digits."""

    if isinstance(value, Integral) and not isinstance(value, bool):
        return str(int(value))
    text = format(float(value), SIGNIFICANT_DIGITS)
    return "0" if text == "-0" else text


@dataclass(frozen=True)
class CsvTable:
    """Header plus rows, rendered with ``\\n`` line endings."""

    header: Tuple[str, ...]
    rows: List[Row] = field(default_factory=list)

    def __post_init__(self) -> None:
        width = len(self.header)
        for index, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {index} has {len(row)} cells, header has {width}")

    def render(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([format_cell(value) for value in row])
        return buffer.getvalue()


__all__ = ["CsvTable", "SIGNIFICANT_DIGITS", "format_cell"]
