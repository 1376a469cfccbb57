"""Reproduction of the three b*Q(a; b) value tables.

Cell conventions:

* ``"*"`` marks a non-coprime (a, b) cell,
* ``""`` marks a structurally absent cell (the upper triangle of the
  quarter table),
* every other cell is an exact rational in its shortest form, integers
  without a denominator.

The quarter table's printed caption swaps the roles of its row and column
labels relative to the other two tables; rows here always index the odd
modulus and columns the even argument, the only reading under which the
three tables agree with each other.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DomainError
from .exact import q_euclidean
from .pairs import rational_str


class TableKind(Enum):
    T1_BQ_EVEN_A = "t1"
    T2_BQ_ODD_A = "t2"
    T3_QUARTER = "t3"


_DEFAULT_AXES = {
    TableKind.T1_BQ_EVEN_A: (tuple(range(1, 22, 2)), tuple(range(2, 23, 2))),
    TableKind.T2_BQ_ODD_A: (tuple(range(2, 23, 2)), tuple(range(1, 22, 2))),
    TableKind.T3_QUARTER: (tuple(range(3, 34, 2)), tuple(range(2, 33, 2))),
}


@dataclass(frozen=True)
class TableSpec:
    which: TableKind
    rows: tuple
    cols: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        row_parity = 0 if self.which is TableKind.T2_BQ_ODD_A else 1
        col_parity = 1 - row_parity
        if any(r < 1 or r % 2 != row_parity for r in self.rows):
            raise DomainError(f"row labels of {self.which.value} must be positive with parity {row_parity}")
        if any(c < 1 or c % 2 != col_parity for c in self.cols):
            raise DomainError(f"column labels of {self.which.value} must be positive with parity {col_parity}")


def default_spec(which: TableKind) -> TableSpec:
    rows, cols = _DEFAULT_AXES[which]
    return TableSpec(which, rows, cols)


def table_value(which: TableKind, row: int, col: int):
    """Exact cell value, or None for a '*' cell.

    For the two full tables the row is the modulus b and the column the
    argument a, and the value is b*Q(a; b).  The quarter table divides by 4
    and only populates columns below the row label.
    """
    b, a = row, col
    if math.gcd(a, b) != 1:
        return None
    bq = b * q_euclidean(a, b)
    if which is TableKind.T3_QUARTER:
        return bq / 4
    return bq


def render_table(spec: TableSpec) -> list:
    """Grid of cell strings, row-major, matching spec.rows x spec.cols."""
    grid = []
    for row in spec.rows:
        cells = []
        for col in spec.cols:
            if spec.which is TableKind.T3_QUARTER and col > row:
                cells.append("")
                continue
            value = table_value(spec.which, row, col)
            if value is None:
                cells.append("*")
            elif value.denominator == 1:
                cells.append(str(value.numerator))
            else:
                cells.append(f"{value.numerator}/{value.denominator}")
        grid.append(cells)
    return grid


def _human_cell(cell: str) -> str:
    # halves print as decimals so a table diffs visually against print form
    if "/" in cell:
        value = Fraction(cell)
        if value.denominator == 2:
            return f"{value.numerator / 2:.1f}"
    return cell


def _machine_cell(cell: str) -> str:
    if cell in ("*", ""):
        return cell
    return rational_str(Fraction(cell))


def format_text(spec: TableSpec, grid: list) -> str:
    headers = ["b\\a"] + [str(c) for c in spec.cols]
    body = [
        [str(label)] + [_human_cell(cell) for cell in cells]
        for label, cells in zip(spec.rows, grid)
    ]
    widths = [max(len(line[i]) for line in [headers] + body) for i in range(len(headers))]
    lines = []
    for line in [headers] + body:
        lines.append("  ".join(cell.rjust(width) for cell, width in zip(line, widths)))
    return "\n".join(lines) + "\n"


def format_csv(spec: TableSpec, grid: list) -> str:
    lines = ["b," + ",".join(str(c) for c in spec.cols)]
    for label, cells in zip(spec.rows, grid):
        lines.append(f"{label}," + ",".join(_machine_cell(cell) for cell in cells))
    return "\n".join(lines) + "\n"


def format_json(spec: TableSpec, grid: list) -> str:
    payload = {
        "meta": {
            "table": spec.which.value,
            "rows": list(spec.rows),
            "cols": list(spec.cols),
        },
        "rows": [
            {"label": label, "cells": [_machine_cell(cell) for cell in cells]}
            for label, cells in zip(spec.rows, grid)
        ],
    }
    return json.dumps(payload, indent=2) + "\n"
