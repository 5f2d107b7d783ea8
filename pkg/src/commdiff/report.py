"""Report tables: CSV/JSON emitters and parsers, and the ATV grid importer.

Numbers are written with 3 decimals unless ``decimals=None`` is passed, in
which case ``repr`` is used and values round-trip exactly. Ranks are integers.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Sequence, TextIO

import numpy as np

from .exceptions import EmptyInputError, ParseError
from .ranking import RankTable
from .topovariance import TvMatrix


def fmt_number(x: float, decimals: int | None = 3) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if decimals is None:
        return repr(float(x))
    s = f"{x:.{decimals}f}"
    # avoid "-0.000"
    return s[1:] if s.startswith("-") and float(s) == 0 else s


def _csv_text(rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def write_labeled_grid(
    corner: str,
    row_labels: Sequence[str],
    col_labels: Sequence[str],
    values,
    decimals: int | None = 3,
    integer: bool = False,
) -> str:
    rows = [[corner, *col_labels]]
    for label, row in zip(row_labels, np.asarray(values)):
        cells = [str(int(x)) for x in row] if integer else [fmt_number(x, decimals) for x in row]
        rows.append([label, *cells])
    return _csv_text(rows)


def read_labeled_grid(source: TextIO | str) -> tuple[list[str], list[str], np.ndarray]:
    """Parse a grid CSV: header = column labels, first column = row labels.

    Empty cells become NaN. Non-numeric cells raise :class:`ParseError` with
    their coordinates.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = [r for r in csv.reader(line for line in source if not line.startswith("#")) if r]
    if len(rows) < 2:
        raise EmptyInputError("grid needs a header row and at least one data row")
    header = [c.strip() for c in rows[0][1:]]
    row_labels, data = [], []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header) + 1:
            raise ParseError(f"expected {len(header) + 1} cells, got {len(row)}", line=r)
        row_labels.append(row[0].strip())
        parsed = []
        for c, cell in enumerate(row[1:]):
            cell = cell.strip()
            if not cell:
                parsed.append(math.nan)
                continue
            try:
                parsed.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"non-numeric cell {cell!r} at row {row_labels[-1]!r}, column {header[c]!r}", line=r
                ) from None
        data.append(parsed)
    return row_labels, header, np.array(data, dtype=float).reshape(len(row_labels), len(header))


def import_atv_grid(source) -> tuple[list[str], list[str], np.ndarray]:
    """Read an ATV grid (rows = algorithms, columns = datasets) from a path or stream."""
    if hasattr(source, "read"):
        return read_labeled_grid(source)
    with open(source, encoding="utf-8", newline="") as fh:
        return read_labeled_grid(fh)


def heatmap_csv(mat: TvMatrix, decimals: int | None = 3) -> str:
    """TV matrix laid out with one row per alternative and one column per primary."""
    return write_labeled_grid("alternative\\primary", mat.algorithms, mat.algorithms, mat.heatmap(), decimals)


def read_heatmap_csv(source) -> TvMatrix:
    rows, cols, values = read_labeled_grid(source)
    if rows != cols:
        raise ParseError("heatmap rows and columns must list the same algorithms")
    return TvMatrix(tuple(cols), values.T.copy())


def atv_csv(table: RankTable, decimals: int | None = 3) -> str:
    return write_labeled_grid("algorithm", table.algorithms, table.datasets, table.atv, decimals)


def dtv_csv(table: RankTable) -> str:
    return write_labeled_grid("algorithm", table.algorithms, table.datasets, table.dtv, integer=True)


def otv_csv(table: RankTable, decimals: int | None = 3) -> str:
    rows = [["algorithm", "otv_score", "otv_rank"]]
    for a, s, r in zip(table.algorithms, table.otv_score, table.otv):
        rows.append([a, fmt_number(s, decimals), str(int(r))])
    return _csv_text(rows)


def read_otv_csv(source) -> tuple[list[str], np.ndarray, np.ndarray]:
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = list(csv.reader(source))[1:]
    return [r[0] for r in rows], np.array([float(r[1]) for r in rows]), np.array([int(r[2]) for r in rows])


def _round(x, decimals):
    return float(x) if decimals is None else round(float(x), decimals)


def rank_table_json(table: RankTable, decimals: int | None = 3) -> dict:
    return {
        "algorithms": list(table.algorithms),
        "datasets": list(table.datasets),
        "atv": {
            a: {d: _round(table.atv[i, k], decimals) for k, d in enumerate(table.datasets)}
            for i, a in enumerate(table.algorithms)
        },
        "dtv": {d: table.dtv_for(d) for d in table.datasets},
        "otv": {
            a: {"score": _round(table.otv_score[i], decimals), "rank": int(table.otv[i])}
            for i, a in enumerate(table.algorithms)
        },
    }


def rank_table_from_json(doc: dict) -> RankTable:
    algorithms, datasets = doc["algorithms"], doc["datasets"]
    return RankTable(
        tuple(algorithms),
        tuple(datasets),
        np.array([[doc["atv"][a][d] for d in datasets] for a in algorithms], dtype=float),
        np.array([[doc["dtv"][d][a] for d in datasets] for a in algorithms], dtype=int),
        np.array([doc["otv"][a]["score"] for a in algorithms], dtype=float),
        np.array([doc["otv"][a]["rank"] for a in algorithms], dtype=int),
    )


def tv_matrix_json(mat: TvMatrix, decimals: int | None = 3) -> dict:
    return {
        "dataset": mat.dataset,
        "algorithms": list(mat.algorithms),
        "tv": [[_round(x, decimals) for x in row] for row in mat.values],
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
