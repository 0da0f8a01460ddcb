"""Deterministic result serialization: CSV tables and portable graymaps."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    v = float(value)
    if math.isnan(v):
        return "nan"
    return f"{v:.9g}"


def write_table(rows, path, header=None, comments=()) -> None:
    """Write rectangular rows as CSV: '#'-prefixed comment/header lines,
    9 significant digits, LF endings.  Identical inputs give identical bytes."""
    rows = [list(r) for r in rows]
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ValueError(f"rows are not rectangular: row lengths {sorted(widths)}")
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        if header is not None:
            if rows and len(header) != len(rows[0]):
                raise ValueError(
                    f"header has {len(header)} fields, rows have {len(rows[0])}"
                )
            fh.write("# " + ",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_table(path):
    """Read a write_table CSV back; returns (comment_lines, float matrix)."""
    comments = []
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                comments.append(line[1:].strip())
            else:
                rows.append([float(f) for f in line.split(",")])
    return comments, np.array(rows)


def write_heatmap_pgm(matrix, path, scale=None, comments=()) -> int:
    """Write matrix as an ASCII portable graymap (P2, 255 levels, row 0 at
    the top) plus an accompanying CSV next to it.

    scale is (lo, hi) for a fixed mapping or None to span the finite data
    range.  NaN cells render as level 0; their count is returned.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {matrix.shape}")
    finite = np.isfinite(matrix)
    n_nan = int(matrix.size - finite.sum())
    if scale is None:
        if not finite.any():
            raise ValueError("matrix has no finite entries to scale by")
        lo, hi = float(matrix[finite].min()), float(matrix[finite].max())
    else:
        lo, hi = float(scale[0]), float(scale[1])
    span = hi - lo if hi > lo else 1.0
    levels = np.clip((matrix - lo) / span, 0.0, 1.0)
    levels = np.where(finite, np.rint(levels * 255.0), 0.0).astype(int)

    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("P2\n")
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(f"# scale_min {lo:.9g} scale_max {hi:.9g} nan_cells {n_nan}\n")
        fh.write(f"{matrix.shape[1]} {matrix.shape[0]}\n255\n")
        for row in levels:
            fh.write(" ".join(str(v) for v in row) + "\n")
    write_table(matrix.tolist(), path.with_suffix(".csv"), comments=comments)
    return n_nan
