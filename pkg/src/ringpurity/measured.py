"""Ingest measured joint spectral intensities and estimate purity from
sqrt(JSI).

The sqrt(JSI) route discards the spectral phase, so the result is an
estimate labelled phase-blind; depending on the actual phase pattern the
true purity can sit on either side of it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .schmidt import schmidt_decompose

UNIFORMITY_WARN_FRACTION = 0.01


class JsiFormatError(ValueError):
    """Raised for malformed measured-JSI files; messages carry line numbers."""


@dataclass(frozen=True)
class MeasuredJsi:
    """Measured intensity grid; axes are in ordinary-frequency GHz."""

    signal_axis: np.ndarray
    idler_axis: np.ndarray
    intensity: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.signal_axis, dtype=float)
        i = np.asarray(self.idler_axis, dtype=float)
        m = np.asarray(self.intensity, dtype=float)
        object.__setattr__(self, "signal_axis", s)
        object.__setattr__(self, "idler_axis", i)
        object.__setattr__(self, "intensity", m)
        if m.shape != (s.size, i.size):
            raise ValueError(
                f"intensity shape {m.shape} does not match axes "
                f"({s.size}, {i.size})"
            )
        for name, ax in (("signal", s), ("idler", i)):
            if ax.size > 1 and not np.all(np.diff(ax) > 0):
                raise ValueError(f"{name} axis is not strictly increasing")
        if not np.all(np.isfinite(m)):
            raise ValueError("intensity contains non-finite values")


def _check_uniformity(axis: np.ndarray, name: str) -> None:
    if axis.size < 3:
        return
    steps = np.diff(axis)
    mean = steps.mean()
    if np.max(np.abs(steps - mean)) > UNIFORMITY_WARN_FRACTION * mean:
        warnings.warn(
            f"{name} axis deviates more than 1% from uniform spacing; "
            "Schmidt analysis runs on the native grid regardless",
            stacklevel=3,
        )


def _parse_fields(line: str, lineno: int, expected: int | None = None):
    fields = [f.strip() for f in line.split(",")]
    if expected is not None and len(fields) != expected:
        raise JsiFormatError(
            f"line {lineno}: expected {expected} fields, got {len(fields)}"
        )
    try:
        return [float(f) for f in fields]
    except ValueError as exc:
        raise JsiFormatError(f"line {lineno}: {exc}") from None


def _load_long(lines) -> MeasuredJsi:
    records = {}
    for lineno, line in lines:
        s, i, v = _parse_fields(line, lineno, expected=3)
        key = (s, i)
        if key in records:
            raise JsiFormatError(
                f"line {lineno}: duplicate coordinate ({s:g}, {i:g})"
            )
        records[key] = v
    if not records:
        raise JsiFormatError("file contains no data rows")
    signal = np.array(sorted({k[0] for k in records}))
    idler = np.array(sorted({k[1] for k in records}))
    if len(records) != signal.size * idler.size:
        raise JsiFormatError(
            f"long-CSV is not a complete grid: {len(records)} rows for a "
            f"{signal.size} x {idler.size} axis product"
        )
    intensity = np.empty((signal.size, idler.size))
    s_index = {v: j for j, v in enumerate(signal)}
    i_index = {v: j for j, v in enumerate(idler)}
    for (s, i), v in records.items():
        intensity[s_index[s], i_index[i]] = v
    return MeasuredJsi(signal, idler, intensity)


def _load_matrix(lines) -> MeasuredJsi:
    it = iter(lines)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise JsiFormatError("file contains no data rows") from None
    head = _parse_fields(header, lineno)
    if len(head) < 2:
        raise JsiFormatError(f"line {lineno}: matrix header needs idler axis values")
    idler = np.array(head[1:])  # leading cell is a corner placeholder
    signal = []
    rows = []
    for lineno, line in it:
        fields = _parse_fields(line, lineno)
        if len(fields) != idler.size + 1:
            raise JsiFormatError(
                f"line {lineno}: expected {idler.size + 1} fields, "
                f"got {len(fields)}"
            )
        if signal and fields[0] in signal:
            raise JsiFormatError(
                f"line {lineno}: duplicate signal coordinate {fields[0]:g}"
            )
        signal.append(fields[0])
        rows.append(fields[1:])
    if not rows:
        raise JsiFormatError("matrix-CSV has a header but no rows")
    return MeasuredJsi(np.array(signal), idler, np.array(rows))


def load_jsi(path, fmt: str | None = None) -> MeasuredJsi:
    """Load a measured JSI from a long-CSV (signal_GHz, idler_GHz, intensity)
    or a matrix-CSV with an axis header row and column.

    fmt is 'long', 'matrix' or None to infer from the first data line.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.readlines()
    lines = [
        (n, line.strip())
        for n, line in enumerate(raw, start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise JsiFormatError("file contains no data rows")
    if fmt is None:
        first_fields = lines[0][1].split(",")
        fmt = "long" if len(first_fields) == 3 else "matrix"
    if fmt == "long":
        jsi = _load_long(lines)
    elif fmt == "matrix":
        jsi = _load_matrix(lines)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    _check_uniformity(jsi.signal_axis, "signal")
    _check_uniformity(jsi.idler_axis, "idler")
    return jsi


def save_jsi(jsi: MeasuredJsi, path) -> None:
    """Write a matrix-CSV that load_jsi round-trips."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("0," + ",".join(f"{v:.9g}" for v in jsi.idler_axis) + "\n")
        for s, row in zip(jsi.signal_axis, jsi.intensity):
            fh.write(f"{s:.9g}," + ",".join(f"{v:.9g}" for v in row) + "\n")


@dataclass(frozen=True)
class JsiPurityEstimate:
    purity: float
    schmidt_coeffs: np.ndarray
    phase_blind: bool = True  # sqrt(JSI) discards the spectral phase


def estimate_purity_from_jsi(
    jsi: MeasuredJsi, floor: float = 0.0
) -> JsiPurityEstimate:
    """Clamp intensities below floor to zero, take sqrt and run the Schmidt
    decomposition.  Negative (background-subtracted) intensities are clamped
    as well since their square root is undefined."""
    if floor < 0:
        raise ValueError(f"floor must be non-negative, got {floor}")
    intensity = np.where(jsi.intensity < floor, 0.0, jsi.intensity)
    intensity = np.clip(intensity, 0.0, None)
    if not np.any(intensity > 0):
        raise ValueError("all intensities are zero after clamping")
    amplitude = np.sqrt(intensity)
    result = schmidt_decompose(amplitude)
    pur = float(np.sum(result.coeffs**2))
    return JsiPurityEstimate(purity=pur, schmidt_coeffs=result.coeffs)
