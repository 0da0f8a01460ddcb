"""Joint spectral amplitude engine.

Strict energy conservation collapses the double pump integral to an
autoconvolution kernel K of the in-resonator pump f = alpha * L_pump:

    Phi(W_s, W_i) = L_s(W_s) * L_i(W_i) * K(W_s + W_i),
    K(W) = Int f(d) * f(W - d) dd.

K is computed once by FFT autoconvolution on a dense pump grid and sampled
on the signal/idler sum by interpolation.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.signal import fftconvolve

from .core import (
    ComplexSpectrum,
    FrequencyGrid,
    JsaMatrix,
    PumpSpec,
    ResonatorParams,
)
from .pumps import envelope
from .resonator import lorentzian

DEFAULT_PUMP_POINTS = 4096
DEFAULT_JSA_POINTS = 512


class GridResolutionError(ValueError):
    """Raised when a signal/idler grid is too coarse to resolve a linewidth."""


def default_pump_grid(
    pump_fwhm: float, gamma_pump: float, n_points: int = DEFAULT_PUMP_POINTS
) -> FrequencyGrid:
    """Pump grid resolving both the broad envelope and the narrow Lorentzian."""
    span = max(8.0 * pump_fwhm, 40.0 * gamma_pump)
    return FrequencyGrid(n_points=n_points, span=span)


def default_jsa_grid(
    pump_fwhm: float, gamma: float, n_points: int = DEFAULT_JSA_POINTS
) -> FrequencyGrid:
    """Signal/idler grid: 10x the pump FWHM, capped so the spacing stays at
    or below gamma/4."""
    span = min(10.0 * pump_fwhm, (n_points - 1) * gamma / 4.0)
    return FrequencyGrid(n_points=n_points, span=span)


def pump_kernel(
    pump: ComplexSpectrum, resonator: ResonatorParams
) -> ComplexSpectrum:
    """Autoconvolution kernel of the in-resonator pump on a doubled-span grid.

    The discrete full convolution has 2n-1 samples spanning twice the pump
    span; one zero sample is appended so the doubled grid keeps a
    power-of-two length.
    """
    grid = pump.grid
    w = grid.points()
    f = pump.values * lorentzian(w, resonator.gamma_pump)
    dw = grid.spacing
    conv = fftconvolve(f, f) * dw
    values = np.concatenate([conv, [0.0]])
    doubled = FrequencyGrid(
        n_points=2 * grid.n_points,
        span=2.0 * grid.span + dw,
        center=2.0 * grid.center + dw / 2.0,
    )
    return ComplexSpectrum(doubled, values)


def _check_resolution(grid: FrequencyGrid, gamma: float, label: str) -> None:
    if grid.spacing > gamma / 4.0 * (1.0 + 1e-9):
        raise GridResolutionError(
            f"{label} grid spacing {grid.spacing:.3e} rad/s exceeds gamma/4 = "
            f"{gamma / 4.0:.3e} rad/s; the Lorentzian would be unresolved"
        )


def compute_jsa(
    pump_spec: PumpSpec,
    resonator: ResonatorParams,
    signal_grid: FrequencyGrid,
    idler_grid: FrequencyGrid,
    pump_grid: FrequencyGrid | None = None,
    interpolation: str = "linear",
) -> JsaMatrix:
    """L2-normalized JSA of pump_spec on the given signal/idler grids.

    interpolation selects how the kernel is sampled on the sum axis:
    'linear' (default) or 'cubic'.
    """
    _check_resolution(signal_grid, resonator.gamma_signal, "signal")
    _check_resolution(idler_grid, resonator.gamma_idler, "idler")
    if pump_grid is None:
        pump_grid = default_pump_grid(pump_spec.base.fwhm, resonator.gamma_pump)
    pump = envelope(pump_spec, pump_grid)
    kernel = pump_kernel(pump, resonator)
    kw = kernel.grid.points()

    ws = signal_grid.points()
    wi = idler_grid.points()
    sums = (ws[:, None] + wi[None, :]).ravel()
    if interpolation == "linear":
        k_vals = np.interp(sums, kw, kernel.values.real, left=0.0, right=0.0) + (
            1j * np.interp(sums, kw, kernel.values.imag, left=0.0, right=0.0)
        )
    elif interpolation == "cubic":
        spline = CubicSpline(kw, kernel.values, extrapolate=False)
        k_vals = np.nan_to_num(spline(sums), nan=0.0)
    else:
        raise ValueError(f"unknown interpolation {interpolation!r}")

    values = k_vals.reshape(signal_grid.n_points, idler_grid.n_points)
    values = (
        lorentzian(ws, resonator.gamma_signal)[:, None]
        * lorentzian(wi, resonator.gamma_idler)[None, :]
        * values
    )
    return JsaMatrix(signal_grid, idler_grid, values).normalized()


def jsi(jsa: JsaMatrix) -> np.ndarray:
    """|Phi|^2, max-normalized to 1 for plotting and export."""
    intensity = np.abs(jsa.values) ** 2
    peak = intensity.max()
    if peak > 0:
        intensity = intensity / peak
    return intensity
