"""Lorentzian cavity response and the in-resonator pump field."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ComplexSpectrum,
    FrequencyGrid,
    PumpSpec,
    ResonatorParams,
    fourier_to_time,
)


def lorentzian(omega, gamma: float):
    """Complex field enhancement L(w) = (g/2) / (g/2 + i*w), unit peak.

    gamma is the FWHM of |L|^2; the complex form (not the magnitude) is used
    because the JSA multiplies field amplitudes, and the Lorentzian phase
    carries the cavity ringdown that multi-pulse pumps cancel against.
    """
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    half = gamma / 2.0
    return half / (half + 1j * np.asarray(omega))


def in_resonator_field(
    pump: ComplexSpectrum, resonator: ResonatorParams
) -> ComplexSpectrum:
    """A_p(w) = L(w) * alpha(w) in detuning coordinates."""
    w = pump.grid.points()
    return ComplexSpectrum(
        pump.grid, lorentzian(w, resonator.gamma_pump) * pump.values
    )


@dataclass(frozen=True)
class FieldReport:
    """In-resonator field in both domains, ready for export."""

    spectral: ComplexSpectrum
    time_axis: np.ndarray
    temporal: np.ndarray


def field_report(
    pump_spec: PumpSpec, resonator: ResonatorParams, grid: FrequencyGrid
) -> FieldReport:
    """Bundle the in-resonator spectral field with its temporal transform."""
    from . import pumps  # deferred to avoid an import cycle

    pump = pumps.envelope(pump_spec, grid)
    spectral = in_resonator_field(pump, resonator)
    t, a = fourier_to_time(spectral)
    return FieldReport(spectral=spectral, time_axis=t, temporal=a)


def default_field_grid(pulse_fwhm: float, n_points: int = 8192) -> FrequencyGrid:
    """Wide grid for temporal field plots: the 80x-FWHM span gives sub-ps
    time resolution while keeping the Lorentzian adequately sampled."""
    return FrequencyGrid(n_points=n_points, span=80.0 * pulse_fwhm)
