"""Pump envelope construction: single sech^2 pulses, splitter cascades
(dual / triple / quadruple), n-pulse trains and the ideal inverse-Lorentzian
target pump.
"""

from __future__ import annotations

import numpy as np

from .core import ComplexSpectrum, FrequencyGrid, PulseParams, PumpSpec, ResonatorParams
from .resonator import lorentzian


def sech2(x):
    return 1.0 / np.cosh(x) ** 2


def single_envelope(params: PulseParams, grid: FrequencyGrid) -> ComplexSpectrum:
    """sech^2((w - w0)/sigma), unit peak at the pulse center."""
    w = grid.points()
    return ComplexSpectrum(grid, sech2((w - params.center_detuning) / params.sigma))


def cascade_amplitudes(etas) -> np.ndarray:
    """Pulse amplitudes of a splitter cascade with ratios etas.

    Pulse 0 keeps sqrt(eta_1); each interior pulse k keeps
    sqrt(eta_{k+1} * prod_{j<=k} (1 - eta_j)); the last pulse carries the
    full remainder sqrt(prod_j (1 - eta_j)).  Squared amplitudes sum to 1.
    """
    etas = np.asarray(etas, dtype=float)
    n = len(etas) + 1
    amps = np.empty(n)
    remainder = 1.0
    for k in range(n - 1):
        amps[k] = np.sqrt(etas[k] * remainder)
        remainder *= 1.0 - etas[k]
    amps[n - 1] = np.sqrt(remainder)
    return amps


def _comb_factor(grid, amplitudes, phases, delays, center):
    """sum_k a_k * exp(-i*delay_k*(w - w0) + i*phi_k) sampled on grid."""
    w = grid.points() - center
    fac = np.zeros(grid.n_points, dtype=complex)
    for a, phi, tau in zip(amplitudes, phases, delays):
        fac += a * np.exp(-1j * tau * w + 1j * phi)
    return fac


def cascade_envelope(
    stages,
    delay_unit: float,
    params: PulseParams,
    grid: FrequencyGrid,
    delays=None,
) -> ComplexSpectrum:
    """Splitter-cascade pump of 2-4 pulses.

    stages is a list of (eta, phase); pulse k sits at k*delay_unit unless an
    explicit per-pulse delay list is supplied.  One stage reproduces the dual
    pulse, two stages the triple pulse.
    """
    stages = list(stages)
    if not 1 <= len(stages) <= 3:
        raise ValueError(f"cascade supports 1-3 stages, got {len(stages)}")
    etas = [e for e, _ in stages]
    for eta in etas:
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"splitting ratio {eta} outside [0, 1]")
    amps = cascade_amplitudes(etas)
    phases = [0.0] + [p for _, p in stages]
    if delays is None:
        delays = delay_unit * np.arange(len(amps))
    else:
        delays = np.asarray(delays, dtype=float)
        if len(delays) != len(amps):
            raise ValueError(
                f"expected {len(amps)} delays, got {len(delays)}"
            )
    fac = _comb_factor(grid, amps, phases, delays, params.center_detuning)
    base = single_envelope(params, grid)
    return ComplexSpectrum(grid, fac * base.values)


def dual_envelope(spec: PumpSpec, grid: FrequencyGrid) -> ComplexSpectrum:
    """[sqrt(eta) + sqrt(1-eta) e^(-i*dtau*(w-w0) + i*phi)] * alpha_single."""
    if spec.kind != "dual":
        raise ValueError(f"expected a dual PumpSpec, got kind {spec.kind!r}")
    return cascade_envelope(
        spec.stages, spec.delay_unit, spec.base, grid, delays=spec.delays
    )


def triple_envelope(spec: PumpSpec, grid: FrequencyGrid) -> ComplexSpectrum:
    """Three-pulse cascade; delays and phases are relative to the first pulse."""
    if spec.kind != "triple":
        raise ValueError(f"expected a triple PumpSpec, got kind {spec.kind!r}")
    return cascade_envelope(
        spec.stages, spec.delay_unit, spec.base, grid, delays=spec.delays
    )


def train_envelope(spec: PumpSpec, grid: FrequencyGrid) -> ComplexSpectrum:
    """n-pulse train at delays 0, dtau, 2*dtau, ...

    Every pulse after the first is pi out of phase with the first.  The
    train-constant variant uses amplitudes (1, r, r, ...) before a global L2
    normalization; train-cascade applies the same splitting ratio at every
    stage.  Purity is scale invariant, so the normalization only aids
    plotting.
    """
    if spec.kind not in ("train-constant", "train-cascade"):
        raise ValueError(f"expected a train PumpSpec, got kind {spec.kind!r}")
    n = spec.n_pulses
    if n == 1:
        return single_envelope(spec.base, grid)
    if spec.kind == "train-constant":
        amps = np.concatenate(([1.0], np.full(n - 1, spec.tail_ratio)))
        amps = amps / np.linalg.norm(amps)
    else:
        eta = spec.stages[0][0]
        amps = cascade_amplitudes([eta] * (n - 1))
    phases = np.concatenate(([0.0], np.full(n - 1, np.pi)))
    delays = spec.delay_unit * np.arange(n)
    fac = _comb_factor(grid, amps, phases, delays, spec.base.center_detuning)
    base = single_envelope(spec.base, grid)
    return ComplexSpectrum(grid, fac * base.values)


def target_envelope(
    params: PulseParams, resonator: ResonatorParams, grid: FrequencyGrid
) -> ComplexSpectrum:
    """Ideal pump L(w)^-1 * alpha_single that undoes the pump-resonance
    filtering, L2-normalized on the grid."""
    w = grid.points() - params.center_detuning
    base = single_envelope(params, grid)
    values = base.values / lorentzian(w, resonator.gamma_pump)
    return ComplexSpectrum(grid, values).normalized()


def envelope(spec: PumpSpec, grid: FrequencyGrid) -> ComplexSpectrum:
    """Build the pump envelope described by spec on grid."""
    if spec.kind == "single":
        return single_envelope(spec.base, grid)
    if spec.kind == "dual":
        return dual_envelope(spec, grid)
    if spec.kind == "triple":
        return triple_envelope(spec, grid)
    if spec.kind == "cascade":
        return cascade_envelope(
            spec.stages, spec.delay_unit, spec.base, grid, delays=spec.delays
        )
    return train_envelope(spec, grid)
