"""Spectral-purity simulator for ring-resonator photon-pair sources pumped
by temporally shaped multi-pulse pumps."""

__version__ = "0.1.0"

from .core import (
    ComplexSpectrum,
    FrequencyGrid,
    JsaMatrix,
    PulseParams,
    PumpSpec,
    ResonatorParams,
    fourier_to_time,
    make_grid,
    time_to_freq,
)
from .jsa import compute_jsa, jsi, pump_kernel
from .pumps import (
    cascade_envelope,
    dual_envelope,
    envelope,
    single_envelope,
    target_envelope,
    train_envelope,
    triple_envelope,
)
from .resonator import field_report, in_resonator_field, lorentzian
from .schmidt import purity, schmidt_decompose, schmidt_number
from .sweeps import (
    calibrate_linewidth,
    run_sweep_job,
    sweep_eta,
    sweep_phase,
    sweep_train,
)

__all__ = [
    "ComplexSpectrum",
    "FrequencyGrid",
    "JsaMatrix",
    "PulseParams",
    "PumpSpec",
    "ResonatorParams",
    "calibrate_linewidth",
    "cascade_envelope",
    "compute_jsa",
    "dual_envelope",
    "envelope",
    "field_report",
    "fourier_to_time",
    "in_resonator_field",
    "jsi",
    "lorentzian",
    "make_grid",
    "pump_kernel",
    "purity",
    "run_sweep_job",
    "schmidt_decompose",
    "schmidt_number",
    "single_envelope",
    "sweep_eta",
    "sweep_phase",
    "sweep_train",
    "target_envelope",
    "time_to_freq",
    "train_envelope",
    "triple_envelope",
]
