"""Domain types, unit conventions and frequency/time grid machinery.

All frequencies inside the package are angular detunings (rad/s) from the
relevant resonance center; absolute optical frequencies never enter the
math.  Ordinary-frequency GHz and ps appear only at the IO boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# fwhm / sigma for an intensity profile sech^4(x/sigma) would differ; the
# envelope here is sech^2 in frequency, whose half-maximum sits at
# x = arccosh(sqrt(2)) * sigma.
SECH2_FWHM_FACTOR = 2.0 * float(np.arccosh(np.sqrt(2.0)))

_SQRT_2PI = float(np.sqrt(2.0 * np.pi))


def ghz_to_angular(nu_ghz):
    """Ordinary frequency in GHz -> angular frequency in rad/s."""
    return 2.0 * np.pi * 1e9 * np.asarray(nu_ghz, dtype=float)


def angular_to_ghz(omega):
    """Angular frequency in rad/s -> ordinary frequency in GHz."""
    return np.asarray(omega, dtype=float) / (2.0 * np.pi * 1e9)


def ps_to_s(t_ps):
    return np.asarray(t_ps, dtype=float) * 1e-12


def s_to_ps(t_s):
    return np.asarray(t_s, dtype=float) * 1e12


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform angular-detuning axis with n_points covering span around center.

    n_points must be a power of two (>= 16) so every spectrum on the grid can
    go through radix-2 FFTs.  The spacing is span / (n_points - 1): both
    endpoints are grid points.
    """

    n_points: int
    span: float
    center: float = 0.0

    def __post_init__(self):
        if not isinstance(self.n_points, (int, np.integer)):
            raise ValueError(f"n_points must be an integer, got {self.n_points!r}")
        if self.n_points < 16 or not is_power_of_two(int(self.n_points)):
            raise ValueError(
                f"n_points must be a power of two >= 16, got {self.n_points}"
            )
        if not self.span > 0:
            raise ValueError(f"span must be positive, got {self.span}")

    @property
    def spacing(self) -> float:
        return self.span / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(
            self.center - self.span / 2.0,
            self.center + self.span / 2.0,
            self.n_points,
        )

    def point(self, i: int) -> float:
        return self.center - self.span / 2.0 + i * self.spacing

    @property
    def time_spacing(self) -> float:
        # conjugate grid spans 2*pi/spacing with n_points samples
        return 2.0 * np.pi / (self.n_points * self.spacing)

    def time_points(self) -> np.ndarray:
        dt = self.time_spacing
        k = np.arange(self.n_points)
        return (k - self.n_points // 2) * dt


def make_grid(n_points: int, span: float, center: float = 0.0) -> FrequencyGrid:
    """Build a uniform detuning grid; rejects non-power-of-two sizes."""
    return FrequencyGrid(n_points=int(n_points), span=float(span), center=float(center))


@dataclass(frozen=True)
class PulseParams:
    """sech^2 spectral envelope parameters.

    sigma is the scale parameter of sech^2((omega - center)/sigma); the
    intensity FWHM is 2*arccosh(sqrt(2))*sigma and is exposed separately to
    keep the two conventions from being confused.
    """

    sigma: float
    center_detuning: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    @property
    def fwhm(self) -> float:
        return SECH2_FWHM_FACTOR * self.sigma

    @classmethod
    def from_fwhm(cls, fwhm: float, center_detuning: float = 0.0) -> "PulseParams":
        return cls(sigma=fwhm / SECH2_FWHM_FACTOR, center_detuning=center_detuning)


_PUMP_KINDS = (
    "single",
    "dual",
    "triple",
    "cascade",
    "train-constant",
    "train-cascade",
)


@dataclass(frozen=True)
class PumpSpec:
    """Declarative pump configuration.

    stages holds (eta, phase) pairs for the splitter cascade; delay_unit is
    the time offset between adjacent pulses, so pulse k sits at k*delay_unit
    unless explicit per-pulse delays are given.  Trains reuse either a single
    eta (train-cascade) or a constant tail amplitude ratio (train-constant).
    """

    kind: str
    base: PulseParams
    stages: tuple = ()
    delay_unit: float = 20e-12
    n_pulses: int = 1
    tail_ratio: float | None = None
    delays: tuple | None = None  # explicit per-pulse delays, cascade kinds only

    def __post_init__(self):
        if self.kind not in _PUMP_KINDS:
            raise ValueError(f"unknown pump kind {self.kind!r}")
        stages = tuple((float(e), float(p)) for e, p in self.stages)
        object.__setattr__(self, "stages", stages)
        for eta, _ in stages:
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"splitting ratio {eta} outside [0, 1]")
        if self.delay_unit < 0:
            raise ValueError(f"delay_unit must be >= 0, got {self.delay_unit}")
        n_stages = len(stages)
        if self.kind == "single" and n_stages != 0:
            raise ValueError("single pump takes no stages")
        if self.kind == "dual" and n_stages != 1:
            raise ValueError(f"dual pump needs exactly 1 stage, got {n_stages}")
        if self.kind == "triple" and n_stages != 2:
            raise ValueError(f"triple pump needs exactly 2 stages, got {n_stages}")
        if self.kind == "cascade" and not 1 <= n_stages <= 3:
            raise ValueError(f"cascade pump needs 1-3 stages, got {n_stages}")
        if self.kind.startswith("train"):
            if self.n_pulses < 1:
                raise ValueError(f"n_pulses must be >= 1, got {self.n_pulses}")
            if self.kind == "train-constant" and self.n_pulses > 1:
                if self.tail_ratio is None:
                    raise ValueError("train-constant requires tail_ratio")
                if not 0.0 <= self.tail_ratio <= 1.0:
                    raise ValueError(
                        f"tail_ratio {self.tail_ratio} outside [0, 1]"
                    )
            if self.kind == "train-cascade" and self.n_pulses > 1 and n_stages != 1:
                raise ValueError(
                    "train-cascade requires exactly one (eta, phase) stage"
                )
        if self.delays is not None:
            d = tuple(float(x) for x in self.delays)
            object.__setattr__(self, "delays", d)
            if len(d) != self.pulse_count:
                raise ValueError(
                    f"expected {self.pulse_count} explicit delays, got {len(d)}"
                )

    @property
    def pulse_count(self) -> int:
        if self.kind == "single":
            return 1
        if self.kind.startswith("train"):
            return self.n_pulses
        return len(self.stages) + 1

    def pulse_delays(self) -> np.ndarray:
        if self.delays is not None:
            return np.asarray(self.delays)
        return self.delay_unit * np.arange(self.pulse_count)


@dataclass(frozen=True)
class ResonatorParams:
    """Lorentzian FWHM linewidths (rad/s) of the pump/signal/idler resonances."""

    gamma_pump: float
    gamma_signal: float
    gamma_idler: float

    def __post_init__(self):
        for name in ("gamma_pump", "gamma_signal", "gamma_idler"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

    @classmethod
    def symmetric(cls, gamma: float) -> "ResonatorParams":
        return cls(gamma_pump=gamma, gamma_signal=gamma, gamma_idler=gamma)


@dataclass(frozen=True)
class ComplexSpectrum:
    """Complex amplitude sampled on a FrequencyGrid."""

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid.n_points,):
            raise ValueError(
                f"values shape {values.shape} does not match grid "
                f"({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("spectrum contains non-finite values")

    def energy(self) -> float:
        """L2 norm squared including the grid measure."""
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.spacing)

    def normalized(self) -> "ComplexSpectrum":
        e = self.energy()
        if e == 0.0:
            raise ValueError("cannot normalize an all-zero spectrum")
        return ComplexSpectrum(self.grid, self.values / np.sqrt(e))


def fourier_to_time(spectrum: ComplexSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """Inverse transform a(t) = (2*pi)^(-1/2) * Int alpha(w) exp(+i w t) dw.

    Symmetric (unitary) convention on the centered conjugate grids, so
    Parseval holds without extra factors:  sum |alpha|^2 dw = sum |a|^2 dt.
    Returns (time_axis, complex_values).
    """
    grid = spectrum.grid
    n = grid.n_points
    dw = grid.spacing
    t = grid.time_points()
    w_min = grid.center - grid.span / 2.0
    j = np.arange(n)
    # e^{i w_j t_k} split into FFT-compatible factors around the grid origins
    x = spectrum.values * np.exp(1j * j * dw * t[0])
    a = (dw / _SQRT_2PI) * np.exp(1j * w_min * t) * (n * np.fft.ifft(x))
    return t, a


def time_to_freq(
    grid: FrequencyGrid, time_values: np.ndarray
) -> ComplexSpectrum:
    """Forward transform back onto grid; exact inverse of fourier_to_time."""
    n = grid.n_points
    dw = grid.spacing
    dt = grid.time_spacing
    t = grid.time_points()
    w_min = grid.center - grid.span / 2.0
    j = np.arange(n)
    k = np.arange(n)
    x = np.asarray(time_values, dtype=complex) * np.exp(-1j * w_min * k * dt)
    vals = (
        (dt / _SQRT_2PI)
        * np.exp(-1j * (w_min * t[0] + j * dw * t[0]))
        * np.fft.fft(x)
    )
    return ComplexSpectrum(grid, vals)


@dataclass(frozen=True)
class JsaMatrix:
    """Discretized joint spectral amplitude over signal x idler detuning grids."""

    signal_grid: FrequencyGrid
    idler_grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", values)
        expected = (self.signal_grid.n_points, self.idler_grid.n_points)
        if values.shape != expected:
            raise ValueError(
                f"values shape {values.shape} does not match grids {expected}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("JSA contains non-finite values")

    @property
    def norm(self) -> float:
        """L2 norm including the grid measure."""
        measure = self.signal_grid.spacing * self.idler_grid.spacing
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * measure))

    def normalized(self) -> "JsaMatrix":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize an all-zero JSA")
        return JsaMatrix(self.signal_grid, self.idler_grid, self.values / n)
