"""Run configuration: TOML parsing, validation and defaults.

CLI-facing units are ordinary-frequency GHz and ps; conversion to angular
rad/s and seconds happens here and nowhere deeper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .core import PulseParams, PumpSpec, ResonatorParams, ghz_to_angular, ps_to_s

# Pump FWHM of the reference source, ordinary frequency.
DEFAULT_PUMP_FWHM_GHZ = 41.0

# Project default ring linewidth (ordinary-frequency GHz), the output of
# calibrate_linewidth for the 41 GHz pump and the reference dual pulse
# (eta 0.55, 10 ps delay, pi phase).  Re-derivable with the `calibrate`
# subcommand.
DEFAULT_GAMMA_GHZ = 1.8804


class ConfigError(ValueError):
    """Carries every validation problem found in a config file."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("invalid configuration:\n  " + "\n  ".join(self.problems))


@dataclass
class PumpConfig:
    fwhm_ghz: float = DEFAULT_PUMP_FWHM_GHZ
    kind: str = "single"
    stages: list = field(default_factory=list)  # [eta, phase_rad] pairs
    delay_ps: float = 20.0
    delays_ps: list | None = None  # explicit per-pulse delays
    n_pulses: int = 1
    tail_ratio: float | None = None


@dataclass
class ResonatorConfig:
    gamma_ghz: float = DEFAULT_GAMMA_GHZ


@dataclass
class GridConfig:
    n: int = 512
    span_factor: float = 10.0  # span = min(span_factor*fwhm, (n-1)*gamma/4)


@dataclass
class SweepConfig:
    kind: str = "eta"
    axis1: list = field(default_factory=lambda: [0.0, 1.0, 41])  # lo, hi, count
    axis2: list = field(default_factory=lambda: [0.0, 1.0, 41])
    delays_ps: list = field(default_factory=lambda: [20.0, 40.0])
    phases: list = field(default_factory=lambda: [math.pi, math.pi])
    etas: list = field(default_factory=lambda: [0.8, 0.8])
    train_kind: str = "train-cascade"
    eta: float = 0.55
    tail_ratio: float | None = None
    n_max: int = 8
    jsa_n: int = 256
    workers: int = 1


@dataclass
class CalibrateConfig:
    gamma_lo_ghz: float = 0.5
    gamma_hi_ghz: float = 30.0
    n_scan: int = 64
    jsa_n: int = 256


@dataclass
class MeasuredConfig:
    path: str = ""
    format: str | None = None  # 'long' | 'matrix' | None = infer
    floor: float = 0.0


@dataclass
class RunConfig:
    pump: PumpConfig = field(default_factory=PumpConfig)
    resonator: ResonatorConfig = field(default_factory=ResonatorConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    calibrate: CalibrateConfig = field(default_factory=CalibrateConfig)
    measured: MeasuredConfig = field(default_factory=MeasuredConfig)

    def pulse_params(self) -> PulseParams:
        return PulseParams.from_fwhm(ghz_to_angular(self.pump.fwhm_ghz))

    def resonator_params(self) -> ResonatorParams:
        return ResonatorParams.symmetric(ghz_to_angular(self.resonator.gamma_ghz))

    def pump_spec(self) -> PumpSpec:
        p = self.pump
        delays = None
        if p.delays_ps is not None:
            delays = tuple(float(ps_to_s(d)) for d in p.delays_ps)
        return PumpSpec(
            kind=p.kind,
            base=self.pulse_params(),
            stages=tuple((e, ph) for e, ph in p.stages),
            delay_unit=float(ps_to_s(p.delay_ps)),
            n_pulses=p.n_pulses,
            tail_ratio=p.tail_ratio,
            delays=delays,
        )

    def comment_lines(self) -> list[str]:
        """Flat key = value listing of the fully resolved configuration."""
        from . import __version__

        lines = [f"ringpurity {__version__}"]
        for section in ("pump", "resonator", "grid", "sweep", "calibrate", "measured"):
            obj = getattr(self, section)
            for key, value in vars(obj).items():
                lines.append(f"{section}.{key} = {value!r}")
        return lines


_RANGES = {
    ("pump", "fwhm_ghz"): (lambda v: v > 0, "must be > 0"),
    ("pump", "delay_ps"): (lambda v: v >= 0, "must be >= 0"),
    ("pump", "n_pulses"): (lambda v: v >= 1, "must be >= 1"),
    ("pump", "tail_ratio"): (lambda v: 0 <= v <= 1, "must be in [0, 1]"),
    ("resonator", "gamma_ghz"): (lambda v: v > 0, "must be > 0"),
    ("grid", "n"): (lambda v: v >= 16, "must be >= 16"),
    ("grid", "span_factor"): (lambda v: v > 0, "must be > 0"),
    ("sweep", "eta"): (lambda v: 0 <= v <= 1, "must be in [0, 1]"),
    ("sweep", "tail_ratio"): (lambda v: 0 <= v <= 1, "must be in [0, 1]"),
    ("sweep", "n_max"): (lambda v: v >= 2, "must be >= 2"),
    ("sweep", "workers"): (lambda v: v >= 1, "must be >= 1"),
    ("calibrate", "gamma_lo_ghz"): (lambda v: v > 0, "must be > 0"),
    ("calibrate", "gamma_hi_ghz"): (lambda v: v > 0, "must be > 0"),
    ("calibrate", "n_scan"): (lambda v: v >= 4, "must be >= 4"),
    ("measured", "floor"): (lambda v: v >= 0, "must be >= 0"),
}

_CHOICES = {
    ("pump", "kind"): (
        "single",
        "dual",
        "triple",
        "cascade",
        "train-constant",
        "train-cascade",
    ),
    ("sweep", "kind"): ("eta", "phase", "train"),
    ("sweep", "train_kind"): ("train-constant", "train-cascade"),
    ("measured", "format"): ("long", "matrix"),
}


def _apply_section(cfg_obj, section: str, data: dict, problems: list) -> None:
    known = vars(cfg_obj)
    for key, value in data.items():
        if key not in known:
            problems.append(f"unknown key {section}.{key}")
            continue
        check = _RANGES.get((section, key))
        if check is not None and isinstance(value, (int, float)):
            ok, msg = check[0](value), check[1]
            if not ok:
                problems.append(f"{section}.{key} = {value!r} {msg}")
                continue
        choices = _CHOICES.get((section, key))
        if choices is not None and value not in choices:
            problems.append(
                f"{section}.{key} = {value!r} must be one of {choices}"
            )
            continue
        setattr(cfg_obj, key, value)


def _validate_stages(cfg: RunConfig, problems: list) -> None:
    for idx, stage in enumerate(cfg.pump.stages):
        if not (isinstance(stage, (list, tuple)) and len(stage) == 2):
            problems.append(
                f"pump.stages[{idx}] must be an [eta, phase] pair, got {stage!r}"
            )
            continue
        eta = stage[0]
        if not 0 <= eta <= 1:
            problems.append(f"pump.stages[{idx}] eta = {eta!r} must be in [0, 1]")


def parse_config(path) -> RunConfig:
    """Parse and validate a TOML run configuration; an empty file yields all
    defaults.  Every problem is collected and reported together."""
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError([f"TOML parse error: {exc}"]) from None
    return resolve_config(data)


def resolve_config(data: dict) -> RunConfig:
    cfg = RunConfig()
    problems: list[str] = []
    sections = vars(cfg)
    for section, content in data.items():
        if section not in sections:
            problems.append(f"unknown section [{section}]")
            continue
        if not isinstance(content, dict):
            problems.append(f"[{section}] must be a table")
            continue
        _apply_section(getattr(cfg, section), section, content, problems)
    _validate_stages(cfg, problems)
    if cfg.calibrate.gamma_lo_ghz >= cfg.calibrate.gamma_hi_ghz:
        problems.append("calibrate.gamma_lo_ghz must be below gamma_hi_ghz")
    if problems:
        raise ConfigError(problems)
    # cross-field checks that need the domain constructors
    try:
        cfg.pump_spec()
    except ValueError as exc:
        raise ConfigError([f"pump: {exc}"]) from None
    return cfg


SEED_CONFIG = """\
# ringpurity run configuration (TOML).  Units at this boundary are
# ordinary-frequency GHz, time in ps, phases in radians.

[pump]
fwhm_ghz = 41.0          # sech^2 intensity FWHM of the base pulse
kind = "single"          # single | dual | triple | cascade | train-constant | train-cascade
stages = []              # [[eta, phase], ...] splitter stages, e.g. [[0.8, 3.14159265], [0.8, 3.14159265]]
delay_ps = 20.0          # delay between adjacent pulses
# delays_ps = [0.0, 20.0, 40.0]   # explicit per-pulse delays (optional)
n_pulses = 1             # trains only
# tail_ratio = 0.3       # train-constant only

[resonator]
gamma_ghz = 1.8804       # ring linewidth; default from the calibrate subcommand

[grid]
n = 512                  # samples per JSA axis (power of two)
span_factor = 10.0       # axis span = min(span_factor * fwhm, (n - 1) * gamma / 4)

[sweep]
kind = "eta"             # eta | phase | train
axis1 = [0.0, 1.0, 41]   # lo, hi, count
axis2 = [0.0, 1.0, 41]
delays_ps = [20.0, 40.0]
phases = [3.14159265358979, 3.14159265358979]   # fixed phases for kind = "eta"
etas = [0.8, 0.8]        # fixed ratios for kind = "phase"
train_kind = "train-cascade"
eta = 0.55               # train-cascade splitting ratio
# tail_ratio = 0.3       # train-constant amplitude ratio
n_max = 8
jsa_n = 256
workers = 1

[calibrate]
gamma_lo_ghz = 0.5
gamma_hi_ghz = 30.0
n_scan = 64
jsa_n = 256

[measured]
path = ""                # measured JSI file (long-CSV or matrix-CSV)
# format = "long"        # long | matrix; omitted = infer
floor = 0.0              # clamp threshold before sqrt
"""
