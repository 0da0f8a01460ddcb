"""Parameter studies: linewidth calibration, splitting-ratio and phase
heatmaps, and n-pulse train purity curves, with deterministic parallel
execution.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .core import FrequencyGrid, PulseParams, PumpSpec, ResonatorParams
from .jsa import compute_jsa, default_jsa_grid, default_pump_grid
from .schmidt import purity

CALIBRATION_JSA_POINTS = 256
DEFAULT_SWEEP_JSA_POINTS = 256

# Reference dual-pulse configuration used for linewidth calibration: the
# best performing dual pulse, splitting ratio 0.55 with a 10 ps delay and a
# pi phase flip.
CALIBRATION_ETA = 0.55
CALIBRATION_DELAY = 10e-12
CALIBRATION_PHASE = np.pi


def _purity_of_spec(
    spec: PumpSpec, resonator: ResonatorParams, jsa_n: int
) -> float:
    gamma_min = min(resonator.gamma_signal, resonator.gamma_idler)
    grid = default_jsa_grid(spec.base.fwhm, gamma_min, jsa_n)
    return purity(compute_jsa(spec, resonator, grid, grid))


def dual_reference_purity(
    gamma: float,
    pump_fwhm: float,
    eta: float = CALIBRATION_ETA,
    delay: float = CALIBRATION_DELAY,
    phase: float = CALIBRATION_PHASE,
    jsa_n: int = CALIBRATION_JSA_POINTS,
) -> float:
    """Purity of the reference dual pulse at linewidth gamma (all three
    resonances share the same width)."""
    spec = PumpSpec(
        kind="dual",
        base=PulseParams.from_fwhm(pump_fwhm),
        stages=((eta, phase),),
        delay_unit=delay,
    )
    return _purity_of_spec(spec, ResonatorParams.symmetric(gamma), jsa_n)


@dataclass(frozen=True)
class CalibrationResult:
    gamma: float  # rad/s FWHM maximizing the reference dual purity
    purity: float
    bracketed: bool  # False: scan argmax hit a range edge, no refinement
    scan_gammas: np.ndarray
    scan_purities: np.ndarray


def calibrate_linewidth(
    pump_fwhm: float,
    gamma_range: tuple[float, float],
    eta: float = CALIBRATION_ETA,
    delay: float = CALIBRATION_DELAY,
    phase: float = CALIBRATION_PHASE,
    n_scan: int = 64,
    jsa_n: int = CALIBRATION_JSA_POINTS,
) -> CalibrationResult:
    """Find the ring linewidth that makes the reference dual pulse optimal.

    A 64-point log-spaced scan brackets the maximum, then golden-section
    refinement (in log gamma) narrows it down.  If the scan argmax sits on a
    range edge the purity is not bracketed and the edge value is returned
    with bracketed=False.
    """
    lo, hi = gamma_range
    if not (0 < lo < hi):
        raise ValueError(f"need 0 < lo < hi, got {gamma_range}")
    gammas = np.logspace(np.log10(lo), np.log10(hi), n_scan)
    purities = np.array(
        [
            dual_reference_purity(g, pump_fwhm, eta, delay, phase, jsa_n)
            for g in gammas
        ]
    )
    k = int(np.argmax(purities))
    if k == 0 or k == n_scan - 1:
        return CalibrationResult(
            gamma=float(gammas[k]),
            purity=float(purities[k]),
            bracketed=False,
            scan_gammas=gammas,
            scan_purities=purities,
        )

    def objective(log_g):
        return -dual_reference_purity(
            float(np.exp(log_g)), pump_fwhm, eta, delay, phase, jsa_n
        )

    bracket = (np.log(gammas[k - 1]), np.log(gammas[k]), np.log(gammas[k + 1]))
    res = minimize_scalar(
        objective, bracket=bracket, method="golden", options={"xtol": 1e-4}
    )
    gamma_star = float(np.exp(res.x))
    return CalibrationResult(
        gamma=gamma_star,
        purity=float(-res.fun),
        bracketed=True,
        scan_gammas=gammas,
        scan_purities=purities,
    )


@dataclass(frozen=True)
class SweepJob:
    """Descriptor for a purity sweep; fully determines the output.

    kind 'eta' varies the two splitting ratios of a triple pulse over
    (axis1, axis2) at fixed phases; 'phase' varies the two phases at fixed
    etas; 'train' varies the pulse count (2..n_max encoded in axis1) per
    delay in axis2.
    """

    kind: str
    base: PulseParams
    resonator: ResonatorParams
    axis1: tuple
    axis2: tuple
    delays: tuple = (20e-12, 40e-12)  # triple-pulse delays (eta/phase kinds)
    phases: tuple = (np.pi, np.pi)  # fixed phases (eta kind)
    etas: tuple = (0.8, 0.8)  # fixed ratios (phase kind)
    train_kind: str = "train-cascade"
    train_eta: float | None = None
    tail_ratio: float | None = None
    jsa_n: int = DEFAULT_SWEEP_JSA_POINTS
    workers: int | None = None

    def __post_init__(self):
        if self.kind not in ("eta", "phase", "train"):
            raise ValueError(f"unknown sweep kind {self.kind!r}")
        object.__setattr__(self, "axis1", tuple(float(x) for x in self.axis1))
        object.__setattr__(self, "axis2", tuple(float(x) for x in self.axis2))
        if len(self.axis1) == 0 or len(self.axis2) == 0:
            raise ValueError("sweep axes must be non-empty")
        if self.kind == "eta":
            for x in (*self.axis1, *self.axis2):
                if not 0.0 <= x <= 1.0:
                    raise ValueError(f"splitting ratio {x} outside [0, 1]")
        if self.kind == "train":
            if self.train_kind not in ("train-constant", "train-cascade"):
                raise ValueError(f"unknown train kind {self.train_kind!r}")
            if self.train_kind == "train-cascade" and self.train_eta is None:
                raise ValueError("train-cascade sweep requires train_eta")
            if self.train_kind == "train-constant" and self.tail_ratio is None:
                raise ValueError("train-constant sweep requires tail_ratio")
            for n in self.axis1:
                if n < 1 or n != int(n):
                    raise ValueError(f"pulse counts must be integers >= 1, got {n}")


def _cell_spec(job: SweepJob, x1: float, x2: float) -> PumpSpec:
    if job.kind == "eta":
        return PumpSpec(
            kind="triple",
            base=job.base,
            stages=((x1, job.phases[0]), (x2, job.phases[1])),
            delays=(0.0,) + tuple(job.delays),
        )
    if job.kind == "phase":
        return PumpSpec(
            kind="triple",
            base=job.base,
            stages=((job.etas[0], x1), (job.etas[1], x2)),
            delays=(0.0,) + tuple(job.delays),
        )
    # train: x1 = pulse count, x2 = delay
    n = int(x1)
    if job.train_kind == "train-cascade":
        return PumpSpec(
            kind="train-cascade",
            base=job.base,
            stages=((job.train_eta, np.pi),),
            delay_unit=x2,
            n_pulses=n,
        )
    return PumpSpec(
        kind="train-constant",
        base=job.base,
        delay_unit=x2,
        n_pulses=n,
        tail_ratio=job.tail_ratio,
    )


def _evaluate_cell(args):
    job, x1, x2 = args
    try:
        spec = _cell_spec(job, x1, x2)
        return _purity_of_spec(spec, job.resonator, job.jsa_n), None
    except Exception as exc:  # per-cell failures must not abort the sweep
        return float("nan"), f"{type(exc).__name__}: {exc}"


@dataclass(frozen=True)
class SweepResult:
    values: np.ndarray  # axis1 x axis2, row-major
    axis1: tuple
    axis2: tuple
    metadata: dict = field(default_factory=dict)
    diagnostics: tuple = ()


def run_sweep_job(job: SweepJob) -> SweepResult:
    """Evaluate every cell of the sweep; results are merged in axis order so
    the output is identical for any worker count."""
    cells = [(job, x1, x2) for x1 in job.axis1 for x2 in job.axis2]
    t0 = time.perf_counter()
    if job.workers is None or job.workers <= 1:
        outcomes = [_evaluate_cell(c) for c in cells]
    else:
        with ProcessPoolExecutor(max_workers=job.workers) as pool:
            chunk = max(1, len(cells) // (4 * job.workers))
            outcomes = list(pool.map(_evaluate_cell, cells, chunksize=chunk))
    elapsed = time.perf_counter() - t0

    n1, n2 = len(job.axis1), len(job.axis2)
    values = np.array([p for p, _ in outcomes]).reshape(n1, n2)
    diagnostics = tuple(
        (divmod(i, n2), msg) for i, (_, msg) in enumerate(outcomes) if msg
    )
    gamma_min = min(job.resonator.gamma_signal, job.resonator.gamma_idler)
    jsa_grid = default_jsa_grid(job.base.fwhm, gamma_min, job.jsa_n)
    pump_grid = default_pump_grid(job.base.fwhm, job.resonator.gamma_pump)
    metadata = {
        "kind": job.kind,
        "gamma_pump": job.resonator.gamma_pump,
        "gamma_signal": job.resonator.gamma_signal,
        "gamma_idler": job.resonator.gamma_idler,
        "pump_fwhm": job.base.fwhm,
        "jsa_n": job.jsa_n,
        "jsa_span": jsa_grid.span,
        "pump_grid_n": pump_grid.n_points,
        "pump_grid_span": pump_grid.span,
        "elapsed_s": elapsed,
        "n_failures": len(diagnostics),
    }
    return SweepResult(
        values=values,
        axis1=job.axis1,
        axis2=job.axis2,
        metadata=metadata,
        diagnostics=diagnostics,
    )


def sweep_eta(
    resonator: ResonatorParams,
    base: PulseParams,
    eta1_axis,
    eta2_axis,
    delays=(20e-12, 40e-12),
    phases=(np.pi, np.pi),
    jsa_n: int = DEFAULT_SWEEP_JSA_POINTS,
    workers: int | None = None,
) -> SweepResult:
    """Triple-pulse purity over the (eta1, eta2) plane at fixed delays/phases."""
    job = SweepJob(
        kind="eta",
        base=base,
        resonator=resonator,
        axis1=tuple(eta1_axis),
        axis2=tuple(eta2_axis),
        delays=tuple(delays),
        phases=tuple(phases),
        jsa_n=jsa_n,
        workers=workers,
    )
    return run_sweep_job(job)


def sweep_phase(
    resonator: ResonatorParams,
    base: PulseParams,
    phi1_axis,
    phi2_axis,
    etas=(0.8, 0.8),
    delays=(20e-12, 40e-12),
    jsa_n: int = DEFAULT_SWEEP_JSA_POINTS,
    workers: int | None = None,
) -> SweepResult:
    """Triple-pulse purity over the (phi1, phi2) plane at fixed etas/delays."""
    job = SweepJob(
        kind="phase",
        base=base,
        resonator=resonator,
        axis1=tuple(phi1_axis),
        axis2=tuple(phi2_axis),
        delays=tuple(delays),
        etas=tuple(etas),
        jsa_n=jsa_n,
        workers=workers,
    )
    return run_sweep_job(job)


def sweep_train(
    resonator: ResonatorParams,
    base: PulseParams,
    kind: str,
    delay_list,
    n_max: int,
    eta: float | None = None,
    tail_ratio: float | None = None,
    jsa_n: int = DEFAULT_SWEEP_JSA_POINTS,
    workers: int | None = None,
) -> SweepResult:
    """Purity vs pulse count n = 1..n_max for each delay in delay_list."""
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    job = SweepJob(
        kind="train",
        base=base,
        resonator=resonator,
        axis1=tuple(float(n) for n in range(1, n_max + 1)),
        axis2=tuple(delay_list),
        train_kind=kind,
        train_eta=eta,
        tail_ratio=tail_ratio,
        jsa_n=jsa_n,
        workers=workers,
    )
    return run_sweep_job(job)
