"""Command-line surface: every study's dataset as CSV/PGM exports.

Subcommands: pulse, field, jsa, sweep, calibrate, measured.  All take a TOML
config (-c) and an output directory (-o); every output file embeds the fully
resolved configuration as '#' comments.  Exit code is 0 on success, 1 on any
validation error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import ConfigError, RunConfig, SEED_CONFIG, parse_config
from .core import (
    FrequencyGrid,
    angular_to_ghz,
    fourier_to_time,
    ghz_to_angular,
    ps_to_s,
    s_to_ps,
)
from .jsa import compute_jsa, default_jsa_grid, jsi
from .measured import JsiFormatError, estimate_purity_from_jsi, load_jsi
from .output import write_heatmap_pgm, write_table
from .pumps import envelope
from .resonator import default_field_grid, field_report
from .schmidt import schmidt_decompose, schmidt_number
from .sweeps import calibrate_linewidth, sweep_eta, sweep_phase, sweep_train


def _load_config(args) -> RunConfig:
    if args.config is None:
        return RunConfig()
    return parse_config(args.config)


def _outdir(args) -> Path:
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _spectrum_rows(grid: FrequencyGrid, values: np.ndarray):
    freqs = angular_to_ghz(grid.points())
    return [
        [f, v.real, v.imag, abs(v) ** 2] for f, v in zip(freqs, values)
    ]


def _time_rows(t: np.ndarray, values: np.ndarray):
    return [
        [tp, v.real, v.imag, abs(v) ** 2] for tp, v in zip(s_to_ps(t), values)
    ]


def cmd_pulse(args) -> int:
    cfg = _load_config(args)
    out = _outdir(args)
    comments = cfg.comment_lines()
    grid = default_field_grid(cfg.pulse_params().fwhm)
    pump = envelope(cfg.pump_spec(), grid)
    t, a = fourier_to_time(pump)
    write_table(
        _spectrum_rows(grid, pump.values),
        out / "pulse_spectrum.csv",
        header=["detuning_ghz", "re", "im", "abs2"],
        comments=comments,
    )
    write_table(
        _time_rows(t, a),
        out / "pulse_time.csv",
        header=["time_ps", "re", "im", "abs2"],
        comments=comments,
    )
    print(f"wrote {out / 'pulse_spectrum.csv'} and {out / 'pulse_time.csv'}")
    return 0


def cmd_field(args) -> int:
    cfg = _load_config(args)
    out = _outdir(args)
    comments = cfg.comment_lines()
    grid = default_field_grid(cfg.pulse_params().fwhm)
    report = field_report(cfg.pump_spec(), cfg.resonator_params(), grid)
    write_table(
        _spectrum_rows(grid, report.spectral.values),
        out / "field_spectrum.csv",
        header=["detuning_ghz", "re", "im", "abs2"],
        comments=comments,
    )
    write_table(
        _time_rows(report.time_axis, report.temporal),
        out / "field_time.csv",
        header=["time_ps", "re", "im", "abs2"],
        comments=comments,
    )
    print(f"wrote {out / 'field_spectrum.csv'} and {out / 'field_time.csv'}")
    return 0


def cmd_jsa(args) -> int:
    cfg = _load_config(args)
    out = _outdir(args)
    comments = cfg.comment_lines()
    resonator = cfg.resonator_params()
    base = cfg.pulse_params()
    span = min(
        cfg.grid.span_factor * base.fwhm,
        (cfg.grid.n - 1) * resonator.gamma_signal / 4.0,
    )
    grid = FrequencyGrid(n_points=cfg.grid.n, span=span)
    matrix = compute_jsa(cfg.pump_spec(), resonator, grid, grid)
    result = schmidt_decompose(matrix)
    pur = float(np.sum(result.coeffs**2))
    intensity = jsi(matrix)
    summary_comments = comments + [
        f"purity = {pur:.9g}",
        f"schmidt_number = {1.0 / pur:.9g}",
    ]
    write_heatmap_pgm(
        intensity, out / "jsi.pgm", scale=(0.0, 1.0), comments=summary_comments
    )
    axis = angular_to_ghz(grid.points())
    write_table(
        [[v] for v in axis],
        out / "jsa_axis_ghz.csv",
        header=["detuning_ghz"],
        comments=comments,
    )
    top = result.coeffs[:8]
    write_table(
        [[pur, 1.0 / pur, *top]],
        out / "jsa_summary.csv",
        header=["purity", "schmidt_number"]
        + [f"lambda_{k}" for k in range(len(top))],
        comments=comments,
    )
    print(f"purity = {pur:.6f}")
    print(f"wrote {out / 'jsi.pgm'}, {out / 'jsi.csv'}, {out / 'jsa_summary.csv'}")
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    out = _outdir(args)
    comments = cfg.comment_lines()
    resonator = cfg.resonator_params()
    base = cfg.pulse_params()
    sw = cfg.sweep
    if sw.kind == "train":
        result = sweep_train(
            resonator,
            base,
            sw.train_kind,
            [float(ps_to_s(d)) for d in sw.delays_ps],
            sw.n_max,
            eta=sw.eta,
            tail_ratio=sw.tail_ratio,
            jsa_n=sw.jsa_n,
            workers=sw.workers,
        )
        rows = [
            [int(n), *result.values[i]] for i, n in enumerate(result.axis1)
        ]
        write_table(
            rows,
            out / "train_purity.csv",
            header=["n_pulses"]
            + [f"delay_{d:g}ps" for d in sw.delays_ps],
            comments=comments,
        )
        print(f"wrote {out / 'train_purity.csv'}")
        return 0

    axis1 = np.linspace(sw.axis1[0], sw.axis1[1], int(sw.axis1[2]))
    axis2 = np.linspace(sw.axis2[0], sw.axis2[1], int(sw.axis2[2]))
    delays = [float(ps_to_s(d)) for d in sw.delays_ps]
    if sw.kind == "eta":
        result = sweep_eta(
            resonator,
            base,
            axis1,
            axis2,
            delays=delays,
            phases=tuple(sw.phases),
            jsa_n=sw.jsa_n,
            workers=sw.workers,
        )
    else:
        result = sweep_phase(
            resonator,
            base,
            axis1,
            axis2,
            etas=tuple(sw.etas),
            delays=delays,
            jsa_n=sw.jsa_n,
            workers=sw.workers,
        )
    n_nan = write_heatmap_pgm(
        result.values, out / "sweep.pgm", scale=(0.0, 1.0), comments=comments
    )
    write_table(
        [[a] for a in axis1],
        out / "sweep_axis1.csv",
        header=[f"{sw.kind}_axis1"],
        comments=comments,
    )
    write_table(
        [[a] for a in axis2],
        out / "sweep_axis2.csv",
        header=[f"{sw.kind}_axis2"],
        comments=comments,
    )
    if result.diagnostics:
        print(f"{len(result.diagnostics)} cells failed (NaN in output):")
        for (i, j), msg in result.diagnostics[:10]:
            print(f"  cell ({i}, {j}): {msg}")
    print(f"wrote {out / 'sweep.pgm'} and {out / 'sweep.csv'} ({n_nan} NaN cells)")
    return 0


def cmd_calibrate(args) -> int:
    cfg = _load_config(args)
    out = _outdir(args)
    cal = cfg.calibrate
    result = calibrate_linewidth(
        cfg.pulse_params().fwhm,
        (
            float(ghz_to_angular(cal.gamma_lo_ghz)),
            float(ghz_to_angular(cal.gamma_hi_ghz)),
        ),
        n_scan=cal.n_scan,
        jsa_n=cal.jsa_n,
    )
    gamma_ghz = float(angular_to_ghz(result.gamma))
    comments = cfg.comment_lines() + [
        f"gamma_star_ghz = {gamma_ghz:.9g}",
        f"purity_at_gamma_star = {result.purity:.9g}",
        f"bracketed = {result.bracketed}",
    ]
    rows = [
        [float(angular_to_ghz(g)), p]
        for g, p in zip(result.scan_gammas, result.scan_purities)
    ]
    write_table(
        rows,
        out / "calibration_scan.csv",
        header=["gamma_ghz", "purity"],
        comments=comments,
    )
    if not result.bracketed:
        print("warning: purity maximum not bracketed; returning scan argmax")
    print(f"gamma* = {gamma_ghz:.4f} GHz (purity {result.purity:.6f})")
    print(f"wrote {out / 'calibration_scan.csv'}")
    return 0


def cmd_measured(args) -> int:
    cfg = _load_config(args)
    out = _outdir(args)
    if not cfg.measured.path:
        raise ConfigError(["measured.path is required for the measured subcommand"])
    grid = load_jsi(cfg.measured.path, fmt=cfg.measured.format)
    estimate = estimate_purity_from_jsi(grid, floor=cfg.measured.floor)
    comments = cfg.comment_lines() + [
        "phase_blind estimate from sqrt(JSI); spectral phase is discarded"
    ]
    top = estimate.schmidt_coeffs[:8]
    write_table(
        [[estimate.purity, 1.0 / estimate.purity, *top]],
        out / "measured_purity.csv",
        header=["purity", "schmidt_number"]
        + [f"lambda_{k}" for k in range(len(top))],
        comments=comments,
    )
    print(f"phase-blind purity estimate = {estimate.purity:.6f}")
    print(f"wrote {out / 'measured_purity.csv'}")
    return 0


_COMMANDS = {
    "pulse": cmd_pulse,
    "field": cmd_field,
    "jsa": cmd_jsa,
    "sweep": cmd_sweep,
    "calibrate": cmd_calibrate,
    "measured": cmd_measured,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringpurity",
        description="Spectral-purity simulator for shaped-pump ring-resonator "
        "photon-pair sources",
    )
    parser.add_argument(
        "--version", action="version", version=f"ringpurity {__version__}"
    )
    parser.add_argument(
        "--seed-config",
        action="store_true",
        help="print a commented default configuration and exit",
    )
    sub = parser.add_subparsers(dest="command")
    for name, fn in _COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__)
        p.add_argument("-c", "--config", default=None, help="TOML config file")
        p.add_argument(
            "-o", "--output", default=".", help="output directory (default: cwd)"
        )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed_config:
        sys.stdout.write(SEED_CONFIG)
        return 0
    if args.command is None:
        parser.print_help()
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, JsiFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
