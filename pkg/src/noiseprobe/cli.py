"""Command-line front end: sweep data files and validation suites.

All figure-style outputs are emitted as CSV/JSON data (plotting is left to
external tools).  Every command is deterministic given its flags and seed;
files are written atomically (temp file, then rename).

Exit codes: 0 success, 1 validation failure, 2 configuration error.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from pathlib import Path

import click
import numpy as np

from .colored import lambda_quadrature, lambda_series, SeriesConfig
from .dephasing import rtn_decay
from .estimation import qfi_colored, qfi_rtn
from .montecarlo import cr_saturation_study, mc_rtn_coefficient, mle_parameter, \
    simulate_population_shots
from .noise import ColoredParams, RtnParams
from .optimize import SearchConfig, approx_optimal_time_rtn, nmax_scan, optimal_time_rtn, \
    qsnr_profile
from .dephasing import ProbePreparation, evolve, rtn_coefficient

OUTDIR_ENV = "NOISEPROBE_OUTDIR"


def _outdir(out: str | None) -> Path:
    base = Path(out) if out else Path(os.environ.get(OUTDIR_ENV, "."))
    base.mkdir(parents=True, exist_ok=True)
    return base


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _write_rows(path: Path, header: list[str], rows, fmt: str) -> None:
    rows = [[float(v) if isinstance(v, (np.floating, float)) else v for v in r] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([[repr(v) if isinstance(v, float) else v for v in r] for r in rows])
        _atomic_write(path, buf.getvalue())
    else:
        records = [dict(zip(header, r)) for r in rows]
        _atomic_write(path, json.dumps(records, indent=2, sort_keys=True) + "\n")


def _write_json(path: Path, obj) -> None:
    _atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _parse_grid(text: str, log: bool = False) -> np.ndarray:
    """Parse 'start,stop,count' into a linear or log-spaced grid."""
    try:
        parts = text.split(",")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise click.UsageError(f"grid must be 'start,stop,count', got {text!r}")
    if n < 1 or not hi > lo:
        raise click.UsageError(f"empty or unordered grid: {text!r}")
    return np.geomspace(lo, hi, n) if log else np.linspace(lo, hi, n)


def _parse_window(text: str) -> tuple[float, float]:
    try:
        g1, g2 = (float(v) for v in text.split(","))
    except ValueError:
        raise click.UsageError(f"window must be 'gamma1,gamma2', got {text!r}")
    if not 0 < g1 < g2:
        raise click.UsageError(f"need 0 < gamma1 < gamma2, got {text!r}")
    return g1, g2


fmt_option = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                          default="csv", show_default=True)
out_option = click.option("--out", default=None,
                          help=f"Output directory (default: ${OUTDIR_ENV} or cwd).")
window_option = click.option("--window", default="1e-2,1e2", show_default=True,
                             help="Rate window 'gamma1,gamma2'.")
seed_option = click.option("--seed", type=int, default=12345, show_default=True)


@click.group()
def main():
    """Qubit probes of classical noise: sweeps, estimates, and validation."""


@main.command("rtn-qfi")
@click.option("--gamma-grid", default="0.05,10,40", show_default=True,
              help="Log-spaced switching-rate grid 'start,stop,count'.")
@click.option("--tau-grid", default="0.05,15,300", show_default=True,
              help="Interaction-time grid 'start,stop,count'.")
@fmt_option
@out_option
def cmd_rtn_qfi(gamma_grid, tau_grid, fmt, out):
    """QFI surface H(tau, gamma) for telegraph noise."""
    gammas = _parse_grid(gamma_grid, log=True)
    taus = _parse_grid(tau_grid)
    rows = []
    for g in gammas:
        for t in taus:
            rep = qfi_rtn(float(t), RtnParams(float(g)))
            rows.append([t, g, rep.qfi, rep.qsnr])
    path = _outdir(out) / f"fig1_surface.{fmt}"
    _write_rows(path, ["tau", "gamma", "qfi", "qsnr"], rows, fmt)
    click.echo(str(path))


@main.command("optimal-time")
@click.option("--gamma-grid", default="1e-2,1e2,60", show_default=True,
              help="Log-spaced switching-rate grid 'start,stop,count'.")
@fmt_option
@out_option
def cmd_optimal_time(gamma_grid, fmt, out):
    """Optimal interaction time staircase with the closed-form approximation."""
    gammas = _parse_grid(gamma_grid, log=True)
    rows = []
    for g in gammas:
        rec = optimal_time_rtn(RtnParams(float(g)))
        approx = approx_optimal_time_rtn(RtnParams(float(g)))
        rows.append([g, rec.tau_opt, approx, math.pi / (4 * g), rec.qfi_max,
                     abs(rec.tau_opt - approx)])
    path = _outdir(out) / f"fig2_staircase.{fmt}"
    _write_rows(path, ["gamma", "tau_opt", "tau_approx", "pi_over_4gamma", "qfi_max",
                       "deviation"], rows, fmt)
    click.echo(str(path))


@main.command("colored-scan")
@click.option("--alpha-grid", default="0.5,2,16", show_default=True)
@click.option("--tau-grid", default="0.1,10,100", show_default=True,
              help="Time grid for the QSNR surface file.")
@click.option("--n-list", default="1,10,50", show_default=True,
              help="Comma-separated fluctuator counts for the profiles file.")
@click.option("--nmax-range", default=None,
              help="Optional 'min,max' count range; adds the count-scan file.")
@window_option
@fmt_option
@out_option
def cmd_colored_scan(alpha_grid, tau_grid, n_list, nmax_range, window, fmt, out):
    """Colored-noise QSNR surface, time-maximized profiles, and count scan."""
    alphas = _parse_grid(alpha_grid)
    taus = _parse_grid(tau_grid)
    win = _parse_window(window)
    try:
        counts = [int(v) for v in n_list.split(",")]
    except ValueError:
        raise click.UsageError(f"bad count list {n_list!r}")
    outdir = _outdir(out)

    rows = []
    n_surface = counts[0]
    for a in alphas:
        params = ColoredParams(float(a), win[0], win[1], n_surface)
        for t in taus:
            rep = qfi_colored(float(t), params)
            rows.append([t, a, n_surface, rep.qsnr])
    surface = outdir / f"fig3_qsnr_surface.{fmt}"
    _write_rows(surface, ["tau", "alpha", "n_fluctuators", "qsnr"], rows, fmt)
    click.echo(str(surface))

    rows = []
    for n in counts:
        for rec in qsnr_profile(alphas, n, win):
            rows.append([rec.parameter, n, rec.tau_opt, rec.qfi_max, rec.qsnr_max])
    profiles = outdir / f"fig4_profiles.{fmt}"
    _write_rows(profiles, ["alpha", "n_fluctuators", "tau_opt", "qfi_max", "qsnr_max"],
                rows, fmt)
    click.echo(str(profiles))

    if nmax_range is not None:
        try:
            n_lo, n_hi = (int(v) for v in nmax_range.split(","))
        except ValueError:
            raise click.UsageError(f"bad count range {nmax_range!r}")
        rows = []
        for a in alphas:
            n_max, rec = nmax_scan(float(a), (n_lo, n_hi), win)
            rows.append([a, n_max, rec.tau_opt, rec.qfi_max])
        scan = outdir / f"fig5_nmax.{fmt}"
        _write_rows(scan, ["alpha", "n_max", "tau_opt", "qfi_max"], rows, fmt)
        click.echo(str(scan))


@main.command("nmax-scan")
@click.option("--alpha", type=float, required=True)
@click.option("--n-range", default="1,600", show_default=True)
@window_option
@out_option
def cmd_nmax_scan(alpha, n_range, window, out):
    """Fluctuator count maximizing the QFI at one color exponent."""
    try:
        n_lo, n_hi = (int(v) for v in n_range.split(","))
    except ValueError:
        raise click.UsageError(f"bad count range {n_range!r}")
    n_max, rec = nmax_scan(alpha, (n_lo, n_hi), _parse_window(window))
    path = _outdir(out) / "nmax_scan.json"
    _write_json(path, {"alpha": alpha, "n_max": n_max, "record": rec.as_dict()})
    click.echo(str(path))


@main.command("mc-validate")
@click.option("--n-samples", type=int, default=200_000, show_default=True)
@seed_option
@out_option
def cmd_mc_validate(n_samples, seed, out):
    """Oracle agreement: closed-form decay vs trajectory averages."""
    checks = []
    for g in (0.1, 1.0, 2.0, 4.0, 10.0):
        for t in (0.5, math.pi / 2, 3.0):
            est = mc_rtn_coefficient(RtnParams(g), t, n_samples, seed)
            closed = float(rtn_decay(t, g))
            tol = max(3.0 * est.std_error, 1e-8)
            checks.append({
                "gamma": g, "tau": t, "mc_mean": est.mean,
                "std_error": est.std_error, "closed_form": closed,
                "seed": seed, "passed": bool(abs(est.mean - closed) <= tol),
            })
    ok = all(c["passed"] for c in checks)
    path = _outdir(out) / "mc_validate.json"
    _write_json(path, {"passed": ok, "n_samples": n_samples, "seed": seed,
                       "checks": checks})
    click.echo(str(path))
    if not ok:
        raise SystemExit(1)


@main.command("estimate")
@click.option("--n0", type=int, default=None, help="Ground-state counts.")
@click.option("--n1", type=int, default=None, help="Excited-state counts.")
@click.option("--tau", type=float, default=math.pi / 2, show_default=True)
@click.option("--family", type=click.Choice(["rtn", "colored"]), default="rtn",
              show_default=True)
@click.option("--interval", default=None, help="Search interval 'lo,hi'.")
@click.option("--simulate", type=float, default=None,
              help="Simulate counts at this true parameter instead of --n0/--n1.")
@click.option("--shots", type=int, default=10_000, show_default=True)
@click.option("--n-fluctuators", type=int, default=1, show_default=True)
@window_option
@seed_option
@out_option
def cmd_estimate(n0, n1, tau, family, interval, simulate, shots, n_fluctuators,
                 window, seed, out):
    """Maximum-likelihood noise-parameter estimate from population counts."""
    win = _parse_window(window)
    if interval is None:
        span = (0.05, 5.0) if family == "rtn" else (0.5, 2.0)
    else:
        try:
            lo, hi = (float(v) for v in interval.split(","))
            span = (lo, hi)
        except ValueError:
            raise click.UsageError(f"bad interval {interval!r}")
    if simulate is not None:
        if family == "rtn":
            coeff = rtn_coefficient(tau, RtnParams(simulate))
        else:
            from .dephasing import DephasingCoefficient

            base = lambda_quadrature(tau, ColoredParams(simulate, win[0], win[1], 1))
            coeff = DephasingCoefficient(value=base.value**n_fluctuators, d_value=0.0,
                                         parameter="alpha")
        state = evolve(ProbePreparation(), coeff)
        n0, n1 = simulate_population_shots(state, shots, seed)
    if n0 is None or n1 is None:
        raise click.UsageError("provide --n0 and --n1, or --simulate")
    res = mle_parameter((n0, n1), tau, family=family, interval=span, window=win,
                        n_fluctuators=n_fluctuators)
    path = _outdir(out) / "estimate.json"
    _write_json(path, {
        "family": family, "tau": tau, "n0": n0, "n1": n1, "seed": seed,
        "estimate": res.value, "log_likelihood": res.log_likelihood,
        "at_boundary": res.at_boundary,
    })
    click.echo(str(path))


@main.command("validate")
@click.option("--n-samples", type=int, default=200_000, show_default=True,
              help="Trajectories per oracle-agreement point.")
@click.option("--repetitions", type=int, default=200, show_default=True,
              help="Repetitions of the Cramer-Rao saturation study.")
@seed_option
@out_option
def cmd_validate(n_samples, repetitions, seed, out):
    """Run the oracle-agreement and Cramer-Rao saturation suites."""
    report = {"seed": seed, "checks": []}

    for g, t in [(0.5, 1.0), (1.0, math.pi / 2), (4.0, 1.0), (10.0, 0.5)]:
        est = mc_rtn_coefficient(RtnParams(g), t, n_samples, seed)
        closed = float(rtn_decay(t, g))
        tol = max(3.0 * est.std_error, 1e-8)
        report["checks"].append({
            "name": f"oracle_rtn_gamma{g}_tau{round(t, 3)}",
            "passed": bool(abs(est.mean - closed) <= tol),
            "detail": {"mc_mean": est.mean, "closed_form": closed,
                       "std_error": est.std_error, "seed": seed},
        })

    for g, t in [(1.0, 2.0), (4.0, 1.0)]:
        h = 1e-5
        fd = (rtn_decay(t, g + h) - rtn_decay(t, g - h)) / (2 * h)
        from .dephasing import rtn_decay_dgamma
        analytic = float(rtn_decay_dgamma(t, g))
        report["checks"].append({
            "name": f"derivative_gamma{g}_tau{t}",
            "passed": bool(abs(analytic - fd) <= 1e-6 * max(1.0, abs(analytic))),
            "detail": {"analytic": analytic, "finite_difference": float(fd),
                       "seed": seed},
        })

    rec = optimal_time_rtn(RtnParams(1.0))
    study = cr_saturation_study(1.0, rec.tau_opt, 10_000, repetitions, seed)
    ratio = study.empirical_variance / study.cr_bound
    slack = 3.0 / math.sqrt(repetitions)
    report["checks"].append({
        "name": "cr_saturation_gamma1",
        "passed": bool(study.valid and (1.0 - 3.0 * slack) <= ratio <= (1.3 + 3.0 * slack)),
        "detail": {"variance_ratio": ratio, "cr_bound": study.cr_bound,
                   "empirical_variance": study.empirical_variance, "seed": seed},
    })

    series = lambda_series(1.0, ColoredParams(1.8, 1e-2, 1e2, 1),
                           SeriesConfig(max_terms=400))
    quadv = lambda_quadrature(1.0, ColoredParams(1.8, 1e-2, 1e2, 1))
    report["checks"].append({
        "name": "series_vs_quadrature_alpha1.8_tau1",
        "passed": bool(abs(series.value - quadv.value) <= 1e-8),
        "detail": {"series": series.value, "quadrature": quadv.value, "seed": seed},
    })

    report["passed"] = all(c["passed"] for c in report["checks"])
    path = _outdir(out) / "validate.json"
    _write_json(path, report)
    click.echo(str(path))
    if not report["passed"]:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
