"""Maximization of the probe's information over interaction time and environment.

Covers the optimal-time staircase for telegraph noise, the a/gamma^2
scaling of the maximal QFI, signal-to-noise profiles in the color
exponent, and the search for the fluctuator count that maximizes the
colored-noise QFI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .colored import lambda_quadrature
from .dephasing import rtn_decay, rtn_decay_dgamma
from .noise import ColoredParams, RtnParams

__all__ = [
    "SearchConfig",
    "OptimumRecord",
    "optimal_time_rtn",
    "approx_optimal_time_rtn",
    "fit_qfi_scaling",
    "optimal_time_colored",
    "qsnr_profile",
    "nmax_scan",
    "count_local_maxima",
]


@dataclass(frozen=True)
class SearchConfig:
    """Coarse-grid plus golden-section refinement settings for a 1-D maximum."""

    tau_min: float = 1e-3
    tau_max: float | None = None  # None: pick from the noise regime
    coarse_step: float = math.pi / 20
    refine_tol: float = 1e-6


@dataclass(frozen=True)
class OptimumRecord:
    """Location and value of an information maximum over interaction time."""

    parameter: float
    tau_opt: float
    qfi_max: float
    qsnr_max: float
    n_fluctuators: int = 1
    search_meta: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def _grid_refine(f_grid, f_scalar, grid: np.ndarray, refine_tol: float):
    """Maximize on a grid, then golden-refine inside the bracketing cell.

    ``f_grid`` evaluates on an array, ``f_scalar`` at a point; both must be
    the same function.  Returns (tau, value, boundary_flag); the refined
    point never scores below the best grid point.
    """
    values = f_grid(grid)
    i = int(np.argmax(values))
    boundary = i == 0 or i == len(grid) - 1
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(
        lambda t: -f_scalar(t), bounds=(lo, hi), method="bounded",
        options={"xatol": refine_tol},
    )
    if -res.fun >= values[i]:
        return float(res.x), float(-res.fun), boundary
    return float(grid[i]), float(values[i]), boundary


def _rtn_qfi_grid(tau, gamma: float):
    d = rtn_decay(tau, gamma)
    dd = rtn_decay_dgamma(tau, gamma)
    denom = np.maximum(1.0 - d * d, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = np.where(denom > 0, dd * dd / np.where(denom > 0, denom, 1.0), 0.0)
    return h


def _default_tau_max(gamma: float) -> float:
    # slow regime: cover the nint(1/(2 gamma)) pi/2 peaks; fast: optimum ~ 2 gamma/5
    if gamma < 2.0:
        return max(4 * math.pi, 1.5 * math.pi / gamma)
    return max(4 * math.pi, gamma)


def optimal_time_rtn(params: RtnParams, search: SearchConfig | None = None) -> OptimumRecord:
    """Interaction time maximizing the switching-rate QFI for telegraph noise."""
    search = search or SearchConfig()
    tau_max = search.tau_max if search.tau_max is not None else _default_tau_max(params.gamma)
    grid = np.arange(search.tau_min, tau_max + search.coarse_step, search.coarse_step)
    tau, qfi, boundary = _grid_refine(
        lambda t: _rtn_qfi_grid(t, params.gamma),
        lambda t: float(_rtn_qfi_grid(np.asarray(t), params.gamma)),
        grid,
        search.refine_tol,
    )
    return OptimumRecord(
        parameter=params.gamma,
        tau_opt=tau,
        qfi_max=qfi,
        qsnr_max=params.gamma**2 * qfi,
        search_meta={
            "tau_min": search.tau_min,
            "tau_max": tau_max,
            "refine_tol": search.refine_tol,
            "boundary": boundary,
        },
    )


def approx_optimal_time_rtn(params: RtnParams) -> float:
    """Closed-form approximation to the optimal time.

    ``nint(1/(2 gamma)) * pi/2`` below the slow/fast boundary and
    ``2 gamma / 5`` above it; half-integer ties round up.  Only a first
    approximation near gamma = 2.
    """
    g = params.gamma
    if g < 2.0:
        return math.floor(1.0 / (2.0 * g) + 0.5) * math.pi / 2.0
    return 0.4 * g


def fit_qfi_scaling(gamma_grid) -> tuple[float, float, list[OptimumRecord]]:
    """Power-law fit of the maximal QFI against the switching rate.

    Least squares on log H(tau_opt, gamma) vs log gamma; returns the fitted
    exponent (close to -2), the prefactor from the intercept at the -2
    slope, and the per-rate optimum records.  Rates whose optimum hit the
    search boundary are excluded from the fit and flagged in their record.
    """
    gamma_grid = np.asarray(gamma_grid, dtype=float)
    if gamma_grid.size < 20 or gamma_grid.max() / gamma_grid.min() < 1e4:
        raise ValueError("need >= 20 rates spanning at least four decades")
    records = [optimal_time_rtn(RtnParams(g)) for g in gamma_grid]
    ok = np.array([not r.search_meta["boundary"] for r in records])
    logg = np.log(gamma_grid[ok])
    logh = np.log([r.qfi_max for r, keep in zip(records, ok) if keep])
    slope, intercept = np.polyfit(logg, logh, 1)
    coefficient_a = float(np.exp(np.mean(logh + 2.0 * logg)))
    return float(slope), coefficient_a, records


# -- colored noise -------------------------------------------------------------

_SCAN_QUAD_RTOL = 1e-9


@lru_cache(maxsize=128)
def _colored_tau_profile(alpha: float, gamma1: float, gamma2: float, tau_grid: tuple):
    """Cached (Lambda, dLambda/dalpha) arrays over a tau grid; N-independent."""
    params = ColoredParams(alpha, gamma1, gamma2, 1)
    lam = np.empty(len(tau_grid))
    dlam = np.empty(len(tau_grid))
    for i, t in enumerate(tau_grid):
        c = lambda_quadrature(t, params, rtol=_SCAN_QUAD_RTOL)
        lam[i], dlam[i] = c.value, c.d_value
    return lam, dlam


def _colored_qfi_from_base(lam, dlam, n: int):
    lam = np.asarray(lam)
    dlam = np.asarray(dlam)
    denom = 1.0 - np.minimum(np.abs(lam) ** (2 * n), 1.0)
    num = n * n * lam ** (2 * n - 2) * dlam * dlam
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(denom > 0, num / np.where(denom > 0, denom, 1.0), 0.0)


def _colored_qfi_scalar(tau: float, params: ColoredParams) -> float:
    c = lambda_quadrature(tau, ColoredParams(params.alpha, params.gamma1, params.gamma2, 1),
                          rtol=_SCAN_QUAD_RTOL)
    return float(_colored_qfi_from_base(c.value, c.d_value, params.n_fluctuators))


_COLORED_TAU_GRID = tuple(np.round(np.arange(0.05, 20.0001, 0.05), 10))


def optimal_time_colored(
    params: ColoredParams,
    search: SearchConfig | None = None,
    tau_grid: tuple = _COLORED_TAU_GRID,
) -> OptimumRecord:
    """Interaction time maximizing the color-exponent QFI for a collection."""
    search = search or SearchConfig()
    lam, dlam = _colored_tau_profile(params.alpha, params.gamma1, params.gamma2, tau_grid)
    grid = np.asarray(tau_grid)
    h = _colored_qfi_from_base(lam, dlam, params.n_fluctuators)
    i = int(np.argmax(h))
    boundary = i == 0 or i == len(grid) - 1
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(
        lambda t: -_colored_qfi_scalar(t, params), bounds=(lo, hi), method="bounded",
        options={"xatol": search.refine_tol},
    )
    if -res.fun >= h[i]:
        tau, qfi = float(res.x), float(-res.fun)
    else:
        tau, qfi = float(grid[i]), float(h[i])
    return OptimumRecord(
        parameter=params.alpha,
        tau_opt=tau,
        qfi_max=qfi,
        qsnr_max=params.alpha**2 * qfi,
        n_fluctuators=params.n_fluctuators,
        search_meta={
            "tau_min": float(grid[0]),
            "tau_max": float(grid[-1]),
            "refine_tol": search.refine_tol,
            "boundary": boundary,
        },
    )


def qsnr_profile(
    alpha_grid,
    n_fluctuators: int = 1,
    window: tuple[float, float] = (1e-2, 1e2),
    search: SearchConfig | None = None,
) -> list[OptimumRecord]:
    """Time-maximized signal-to-noise ratio across the color exponent."""
    return [
        optimal_time_colored(
            ColoredParams(float(a), window[0], window[1], n_fluctuators), search
        )
        for a in np.asarray(alpha_grid, dtype=float)
    ]


def count_local_maxima(values) -> int:
    """Number of strict interior local maxima of a sampled profile."""
    v = np.asarray(values, dtype=float)
    count = 0
    for i in range(1, len(v) - 1):
        if v[i] > v[i - 1] and v[i] > v[i + 1]:
            count += 1
    return count


def nmax_scan(
    alpha: float,
    n_range: tuple[int, int] = (1, 600),
    window: tuple[float, float] = (1e-2, 1e2),
    tau_grid: tuple = _COLORED_TAU_GRID,
) -> tuple[int, OptimumRecord]:
    """Fluctuator count maximizing the time-maximized QFI at fixed alpha.

    The single-fluctuator tau profile is computed once; the QFI for every
    count follows analytically from it.  Ties break toward the smaller
    count; a winner at the range edge is flagged in the record.
    """
    lo, hi = n_range
    if lo < 1 or hi < lo:
        raise ValueError(f"invalid count range {n_range}")
    lam, dlam = _colored_tau_profile(alpha, window[0], window[1], tau_grid)
    best_n, best_h = lo, -np.inf
    for n in range(lo, hi + 1):
        h = float(np.max(_colored_qfi_from_base(lam, dlam, n)))
        if h > best_h:
            best_n, best_h = n, h
    record = optimal_time_colored(
        ColoredParams(alpha, window[0], window[1], best_n), tau_grid=tau_grid
    )
    meta = dict(record.search_meta)
    meta["n_boundary"] = best_n in (lo, hi)
    record = OptimumRecord(
        parameter=record.parameter,
        tau_opt=record.tau_opt,
        qfi_max=record.qfi_max,
        qsnr_max=record.qsnr_max,
        n_fluctuators=best_n,
        search_meta=meta,
    )
    return best_n, record
