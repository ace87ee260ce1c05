"""Classical noise sources: single random telegraph fluctuators and 1/f^alpha collections.

A random telegraph fluctuator flips between +1 and -1 at a dimensionless
switching rate ``gamma`` (time and rate are measured in units of the qubit
coupling).  Collections of fluctuators with rates drawn from a power-law
distribution on ``[gamma1, gamma2]`` generate 1/f^alpha colored noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RtnParams",
    "ColoredParams",
    "RtnTrajectory",
    "sample_rtn_trajectory",
    "integrate_trajectory",
    "pdf_alpha",
    "dpdf_dalpha",
    "cdf_alpha",
    "sample_switching_rate",
    "log_norm_constant",
    "dlog_norm_dalpha",
]

#: Boundary between slow (oscillatory) and fast (monotone) telegraph noise.
SLOW_FAST_BOUNDARY = 2.0

ALPHA_MIN = 0.5
ALPHA_MAX = 2.0

# Below this distance from alpha = 1 the log-uniform branch of the power-law
# distribution is used; the generic branch suffers cancellation there.
_ALPHA_ONE_TOL = 1e-6


@dataclass(frozen=True)
class RtnParams:
    """Single-fluctuator telegraph noise with dimensionless switching rate ``gamma``."""

    gamma: float

    def __post_init__(self):
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ValueError(f"switching rate must be positive and finite, got {self.gamma}")

    @property
    def is_slow(self) -> bool:
        return self.gamma < SLOW_FAST_BOUNDARY

    @property
    def is_fast(self) -> bool:
        return self.gamma > SLOW_FAST_BOUNDARY


@dataclass(frozen=True)
class ColoredParams:
    """Collection of ``n_fluctuators`` telegraph sources with power-law rates.

    The switching rates are distributed as 1/gamma^alpha on the window
    ``[gamma1, gamma2]``, producing an overall 1/f^alpha spectrum for
    ``alpha`` in [0.5, 2].
    """

    alpha: float
    gamma1: float = 1e-2
    gamma2: float = 1e2
    n_fluctuators: int = 1

    def __post_init__(self):
        if not (ALPHA_MIN <= self.alpha <= ALPHA_MAX):
            raise ValueError(f"alpha must lie in [{ALPHA_MIN}, {ALPHA_MAX}], got {self.alpha}")
        if not (0 < self.gamma1 < self.gamma2):
            raise ValueError(f"need 0 < gamma1 < gamma2, got ({self.gamma1}, {self.gamma2})")
        if not (isinstance(self.n_fluctuators, (int, np.integer)) and self.n_fluctuators >= 1):
            raise ValueError(f"n_fluctuators must be an integer >= 1, got {self.n_fluctuators}")


@dataclass(frozen=True)
class RtnTrajectory:
    """Exact (event-based) realization of a telegraph process on [0, horizon].

    The signal starts at ``initial_value`` and flips sign at each entry of
    ``switch_times``; no time grid is involved.
    """

    initial_value: int
    switch_times: np.ndarray
    horizon: float

    def __post_init__(self):
        object.__setattr__(self, "switch_times", np.asarray(self.switch_times, dtype=float))
        if self.initial_value not in (-1, 1):
            raise ValueError("initial_value must be +1 or -1")
        if not self.horizon > 0:
            raise ValueError("horizon must be positive")
        t = self.switch_times
        if t.size:
            if np.any(np.diff(t) <= 0):
                raise ValueError("switch times must be strictly increasing")
            if t[0] <= 0 or t[-1] > self.horizon:
                raise ValueError("switch times must lie in (0, horizon]")

    def value_at(self, t: float) -> int:
        """Signal value at time ``t`` (left-continuous at switch instants)."""
        if not 0 <= t <= self.horizon:
            raise ValueError(f"t={t} outside [0, {self.horizon}]")
        n = int(np.searchsorted(self.switch_times, t, side="left"))
        return self.initial_value * (-1) ** n

    def to_dict(self) -> dict:
        return {
            "initial_value": int(self.initial_value),
            "switch_times": self.switch_times.tolist(),
            "horizon": float(self.horizon),
        }


def sample_rtn_trajectory(
    params: RtnParams, horizon: float, rng: np.random.Generator
) -> RtnTrajectory:
    """Draw one telegraph trajectory with exponential waiting times.

    The initial sign is +1 or -1 with equal probability and the waiting
    times between switches are i.i.d. exponential with mean ``1/gamma``,
    so the switch count on [0, T] is Poisson(gamma * T).
    """
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    initial = 1 if rng.random() < 0.5 else -1
    times = []
    t = rng.exponential(1.0 / params.gamma)
    while t <= horizon:
        times.append(t)
        t += rng.exponential(1.0 / params.gamma)
    return RtnTrajectory(initial, np.array(times), horizon)


def integrate_trajectory(traj: RtnTrajectory, tau: float) -> float:
    """Exact integral of the piecewise-constant signal over [0, tau].

    Between switches the signal is constant, so the integral is an
    alternating sum of segment lengths; the result lies in [-tau, tau].
    """
    if not 0 <= tau <= traj.horizon:
        raise ValueError(f"tau={tau} outside [0, {traj.horizon}]")
    t = traj.switch_times
    t = t[t <= tau]
    n = t.size
    signs = (-1.0) ** np.arange(n)  # +2, -2, +2, ... coefficients below
    return traj.initial_value * ((-1.0) ** n * tau + 2.0 * float(np.dot(signs, t)))


# -- power-law switching-rate distribution -------------------------------------


def log_norm_constant(alpha: float, gamma1: float, gamma2: float) -> float:
    """log of the normalization of the 1/gamma^alpha density on [gamma1, gamma2].

    Evaluated in a form smooth through alpha = 1, where the generic
    expression has a removable singularity.
    """
    eps = alpha - 1.0
    dl = math.log(gamma2) - math.log(gamma1)
    lbar = 0.5 * (math.log(gamma1) + math.log(gamma2))
    x = 0.5 * eps * dl
    if abs(x) < 1e-4:
        # sinh(x)/x = 1 + x^2/6 + x^4/120
        log_sinhc = math.log1p(x * x / 6.0 * (1.0 + x * x / 20.0))
    else:
        log_sinhc = math.log(math.sinh(x) / x)
    return eps * lbar - math.log(dl) - log_sinhc


def dlog_norm_dalpha(alpha: float, gamma1: float, gamma2: float) -> float:
    """Derivative in alpha of :func:`log_norm_constant`, stable near alpha = 1."""
    eps = alpha - 1.0
    dl = math.log(gamma2) - math.log(gamma1)
    lbar = 0.5 * (math.log(gamma1) + math.log(gamma2))
    x = 0.5 * eps * dl
    if abs(x) < 1e-4:
        # 1/eps - (dl/2) coth(x) = -eps dl^2/12 + eps^3 dl^4/720
        return lbar - eps * dl * dl / 12.0 + eps**3 * dl**4 / 720.0
    return 1.0 / eps + lbar - 0.5 * dl / math.tanh(x)


def pdf_alpha(gamma, params: ColoredParams):
    """Probability density of the switching rate; zero outside [gamma1, gamma2].

    Uses the log-uniform form for ``|alpha - 1| < 1e-6`` and the generic
    power-law form otherwise.
    """
    g = np.asarray(gamma, dtype=float)
    out = np.zeros_like(g)
    inside = (g >= params.gamma1) & (g <= params.gamma2)
    if abs(params.alpha - 1.0) < _ALPHA_ONE_TOL:
        norm = 1.0 / math.log(params.gamma2 / params.gamma1)
        out[inside] = norm / g[inside]
    else:
        log_n = log_norm_constant(params.alpha, params.gamma1, params.gamma2)
        out[inside] = np.exp(log_n - params.alpha * np.log(g[inside]))
    return out if out.ndim else float(out)


def dpdf_dalpha(gamma, params: ColoredParams):
    """Analytic derivative of :func:`pdf_alpha` with respect to alpha."""
    g = np.asarray(gamma, dtype=float)
    p = np.asarray(pdf_alpha(g, params))
    dlog_n = dlog_norm_dalpha(params.alpha, params.gamma1, params.gamma2)
    out = p * (dlog_n - np.log(np.where(p > 0, g, 1.0)))
    return out if out.ndim else float(out)


def cdf_alpha(gamma, params: ColoredParams):
    """Cumulative distribution of the switching rate on [gamma1, gamma2]."""
    g = np.clip(np.asarray(gamma, dtype=float), params.gamma1, params.gamma2)
    a, g1, g2 = params.alpha, params.gamma1, params.gamma2
    if abs(a - 1.0) < _ALPHA_ONE_TOL:
        out = np.log(g / g1) / math.log(g2 / g1)
    else:
        e = 1.0 - a
        out = (g**e - g1**e) / (g2**e - g1**e)
    return out if out.ndim else float(out)


def sample_switching_rate(params: ColoredParams, rng: np.random.Generator, size=None):
    """Draw switching rates from the power-law distribution by inverse CDF.

    For alpha = 1 the rate is log-uniform on [gamma1, gamma2]; otherwise the
    power-law CDF is inverted in closed form.
    """
    u = rng.random(size)
    a, g1, g2 = params.alpha, params.gamma1, params.gamma2
    if abs(a - 1.0) < _ALPHA_ONE_TOL:
        return g1 * (g2 / g1) ** u
    e = 1.0 - a
    return (g1**e + u * (g2**e - g1**e)) ** (1.0 / e)
