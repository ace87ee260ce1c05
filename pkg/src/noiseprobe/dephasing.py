"""Dephasing of a qubit probe under telegraph noise.

The coherence of the probe is multiplied by a real coefficient: ``D(tau,
gamma)`` for a single fluctuator (evaluated here in closed form together
with its analytic rate derivative) or ``Lambda(tau, alpha)^N`` for a
fluctuator collection (see :mod:`noiseprobe.colored`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .noise import RtnParams

__all__ = [
    "ProbePreparation",
    "QubitState",
    "DephasingCoefficient",
    "rtn_decay",
    "rtn_decay_dgamma",
    "rtn_coefficient",
    "evolve",
]

# Switch to the Taylor expansion in (delta*tau)^2 when the hyperbolic /
# trigonometric forms would divide small by small near gamma = 2.
_DEGENERATE_Z = 1e-6


@dataclass(frozen=True)
class ProbePreparation:
    """Bloch angles of the initial pure probe state."""

    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not 0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0 <= self.phi < 2 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class QubitState:
    """Qubit density matrix: ground population and 0-1 coherence element."""

    p00: float
    coherence: complex

    def __post_init__(self):
        if not 0 <= self.p00 <= 1:
            raise ValueError(f"p00 must lie in [0, 1], got {self.p00}")
        if abs(self.coherence) ** 2 > self.p00 * (1 - self.p00) + 1e-12:
            raise ValueError("state is not positive: |coherence|^2 > p00*(1-p00)")

    @property
    def p11(self) -> float:
        return 1.0 - self.p00

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.p00, self.coherence], [np.conj(self.coherence), self.p11]], dtype=complex
        )


@dataclass(frozen=True)
class DephasingCoefficient:
    """Coherence multiplier together with its derivative in the inferred parameter.

    ``parameter`` records which noise parameter ``d_value`` differentiates
    ("gamma" for telegraph noise, "alpha" for colored noise).
    """

    value: float
    d_value: float
    parameter: str
    est_error: float = 0.0


def rtn_decay(tau, gamma):
    """Single-fluctuator dephasing coefficient D(tau, gamma); broadcasts.

    For gamma < 2 (slow noise) this is a damped oscillation
    ``exp(-g*tau) * (cos(w*tau) + g*sin(w*tau)/w)`` with ``w = sqrt(4 - g^2)``;
    for gamma > 2 (fast noise) the monotone hyperbolic counterpart, evaluated
    in a split-exponential form that cannot overflow; near gamma = 2 a Taylor
    expansion through the degeneracy.
    """
    tau, gamma = np.broadcast_arrays(np.asarray(tau, float), np.asarray(gamma, float))
    if np.any(tau < 0):
        raise ValueError("tau must be nonnegative")
    if np.any(gamma <= 0):
        raise ValueError("gamma must be positive")
    out = np.empty(tau.shape, dtype=float)
    dsq = gamma * gamma - 4.0
    z = dsq * tau * tau

    near = np.abs(z) < _DEGENERATE_Z
    if np.any(near):
        t, g, zz = tau[near], gamma[near], z[near]
        # cosh(d t) = sum z^k/(2k)!,  sinh(d t)/d = t * sum z^k/(2k+1)!
        c = 1.0 + zz / 2.0 * (1.0 + zz / 12.0 * (1.0 + zz / 30.0))
        s = 1.0 + zz / 6.0 * (1.0 + zz / 20.0 * (1.0 + zz / 42.0))
        out[near] = np.exp(-g * t) * (c + g * t * s)

    slow = ~near & (dsq < 0)
    if np.any(slow):
        t, g = tau[slow], gamma[slow]
        w = np.sqrt(-dsq[slow])
        out[slow] = np.exp(-g * t) * (np.cos(w * t) + g * np.sin(w * t) / w)

    fast = ~near & (dsq >= 0)
    if np.any(fast):
        t, g = tau[fast], gamma[fast]
        d = np.sqrt(dsq[fast])
        # D = ((1 + g/d) e^{-(g-d)t} + (1 - g/d) e^{-(g+d)t}) / 2, g-d = 4/(g+d)
        ep = np.exp(-4.0 / (g + d) * t)
        em = np.exp(-(g + d) * t)
        out[fast] = 0.5 * ((1.0 + g / d) * ep + (1.0 - g / d) * em)

    return out if out.ndim else float(out)


def rtn_decay_dgamma(tau, gamma):
    """Analytic derivative of :func:`rtn_decay` with respect to the rate.

    Closed form ``4 exp(-g*tau) * (tau*cosh(d*tau) - sinh(d*tau)/d) / d^2``
    with the same three-branch evaluation as the coefficient itself.
    """
    tau, gamma = np.broadcast_arrays(np.asarray(tau, float), np.asarray(gamma, float))
    if np.any(tau < 0):
        raise ValueError("tau must be nonnegative")
    if np.any(gamma <= 0):
        raise ValueError("gamma must be positive")
    out = np.empty(tau.shape, dtype=float)
    dsq = gamma * gamma - 4.0
    z = dsq * tau * tau

    near = np.abs(z) < _DEGENERATE_Z
    if np.any(near):
        t, g, zz = tau[near], gamma[near], z[near]
        # (t cosh - sinh/d)/d^2 = t^3 * sum_{k>=1} z^{k-1} 2k/(2k+1)!
        series = 1.0 / 3.0 + zz / 30.0 * (1.0 + zz / 28.0)
        out[near] = 4.0 * np.exp(-g * t) * t**3 * series

    slow = ~near & (dsq < 0)
    if np.any(slow):
        t, g = tau[slow], gamma[slow]
        wsq = -dsq[slow]
        w = np.sqrt(wsq)
        out[slow] = 4.0 * np.exp(-g * t) * (np.sin(w * t) / w - t * np.cos(w * t)) / wsq

    fast = ~near & (dsq >= 0)
    if np.any(fast):
        t, g = tau[fast], gamma[fast]
        d = np.sqrt(dsq[fast])
        ep = np.exp(-4.0 / (g + d) * t)
        em = np.exp(-(g + d) * t)
        out[fast] = 2.0 / dsq[fast] * ((t - 1.0 / d) * ep + (t + 1.0 / d) * em)

    return out if out.ndim else float(out)


def rtn_coefficient(tau: float, params: RtnParams) -> DephasingCoefficient:
    """Dephasing coefficient of a single telegraph fluctuator at time ``tau``."""
    value = rtn_decay(tau, params.gamma)
    d_value = rtn_decay_dgamma(tau, params.gamma)
    return DephasingCoefficient(value=value, d_value=d_value, parameter="gamma")


def evolve(prep: ProbePreparation, coeff: DephasingCoefficient) -> QubitState:
    """Apply the pure-dephasing channel to the prepared probe.

    The Bloch component along the coupling axis (x) is preserved while the
    transverse components are scaled by the coefficient, so the state stays
    unit-trace and positive for any coefficient in [-1, 1].
    """
    g = coeff.value
    if abs(g) > 1 + 1e-12:
        raise ValueError(f"coefficient out of [-1, 1]: {g}")
    g = min(1.0, max(-1.0, g))
    rx = math.sin(prep.theta) * math.cos(prep.phi)
    ry = math.sin(prep.theta) * math.sin(prep.phi) * g
    rz = math.cos(prep.theta) * g
    return QubitState(p00=(1.0 + rz) / 2.0, coherence=(rx - 1j * ry) / 2.0)
