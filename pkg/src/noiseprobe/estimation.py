"""Local quantum estimation theory for the dephasing probe.

Fisher information of the population measurement, symmetric logarithmic
derivative, quantum Fisher information, and the quantum signal-to-noise
ratio for the telegraph switching rate and the color exponent.  Divergent
information at boundary states is reported as ``inf`` rather than raised,
so parameter sweeps stay machine-readable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .colored import colored_coefficient
from .dephasing import DephasingCoefficient, rtn_coefficient
from .noise import ColoredParams, RtnParams

__all__ = [
    "EstimationReport",
    "fisher_population",
    "sld_dephasing",
    "qfi_qubit",
    "qfi_dephasing",
    "qfi_rtn",
    "qfi_colored",
]


@dataclass(frozen=True)
class EstimationReport:
    """Information quantities at one (parameter, interaction time) point."""

    parameter_value: float
    interaction_time: float
    fisher_population: float
    qfi: float
    qsnr: float
    cr_bound_single_shot: float

    def __post_init__(self):
        if self.fisher_population > self.qfi * (1 + 1e-10) + 1e-10:
            raise ValueError("population Fisher information cannot exceed the QFI")

    def as_dict(self) -> dict:
        return asdict(self)

    def as_csv_row(self) -> list:
        return [
            self.parameter_value,
            self.interaction_time,
            self.fisher_population,
            self.qfi,
            self.qsnr,
            self.cr_bound_single_shot,
        ]


def _ratio_sq(dp: float, p: float) -> float:
    """(dp)^2 / p with the boundary conventions: 0/0 -> 0, finite/0 -> inf."""
    if p <= 0:
        return 0.0 if dp == 0 else math.inf
    return dp * dp / p


def fisher_population(probs, dprobs) -> float:
    """Fisher information of the population measurement on a diagonal family.

    ``probs`` and ``dprobs`` are the two diagonal elements and their
    derivatives in the inferred parameter.
    """
    p0, p1 = probs
    dp0, dp1 = dprobs
    return _ratio_sq(dp0, p0) + _ratio_sq(dp1, p1)


def sld_dephasing(probs, dprobs) -> np.ndarray:
    """Symmetric logarithmic derivative of a diagonal qubit family.

    For diagonal states the defining relation (L rho + rho L)/2 = drho is
    solved entrywise: L = diag(dp_i / p_i).  A vanishing eigenvalue gives 0
    when its derivative also vanishes and ``inf`` otherwise.
    """
    out = np.empty(2)
    for i, (p, dp) in enumerate(zip(probs, dprobs)):
        if p <= 0:
            out[i] = 0.0 if dp == 0 else math.inf
        else:
            out[i] = dp / p
    return out


def qfi_qubit(eigenvalues, d_eigenvalues, overlap_sq: float = 0.0) -> float:
    """Quantum Fisher information of a qubit from its spectral decomposition.

    The classical part is the Fisher information of the eigenvalue
    distribution; the quantum part weighs the parameter dependence of the
    eigenvectors through ``overlap_sq = |<phi_2|d phi_1>|^2`` and vanishes
    when the eigenbasis is parameter independent.
    """
    p1, p2 = eigenvalues
    if not (0 <= p1 <= 1 and 0 <= p2 <= 1) or abs(p1 + p2 - 1) > 1e-9:
        raise ValueError("eigenvalues must lie in [0, 1] and sum to one")
    classical = fisher_population(eigenvalues, d_eigenvalues)
    quantum = 4.0 * (p1 - p2) ** 2 * overlap_sq
    return classical + quantum


def qfi_dephasing(coeff: DephasingCoefficient, theta: float = 0.0) -> float:
    """QFI of a pure-dephasing family: cos^2(theta) (dG)^2 / (1 - G^2).

    Maximal at theta = 0; zero for the dephasing-invariant preparation
    theta = pi/2.  At |G| = 1 the value is 0 when dG = 0 (no evolution yet)
    and divergent (``inf``) otherwise.
    """
    g, dg = coeff.value, coeff.d_value
    if abs(g) > 1 + 1e-12:
        raise ValueError(f"coefficient out of [-1, 1]: {g}")
    denom = 1.0 - min(1.0, g * g)
    return math.cos(theta) ** 2 * _ratio_sq(dg, denom)


def qfi_rtn(tau: float, params: RtnParams) -> EstimationReport:
    """Estimation report for the telegraph switching rate at time ``tau``."""
    coeff = rtn_coefficient(tau, params)
    qfi = qfi_dephasing(coeff)
    p0 = (1.0 + coeff.value) / 2.0
    fisher = fisher_population((p0, 1.0 - p0), (0.5 * coeff.d_value, -0.5 * coeff.d_value))
    return EstimationReport(
        parameter_value=params.gamma,
        interaction_time=tau,
        fisher_population=fisher,
        qfi=qfi,
        qsnr=params.gamma**2 * qfi,
        cr_bound_single_shot=1.0 / qfi if qfi > 0 else math.inf,
    )


def qfi_colored(
    tau: float, params: ColoredParams, method: str = "quadrature"
) -> EstimationReport:
    """Estimation report for the color exponent alpha at time ``tau``.

    Uses the composite-coefficient QFI
    ``N^2 L^(2N-2) (dL)^2 / (1 - L^(2N))``, which for N = 1 reduces to the
    single-fluctuator form.  The Fisher entry is evaluated separately
    through the population-measurement formula on the diagonal family.
    """
    n = params.n_fluctuators
    base = colored_coefficient(
        tau, ColoredParams(params.alpha, params.gamma1, params.gamma2, 1), method=method
    )
    lam, dlam = base.value, base.d_value
    denom = 1.0 - min(1.0, abs(lam) ** (2 * n))
    num = n * n * lam ** (2 * n - 2) * dlam * dlam
    if denom <= 0:
        qfi = 0.0 if num == 0 else math.inf
    else:
        qfi = num / denom
    # diagonal family of the full collection: populations (1 +- L^N)/2
    comp_value = lam**n
    comp_deriv = n * lam ** (n - 1) * dlam
    p0 = (1.0 + comp_value) / 2.0
    fisher = fisher_population((p0, 1.0 - p0), (0.5 * comp_deriv, -0.5 * comp_deriv))
    return EstimationReport(
        parameter_value=params.alpha,
        interaction_time=tau,
        fisher_population=fisher,
        qfi=qfi,
        qsnr=params.alpha**2 * qfi,
        cr_bound_single_shot=1.0 / qfi if qfi > 0 else math.inf,
    )
