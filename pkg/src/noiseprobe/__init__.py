"""Qubit probes of classical noise.

Dephasing dynamics under random telegraph and 1/f^alpha noise, quantum
Fisher information for the noise parameters, optimal interaction times,
and a Monte Carlo trajectory oracle validating every closed form.
"""

from .colored import (
    SeriesConfig,
    colored_coefficient,
    lambda_quadrature,
    lambda_series,
    lambda_truncated,
)
from .dephasing import (
    DephasingCoefficient,
    ProbePreparation,
    QubitState,
    evolve,
    rtn_coefficient,
    rtn_decay,
    rtn_decay_dgamma,
)
from .estimation import (
    EstimationReport,
    fisher_population,
    qfi_colored,
    qfi_dephasing,
    qfi_qubit,
    qfi_rtn,
    sld_dephasing,
)
from .estimators import ColorExponentEstimator, SwitchingRateEstimator
from .montecarlo import (
    EstimatorStudy,
    McEstimate,
    cr_saturation_study,
    mc_colored_coefficient,
    mc_rtn_coefficient,
    mle_parameter,
    simulate_population_shots,
)
from .noise import (
    ColoredParams,
    RtnParams,
    RtnTrajectory,
    cdf_alpha,
    integrate_trajectory,
    pdf_alpha,
    sample_rtn_trajectory,
    sample_switching_rate,
)
from .optimize import (
    OptimumRecord,
    SearchConfig,
    approx_optimal_time_rtn,
    fit_qfi_scaling,
    nmax_scan,
    optimal_time_colored,
    optimal_time_rtn,
    qsnr_profile,
)

__version__ = "0.1.0"
