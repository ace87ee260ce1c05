"""Scikit-learn style front ends for noise-parameter inference.

These wrap the maximum-likelihood machinery in estimator classes with the
usual ``fit`` / ``get_params`` surface so they compose with sklearn
pipelines and model-selection utilities.  ``X`` is a 1-D array of binary
population-measurement outcomes (0 = ground, 1 = excited) collected at a
fixed interaction time.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .montecarlo import mle_parameter

__all__ = ["SwitchingRateEstimator", "ColorExponentEstimator"]


def _validate_outcomes(X) -> tuple[int, int]:
    x = np.asarray(X).ravel()
    if x.size == 0:
        raise ValueError("need at least one measurement outcome")
    if not np.isin(x, (0, 1)).all():
        raise ValueError("outcomes must be binary (0 = ground, 1 = excited)")
    n1 = int(x.sum())
    return x.size - n1, n1


class SwitchingRateEstimator(BaseEstimator):
    """Infer the telegraph switching rate from population measurements.

    Parameters
    ----------
    tau : float
        Interaction time at which every shot was taken.
    interval : (float, float)
        Search interval for the rate.
    """

    def __init__(self, tau: float = np.pi / 2, interval: tuple = (0.05, 5.0)):
        self.tau = tau
        self.interval = interval

    def fit(self, X, y=None):
        n0, n1 = _validate_outcomes(X)
        res = mle_parameter((n0, n1), self.tau, family="rtn", interval=self.interval)
        self.rate_ = res.value
        self.log_likelihood_ = res.log_likelihood
        self.at_boundary_ = res.at_boundary
        self.n_shots_ = n0 + n1
        return self

    def predict(self, X=None) -> float:
        """Return the fitted switching rate."""
        if not hasattr(self, "rate_"):
            raise NotFittedError("call fit before predict")
        return self.rate_


class ColorExponentEstimator(BaseEstimator):
    """Infer the color exponent of 1/f^alpha noise from population measurements."""

    def __init__(
        self,
        tau: float = 1.0,
        interval: tuple = (0.5, 2.0),
        window: tuple = (1e-2, 1e2),
        n_fluctuators: int = 1,
    ):
        self.tau = tau
        self.interval = interval
        self.window = window
        self.n_fluctuators = n_fluctuators

    def fit(self, X, y=None):
        n0, n1 = _validate_outcomes(X)
        res = mle_parameter(
            (n0, n1),
            self.tau,
            family="colored",
            interval=self.interval,
            window=self.window,
            n_fluctuators=self.n_fluctuators,
            grid_points=120,
        )
        self.alpha_ = res.value
        self.log_likelihood_ = res.log_likelihood
        self.at_boundary_ = res.at_boundary
        self.n_shots_ = n0 + n1
        return self

    def predict(self, X=None) -> float:
        """Return the fitted color exponent."""
        if not hasattr(self, "alpha_"):
            raise NotFittedError("call fit before predict")
        return self.alpha_
