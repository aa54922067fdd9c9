"""scikit-learn style estimators wrapping the closed-form fits.

Multi-column input is treated as independent coordinates: the convex
generator is the separable sum of the scalar one, so every column gets its
own canonical parameter and the log densities add up.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, DensityMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from .exceptions import DomainError
from .logistic import (LogisticParams, _support_ok, legendre_class, log_density_logistic,
                       mean_to_theta)
from .model import KledModel


class _ScoreMixin:
    def score(self, X, y=None):
        """Total unnormalized log density of ``X``."""
        return float(np.sum(self.score_samples(X)))


class KledDensity(_ScoreMixin, DensityMixin, BaseEstimator):
    """Power-variance K-LED fitted by maximum likelihood, one column at a time.

    The estimate of the canonical parameter is ``ln_{2-beta}`` of the column
    mean, which is infinite when that mean sits on the boundary of the
    support.

    Parameters
    ----------
    beta : str, int, float or Fraction, default=2
    sigma2 : float, default=1.0
    branch : {"pos", "neg"}, default="pos"
    measure : {"lebesgue", "counting"} or None, default=None

    Attributes
    ----------
    model_ : KledModel
    theta_ : ndarray of shape (n_features,)
    mean_ : ndarray of shape (n_features,)
    variance_ : ndarray of shape (n_features,)
    boundary_ : ndarray of shape (n_features,), dtype bool
    n_features_in_ : int
    """

    def __init__(self, beta=2, sigma2=1.0, branch="pos", measure=None):
        self.beta = beta
        self.sigma2 = sigma2
        self.branch = branch
        self.measure = measure

    def fit(self, X, y=None):
        X = validate_data(self, X, dtype=np.float64)
        self.model_ = KledModel(self.beta, self.sigma2, self.branch, self.measure)
        fits = [self.model_.fit(col) for col in X.T]
        self.theta_ = np.array([f.theta for f in fits])
        self.mean_ = np.array([f.mean for f in fits])
        self.variance_ = np.array([f.variance for f in fits])
        self.boundary_ = np.array([f.boundary for f in fits])
        return self

    def score_samples(self, X):
        """Unnormalized log density ``-sum_j d_Phi(x_j; theta_j) / sigma2`` per row.

        A column fitted at a boundary contributes 0 where the value equals the
        fitted mean and ``-inf`` elsewhere.
        """
        check_is_fitted(self, "theta_")
        X = validate_data(self, X, dtype=np.float64, reset=False)
        total = np.zeros(X.shape[0])
        for col, theta, mean in zip(X.T, self.theta_, self.mean_):
            if np.isfinite(theta):
                total += np.atleast_1d(self.model_.log_density_unnormalized(col, theta))
            else:
                self.model_._check_support(col)
                total += np.where(col == mean, 0.0, -np.inf)
        return total


class ExtendedLogisticDensity(_ScoreMixin, DensityMixin, BaseEstimator):
    """Density whose cumulant function is the extended logistic loss.

    ``fit`` matches the mean of each column: ``theta_[j]`` solves
    ``loss_grad(theta) = mean(X[:, j])``.
    """

    def __init__(self, alpha=1, beta=1, c=1.0, sigma2=1.0):
        self.alpha = alpha
        self.beta = beta
        self.c = c
        self.sigma2 = sigma2

    def fit(self, X, y=None):
        X = validate_data(self, X, dtype=np.float64)
        self.params_ = LogisticParams(self.alpha, self.beta, self.c)
        self.case_, self.domain_ = legendre_class(self.params_)
        if not _support_ok(X, self.case_):
            raise DomainError(f"observations outside the {self.case_.value} support")
        self.mean_ = X.mean(axis=0)
        self.theta_ = np.array([mean_to_theta(m, self.params_) for m in self.mean_])
        return self

    def score_samples(self, X):
        """Unnormalized log density ``sum_j (x_j theta_j - f(theta_j)) / sigma2``."""
        check_is_fitted(self, "theta_")
        X = validate_data(self, X, dtype=np.float64, reset=False)
        total = np.zeros(X.shape[0])
        for col, theta in zip(X.T, self.theta_):
            total += np.atleast_1d(log_density_logistic(col, theta, self.params_, self.sigma2))
        return total
