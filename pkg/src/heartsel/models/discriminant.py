"""Gaussian discriminant analysis (shared and per-class covariance)."""

from __future__ import annotations

import numpy as np

from .base import PROBABILITY, Estimator, log_odds_to_probability


def _regularize(cov, reg):
    q = cov.shape[0]
    shift = reg * np.trace(cov) / q if q else 0.0
    if shift <= 0.0:
        shift = reg
    return cov + shift * np.eye(q)


def _gaussian_log_density(X, mean, cov):
    """Log N(x; mean, cov) up to the shared ``-q/2 log 2pi`` term."""
    diff = X - mean
    try:
        chol = np.linalg.cholesky(cov)
        sol = np.linalg.solve(chol, diff.T)
        maha = (sol * sol).sum(axis=0)
        logdet = 2.0 * np.log(np.diag(chol)).sum()
    except np.linalg.LinAlgError:
        sign, logdet = np.linalg.slogdet(cov)
        maha = np.einsum("ij,jk,ik->i", diff, np.linalg.pinv(cov), diff)
        if sign <= 0:
            logdet = 0.0
    return -0.5 * (maha + logdet)


class LinearDiscriminant(Estimator):
    """Pooled within-class covariance plus ``reg * trace / q`` on the diagonal."""

    score_kind = PROBABILITY

    def __init__(self, seed=0, reg=1e-6):
        super().__init__(seed, reg=reg)

    def _fit(self, X, y):
        counts = np.bincount(y, minlength=2).astype(np.float64)
        self.log_prior_ = np.log(counts / counts.sum())
        self.means_ = np.stack([X[y == c].mean(axis=0) for c in (0, 1)])
        centered = X - self.means_[y]
        dof = max(X.shape[0] - 2, 1)
        self.covariance_ = _regularize(centered.T @ centered / dof, self.reg)

    def decision_function(self, X):
        X = self._check(X)
        l0 = _gaussian_log_density(X, self.means_[0], self.covariance_) + self.log_prior_[0]
        l1 = _gaussian_log_density(X, self.means_[1], self.covariance_) + self.log_prior_[1]
        return log_odds_to_probability(l0, l1)


class QuadraticDiscriminant(Estimator):
    score_kind = PROBABILITY

    def __init__(self, seed=0, reg=1e-6):
        super().__init__(seed, reg=reg)

    def _fit(self, X, y):
        counts = np.bincount(y, minlength=2).astype(np.float64)
        self.log_prior_ = np.log(counts / counts.sum())
        self.means_ = np.stack([X[y == c].mean(axis=0) for c in (0, 1)])
        covs = []
        for c in (0, 1):
            Xc = X[y == c] - self.means_[c]
            dof = max(Xc.shape[0] - 1, 1)
            covs.append(_regularize(Xc.T @ Xc / dof, self.reg))
        self.covariances_ = np.stack(covs)

    def decision_function(self, X):
        X = self._check(X)
        l0 = _gaussian_log_density(X, self.means_[0], self.covariances_[0]) + self.log_prior_[0]
        l1 = _gaussian_log_density(X, self.means_[1], self.covariances_[1]) + self.log_prior_[1]
        return log_odds_to_probability(l0, l1)
