"""Naive Bayes classifiers."""

from __future__ import annotations

import numpy as np

from .base import PROBABILITY, Estimator, log_odds_to_probability


def _log_priors(y):
    counts = np.bincount(y, minlength=2).astype(np.float64)
    return np.log(counts / counts.sum()), counts


class GaussianNB(Estimator):
    """Per-class Gaussian likelihoods; variances padded by
    ``var_smoothing * max(feature variance)``."""

    score_kind = PROBABILITY

    def __init__(self, seed=0, var_smoothing=1e-9):
        super().__init__(seed, var_smoothing=var_smoothing)

    def _fit(self, X, y):
        self.log_prior_, _ = _log_priors(y)
        eps = self.var_smoothing * float(np.var(X, axis=0).max()) if X.shape[1] else 0.0
        self.theta_ = np.stack([X[y == c].mean(axis=0) for c in (0, 1)])
        self.var_ = np.stack([X[y == c].var(axis=0) for c in (0, 1)]) + eps
        if not np.all(self.var_ > 0):
            # every feature constant in a class and across the data
            self.var_ = np.where(self.var_ > 0, self.var_, 1e-300)

    def joint_log_likelihood(self, X):
        X = self._check(X)
        jll = []
        for c in (0, 1):
            var = self.var_[c]
            ll = -0.5 * np.sum(np.log(2.0 * np.pi * var)) - 0.5 * np.sum(
                (X - self.theta_[c]) ** 2 / var, axis=1
            )
            jll.append(self.log_prior_[c] + ll)
        return np.stack(jll, axis=1)

    def predict_proba(self, X):
        jll = self.joint_log_likelihood(X)
        p1 = log_odds_to_probability(jll[:, 0], jll[:, 1])
        return np.column_stack([1.0 - p1, p1])

    def decision_function(self, X):
        jll = self.joint_log_likelihood(X)
        return log_odds_to_probability(jll[:, 0], jll[:, 1])


class BernoulliNB(Estimator):
    """Features binarised at ``binarize`` (strictly greater is 1), Laplace
    smoothing ``alpha``."""

    score_kind = PROBABILITY

    def __init__(self, seed=0, binarize=0.0, alpha=1.0):
        super().__init__(seed, binarize=binarize, alpha=alpha)

    def _fit(self, X, y):
        self.log_prior_, counts = _log_priors(y)
        B = (X > self.binarize).astype(np.float64)
        ones = np.stack([B[y == c].sum(axis=0) for c in (0, 1)])
        prob = (ones + self.alpha) / (counts[:, None] + 2.0 * self.alpha)
        self.log_p_ = np.log(prob)
        self.log_q_ = np.log1p(-prob)

    def decision_function(self, X):
        X = self._check(X)
        B = (X > self.binarize).astype(np.float64)
        jll = B @ self.log_p_.T + (1.0 - B) @ self.log_q_.T + self.log_prior_
        return log_odds_to_probability(jll[:, 0], jll[:, 1])
