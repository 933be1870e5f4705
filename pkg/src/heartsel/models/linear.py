"""Linear classifiers: logistic regression, SGD, perceptron, ridge, linear SVC,
passive-aggressive.

None of them rescale features. The full-batch learners halve their step until
the objective does not increase, which keeps them stable on raw clinical
ranges (ages, glucose levels in the hundreds) at the nominal learning rate.
"""

from __future__ import annotations

import numpy as np

from .. import kernels
from ..preprocess import STREAM_MODEL, make_rng
from .base import MARGIN, PROBABILITY, Estimator, sigmoid

MAX_HALVINGS = 60


def logistic_objective(w, b, X, y, l2):
    """Mean log-loss plus ``l2/2 * ||w||^2`` (intercept unpenalised)."""
    z = X @ w + b
    return float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * (w @ w))


def logistic_gradient(w, b, X, y, l2):
    r = sigmoid(X @ w + b) - y
    return X.T @ r / X.shape[0] + l2 * w, float(r.mean())


def _descend(objective, gradient, w, b, lr, epochs, project=None, step_schedule=None):
    """Full-batch descent with step halving; returns w, b, loss history.

    Without a schedule each epoch starts from twice the last accepted step,
    capped at ``lr``, so the halving search rarely runs more than once.
    """
    loss = objective(w, b)
    history = [loss]
    accepted = lr
    for epoch in range(1, epochs + 1):
        gw, gb = gradient(w, b)
        step = min(lr, 2.0 * accepted) if step_schedule is None else step_schedule(epoch)
        for _ in range(MAX_HALVINGS):
            w_new = w - step * gw
            b_new = b - step * gb
            if project is not None:
                w_new = project(w_new)
            new_loss = objective(w_new, b_new)
            if new_loss <= loss:
                break
            step /= 2.0
        else:
            history.append(loss)
            break
        w, b, loss = w_new, b_new, new_loss
        accepted = step
        history.append(loss)
    return w, b, history


class LogisticRegression(Estimator):
    score_kind = PROBABILITY

    def __init__(self, seed=0, learning_rate=0.1, epochs=1000, l2=1e-4):
        super().__init__(seed, learning_rate=learning_rate, epochs=epochs, l2=l2)

    def _fit(self, X, y):
        self.coef_, self.intercept_, self.loss_history_ = kernels.logistic_descent(
            X, y, self.l2, self.learning_rate, int(self.epochs), MAX_HALVINGS
        )

    def decision_function(self, X):
        X = self._check(X)
        return sigmoid(X @ self.coef_ + self.intercept_)


def hinge_objective(w, b, X, ys, l2):
    margins = ys * (X @ w + b)
    return float(0.5 * l2 * (w @ w) + np.mean(np.maximum(0.0, 1.0 - margins)))


def hinge_subgradient(w, b, X, ys, l2):
    active = ys * (X @ w + b) < 1.0
    coeff = np.where(active, -ys, 0.0) / X.shape[0]
    return l2 * w + X.T @ coeff, float(coeff.sum())


class LinearSVC(Estimator):
    """Hinge loss with L2 penalty, full-batch Pegasos steps ``1/(l2 * t)``.

    Iterates are projected onto the ball of radius ``1/sqrt(l2)`` and a step is
    halved until the primal objective does not increase.
    """

    score_kind = MARGIN

    def __init__(self, seed=0, l2=1e-4, epochs=1000):
        super().__init__(seed, l2=l2, epochs=epochs)

    def _fit(self, X, y):
        ys = np.where(y == 1, 1.0, -1.0)
        radius = 1.0 / np.sqrt(self.l2)

        def project(w):
            norm = np.sqrt(w @ w)
            return w if norm <= radius else w * (radius / norm)

        self.coef_, self.intercept_, history = _descend(
            lambda w, b: hinge_objective(w, b, X, ys, self.l2),
            lambda w, b: hinge_subgradient(w, b, X, ys, self.l2),
            np.zeros(X.shape[1]),
            0.0,
            None,
            int(self.epochs),
            project=project,
            step_schedule=lambda t: 1.0 / (self.l2 * t),
        )
        self.loss_history_ = np.array(history)

    def decision_function(self, X):
        X = self._check(X)
        return X @ self.coef_ + self.intercept_


def _epoch_orders(seed, n, epochs):
    rng = make_rng(seed, STREAM_MODEL)
    return np.stack([rng.permutation(n) for _ in range(epochs)]).astype(np.int64)


class SGDClassifier(Estimator):
    """Log-loss, one update per sample, rows reshuffled every epoch."""

    score_kind = PROBABILITY

    def __init__(self, seed=0, learning_rate=0.01, epochs=100):
        super().__init__(seed, learning_rate=learning_rate, epochs=epochs)

    def _fit(self, X, y):
        orders = _epoch_orders(self.seed, X.shape[0], int(self.epochs))
        self.coef_, self.intercept_ = kernels.sgd_logistic(
            X, y, np.zeros(X.shape[1]), 0.0, self.learning_rate, orders
        )

    def decision_function(self, X):
        X = self._check(X)
        return sigmoid(X @ self.coef_ + self.intercept_)


class Perceptron(Estimator):
    """Rosenblatt updates on misclassified (or zero-margin) rows.

    Scores are the raw margin ``w.x + b``.
    """

    score_kind = MARGIN

    def __init__(self, seed=0, epochs=100):
        super().__init__(seed, epochs=epochs)

    def _fit(self, X, y):
        orders = _epoch_orders(self.seed, X.shape[0], int(self.epochs))
        ys = np.where(y == 1, 1.0, -1.0)
        self.coef_, self.intercept_ = kernels.perceptron(X, ys, np.zeros(X.shape[1]), 0.0, orders)

    def decision_function(self, X):
        X = self._check(X)
        return X @ self.coef_ + self.intercept_


class PassiveAggressive(Estimator):
    score_kind = MARGIN

    def __init__(self, seed=0, C=1.0, epochs=100):
        super().__init__(seed, C=C, epochs=epochs)

    def _fit(self, X, y):
        orders = _epoch_orders(self.seed, X.shape[0], int(self.epochs))
        ys = np.where(y == 1, 1.0, -1.0)
        self.coef_, self.intercept_ = kernels.passive_aggressive(
            X, ys, np.zeros(X.shape[1]), 0.0, self.C, orders
        )

    def decision_function(self, X):
        X = self._check(X)
        return X @ self.coef_ + self.intercept_


class RidgeClassifier(Estimator):
    """Least squares on +/-1 targets with an unpenalised intercept."""

    score_kind = MARGIN

    def __init__(self, seed=0, alpha=1.0):
        super().__init__(seed, alpha=alpha)

    def _fit(self, X, y):
        t = np.where(y == 1, 1.0, -1.0)
        x_mean = X.mean(axis=0)
        t_mean = t.mean()
        Xc = X - x_mean
        gram = Xc.T @ Xc + self.alpha * np.eye(X.shape[1])
        self.coef_ = np.linalg.solve(gram, Xc.T @ (t - t_mean))
        self.intercept_ = float(t_mean - x_mean @ self.coef_)

    def decision_function(self, X):
        X = self._check(X)
        return X @ self.coef_ + self.intercept_
