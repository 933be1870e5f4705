"""Estimator base class shared by every registry model."""

from __future__ import annotations

import numpy as np

from ..errors import FitError, ShapeError

PROBABILITY = "probability"
MARGIN = "margin"
VOTE = "vote"
LABEL = "label"


class Estimator:
    """Binary classifier over a dense float matrix.

    Subclasses implement ``_fit(X, y)`` and ``decision_function(X)``. Scores
    above ``threshold`` predict class 1; a score exactly at the threshold
    predicts class 0.
    """

    score_kind = PROBABILITY
    discriminative = True

    def __init__(self, seed: int = 0, **hyperparameters):
        self.seed = int(seed)
        self.hyperparameters = dict(hyperparameters)
        for key, value in hyperparameters.items():
            setattr(self, key, value)
        self.n_features_ = None

    @property
    def threshold(self) -> float:
        return 0.5 if self.score_kind in (PROBABILITY, VOTE, LABEL) else 0.0

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if X.ndim != 2 or y.shape != (X.shape[0],):
            raise ShapeError(f"expected X (p, q) and y (p,), got {X.shape} and {y.shape}")
        if X.shape[0] < 2:
            raise FitError(f"need at least 2 training rows, got {X.shape[0]}")
        if self.discriminative and np.unique(y).size < 2:
            raise FitError(f"{type(self).__name__} needs both classes in the training data")
        self.n_features_ = X.shape[1]
        self._fit(X, y)
        return self

    def _fit(self, X, y):
        raise NotImplementedError

    def _check(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if self.n_features_ is None:
            raise FitError(f"{type(self).__name__} is not fitted")
        if X.ndim != 2 or X.shape[1] != self.n_features_:
            raise ShapeError(
                f"{type(self).__name__} was fit on {self.n_features_} features, got shape {X.shape}"
            )
        return X

    def decision_function(self, X) -> np.ndarray:
        raise NotImplementedError

    def predict(self, X) -> np.ndarray:
        return (self.decision_function(X) > self.threshold).astype(np.int64)

    def __setattr__(self, name, value):
        if self.__dict__.get("_frozen", False):
            raise AttributeError(f"{type(self).__name__} is frozen; refit instead of mutating")
        object.__setattr__(self, name, value)

    def freeze(self):
        """Mark every fitted array read-only and block attribute assignment."""
        for value in vars(self).values():
            if isinstance(value, np.ndarray):
                value.setflags(write=False)
        object.__setattr__(self, "_frozen", True)
        return self


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def log_odds_to_probability(log_p0, log_p1):
    """P(class 1) from two unnormalised log posteriors."""
    return sigmoid(np.asarray(log_p1) - np.asarray(log_p0))
