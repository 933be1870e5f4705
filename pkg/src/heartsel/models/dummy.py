from __future__ import annotations

import numpy as np

from ..errors import ParameterError
from ..preprocess import STREAM_MODEL, make_rng
from .base import LABEL, Estimator


class DummyClassifier(Estimator):
    """Ignores the features.

    ``most_frequent`` always predicts the majority training class (class 0 on
    a tie). ``stratified`` draws labels at the training class rate from a
    generator re-seeded on every call, so repeated predictions match.
    """

    score_kind = LABEL
    discriminative = False

    def __init__(self, seed=0, strategy="most_frequent"):
        if strategy not in ("most_frequent", "stratified"):
            raise ParameterError(f"unknown dummy strategy {strategy!r}")
        super().__init__(seed, strategy=strategy)

    def _fit(self, X, y):
        self.prior_ = float(np.mean(y))
        self.majority_ = 1 if self.prior_ > 0.5 else 0

    def predict(self, X):
        X = self._check(X)
        if self.strategy == "most_frequent":
            return np.full(X.shape[0], self.majority_, dtype=np.int64)
        rng = make_rng(self.seed, STREAM_MODEL)
        return (rng.random(X.shape[0]) < self.prior_).astype(np.int64)

    def decision_function(self, X):
        return self.predict(X).astype(np.float64)
