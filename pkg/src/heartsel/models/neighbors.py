"""Distance-based classifiers."""

from __future__ import annotations

import numpy as np

from .. import kernels
from .base import MARGIN, VOTE, Estimator


class NearestCentroid(Estimator):
    """Euclidean distance to per-class means.

    The score is ``d0^2 - d1^2``: positive when the class-1 centroid is closer.
    """

    score_kind = MARGIN

    def _fit(self, X, y):
        self.centroids_ = np.stack([X[y == c].mean(axis=0) for c in (0, 1)])

    def decision_function(self, X):
        X = self._check(X)
        d0 = ((X - self.centroids_[0]) ** 2).sum(axis=1)
        d1 = ((X - self.centroids_[1]) ** 2).sum(axis=1)
        return d0 - d1


class KNeighbors(Estimator):
    """Majority vote of the ``n_neighbors`` closest training rows.

    Equal distances resolve to the lower training row index. The score is the
    class-1 fraction among the neighbours.
    """

    score_kind = VOTE
    discriminative = False

    def __init__(self, seed=0, n_neighbors=5):
        super().__init__(seed, n_neighbors=n_neighbors)

    def _fit(self, X, y):
        self.X_ = X.copy()
        self.y_ = y.astype(np.float64)
        self.k_ = int(min(self.n_neighbors, X.shape[0]))

    def decision_function(self, X):
        X = self._check(X)
        return kernels.knn_fraction(self.X_, self.y_, X, self.k_)
