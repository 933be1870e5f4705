"""Tree ensembles: random forest, extra trees, bagging, AdaBoost (SAMME)."""

from __future__ import annotations

import numpy as np

from ..preprocess import STREAM_MODEL, make_rng
from .base import MARGIN, VOTE, Estimator
from .tree import DecisionTree


def member_seeds(seed: int, n: int) -> np.ndarray:
    """Per-member seeds derived from the ensemble seed."""
    rng = make_rng(seed, STREAM_MODEL)
    return rng.integers(0, 2**63 - 1, size=n, dtype=np.int64)


def bootstrap_rows(member_seed: int, n: int) -> np.ndarray:
    return make_rng(int(member_seed), 1).integers(0, n, size=n)


class _VotingTrees(Estimator):
    """Hard-vote ensemble; the score is the fraction of members voting 1."""

    score_kind = VOTE
    bootstrap = True
    tree_options: dict = {}

    def _member_options(self, q):
        return dict(self.tree_options)

    def _fit(self, X, y):
        n = X.shape[0]
        self.estimators_ = []
        for s in member_seeds(self.seed, int(self.n_estimators)):
            rows = bootstrap_rows(s, n) if self.bootstrap else np.arange(n)
            tree = DecisionTree(seed=int(s), **self._member_options(X.shape[1]))
            # Bootstrap draws may be single-class; trees tolerate that.
            tree.discriminative = False
            tree.fit(X[rows], y[rows])
            self.estimators_.append(tree.freeze())

    def decision_function(self, X):
        X = self._check(X)
        votes = np.zeros(X.shape[0])
        for tree in self.estimators_:
            votes += tree.predict(X)
        return votes / len(self.estimators_)

    def freeze(self):
        for tree in self.estimators_:
            tree.freeze()
        return super().freeze()


class RandomForest(_VotingTrees):
    def __init__(self, seed=0, n_estimators=100, max_features="sqrt", bootstrap=True):
        super().__init__(seed, n_estimators=n_estimators, max_features=max_features, bootstrap=bootstrap)

    def _member_options(self, q):
        return {"max_features": self.max_features}


class ExtraTrees(_VotingTrees):
    def __init__(self, seed=0, n_estimators=100, max_features="sqrt", bootstrap=False):
        super().__init__(seed, n_estimators=n_estimators, max_features=max_features, bootstrap=bootstrap)

    def _member_options(self, q):
        return {"max_features": self.max_features, "splitter": "random"}


class Bagging(_VotingTrees):
    def __init__(self, seed=0, n_estimators=10):
        super().__init__(seed, n_estimators=n_estimators)


class AdaBoost(Estimator):
    """Two-class SAMME over depth-1 trees.

    The score is the weighted vote ``sum(alpha_m * h_m(x)) / sum(alpha_m)`` with
    ``h_m`` in {-1, +1}.
    """

    score_kind = MARGIN

    def __init__(self, seed=0, n_estimators=50, learning_rate=1.0):
        super().__init__(seed, n_estimators=n_estimators, learning_rate=learning_rate)

    def _fit(self, X, y):
        n = X.shape[0]
        w = np.full(n, 1.0 / n)
        self.estimators_, alphas = [], []
        for _ in range(int(self.n_estimators)):
            stump = DecisionTree(seed=self.seed, max_depth=1).fit(X, y, sample_weight=w)
            miss = stump.predict(X) != y
            err = float(w[miss].sum() / w.sum())
            if err <= 0.0:
                self.estimators_.append(stump.freeze())
                alphas.append(1.0)
                break
            if err >= 0.5:
                if not self.estimators_:
                    self.estimators_.append(stump.freeze())
                    alphas.append(1.0)
                break
            alpha = self.learning_rate * np.log((1.0 - err) / err)
            self.estimators_.append(stump.freeze())
            alphas.append(alpha)
            w = w * np.exp(alpha * miss)
            w /= w.sum()
        self.alphas_ = np.array(alphas)

    def decision_function(self, X):
        X = self._check(X)
        total = np.zeros(X.shape[0])
        for alpha, stump in zip(self.alphas_, self.estimators_):
            total += alpha * (2.0 * stump.predict(X) - 1.0)
        return total / self.alphas_.sum()

    def freeze(self):
        for stump in self.estimators_:
            stump.freeze()
        return super().freeze()
