"""CART with Gini impurity.

Nodes are stored in flat arrays (``feature``, ``threshold``, ``left``,
``right``, ``value``) with ``feature == -1`` marking a leaf and ``value`` the
weighted class-1 fraction of the leaf. Rows with ``x <= threshold`` go left.
"""

from __future__ import annotations

import math

import numpy as np

from .. import kernels
from ..errors import ParameterError
from ..preprocess import make_rng
from .base import PROBABILITY, Estimator


def resolve_max_features(max_features, q: int) -> int:
    if max_features is None or max_features == "all":
        return q
    if max_features == "sqrt":
        return max(1, int(math.floor(math.sqrt(q))))
    if isinstance(max_features, (int, np.integer)) and 1 <= max_features:
        return int(min(max_features, q))
    raise ParameterError(f"invalid max_features {max_features!r}")


def _random_split(X, y, w, idx, features, rng):
    """Extra-trees split: one uniform threshold per candidate feature."""
    yy, ww = y[idx], w[idx]
    best = (-1, 0.0, -np.inf)
    for f in features:
        vals = X[idx, f]
        lo, hi = vals.min(), vals.max()
        if not lo < hi:
            continue
        thr = rng.uniform(lo, hi)
        if thr >= hi:
            thr = lo
        go_left = vals <= thr
        l1 = ww[go_left & (yy == 1)].sum()
        l0 = ww[go_left & (yy != 1)].sum()
        r1 = ww[~go_left & (yy == 1)].sum()
        r0 = ww[~go_left & (yy != 1)].sum()
        wl, wr = l0 + l1, r0 + r1
        if wl <= 0 or wr <= 0:
            continue
        score = (l0 * l0 + l1 * l1) / wl + (r0 * r0 + r1 * r1) / wr
        if score > best[2]:
            best = (int(f), float(thr), float(score))
    return best


class DecisionTree(Estimator):
    """Unpruned by default: nodes split until pure, constant, or smaller
    than ``min_samples_split``.

    Candidate thresholds are midpoints between consecutive distinct values,
    scanned in feature order then ascending threshold; the first best wins.
    With ``max_features`` below q, a sorted random subset of features is tried
    first and the remaining features only if none of those can split.
    """

    score_kind = PROBABILITY

    def __init__(
        self,
        seed=0,
        max_depth=None,
        min_samples_split=2,
        max_features=None,
        splitter="best",
    ):
        if splitter not in ("best", "random"):
            raise ParameterError(f"unknown splitter {splitter!r}")
        super().__init__(
            seed,
            max_depth=max_depth,
            min_samples_split=min_samples_split,
            max_features=max_features,
            splitter=splitter,
        )

    def fit(self, X, y, sample_weight=None):
        self._sample_weight = sample_weight
        try:
            return super().fit(X, y)
        finally:
            self._sample_weight = None

    def _fit(self, X, y):
        n, q = X.shape
        X = np.ascontiguousarray(X)
        y = np.ascontiguousarray(y, dtype=np.int64)
        if self._sample_weight is None:
            w = np.ones(n)
        else:
            w = np.ascontiguousarray(self._sample_weight, dtype=np.float64)
        m = resolve_max_features(self.max_features, q)
        rng = make_rng(self.seed, 0)
        all_features = np.arange(q, dtype=np.int64)
        max_depth = math.inf if self.max_depth is None else int(self.max_depth)

        feature, threshold, left, right, value = [], [], [], [], []

        def new_node(idx):
            feature.append(-1)
            threshold.append(0.0)
            left.append(-1)
            right.append(-1)
            ww = w[idx]
            total = ww.sum()
            value.append(float(ww[y[idx] == 1].sum() / total) if total > 0 else 0.0)
            return len(feature) - 1

        root = new_node(np.arange(n, dtype=np.int64))
        stack = [(root, np.arange(n, dtype=np.int64), 0)]
        while stack:
            node, idx, depth = stack.pop()
            if idx.size < self.min_samples_split or depth >= max_depth:
                continue
            if value[node] in (0.0, 1.0):
                continue
            if m < q:
                first = np.sort(rng.choice(q, size=m, replace=False)).astype(np.int64)
                rest = np.setdiff1d(all_features, first)
                candidates = [first, rest]
            else:
                candidates = [all_features]
            f, thr = -1, 0.0
            for feats in candidates:
                if feats.size == 0:
                    continue
                if self.splitter == "random":
                    f, thr, _ = _random_split(X, y, w, idx, feats, rng)
                else:
                    f, thr, _ = kernels.best_split(X, y, w, idx, feats)
                if f >= 0:
                    break
            if f < 0:
                continue
            go_left = X[idx, f] <= thr
            li, ri = idx[go_left], idx[~go_left]
            feature[node] = f
            threshold[node] = thr
            left[node] = new_node(li)
            right[node] = new_node(ri)
            stack.append((right[node], ri, depth + 1))
            stack.append((left[node], li, depth + 1))

        self.feature_ = np.array(feature, dtype=np.int64)
        self.threshold_ = np.array(threshold, dtype=np.float64)
        self.left_ = np.array(left, dtype=np.int64)
        self.right_ = np.array(right, dtype=np.int64)
        self.value_ = np.array(value, dtype=np.float64)

    @property
    def node_count(self) -> int:
        return int(self.feature_.size)

    def depth(self) -> int:
        depths = np.zeros(self.node_count, dtype=np.int64)
        for i in range(self.node_count):
            if self.feature_[i] >= 0:
                depths[self.left_[i]] = depths[self.right_[i]] = depths[i] + 1
        return int(depths.max())

    def decision_function(self, X):
        X = self._check(X)
        return kernels.tree_leaf_values(
            X, self.feature_, self.threshold_, self.left_, self.right_, self.value_
        )
