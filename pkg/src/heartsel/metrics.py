"""Confusion counts and the scalar classification metrics.

Class 1 is the positive class. Ratios with a zero denominator evaluate to 0
and are listed in :attr:`MetricSet.degenerate` instead of becoming NaN.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .errors import ParameterError, UndefinedAUCError

AUC_AGREEMENT_TOL = 1e-9


@dataclasses.dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        for name in ("tp", "fp", "fn", "tn"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be non-negative")

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def _labels(v, name) -> np.ndarray:
    a = np.asarray(v)
    if a.ndim != 1:
        raise ParameterError(f"{name} must be one-dimensional")
    if a.size and not np.isin(a, (0, 1)).all():
        raise ParameterError(f"{name} must contain only 0/1 labels")
    return a.astype(np.int64)


def confusion(y_true, y_pred) -> ConfusionMatrix:
    t = _labels(y_true, "y_true")
    p = _labels(y_pred, "y_pred")
    if t.shape != p.shape:
        raise ParameterError(f"length mismatch: {t.size} true vs {p.size} predicted labels")
    if t.size == 0:
        raise ParameterError("cannot score empty label vectors")
    return ConfusionMatrix(
        tp=int(np.sum((t == 1) & (p == 1))),
        fp=int(np.sum((t == 0) & (p == 1))),
        fn=int(np.sum((t == 1) & (p == 0))),
        tn=int(np.sum((t == 0) & (p == 0))),
    )


def _ratio(num, den) -> float:
    return num / den if den else 0.0


def _require_nonempty(cm):
    if cm.n < 1:
        raise ParameterError("metrics need at least one sample")


def accuracy(cm: ConfusionMatrix) -> float:
    _require_nonempty(cm)
    return (cm.tp + cm.tn) / cm.n


def error_rate(cm: ConfusionMatrix) -> float:
    _require_nonempty(cm)
    return (cm.fp + cm.fn) / cm.n


def precision(cm: ConfusionMatrix) -> float:
    return _ratio(cm.tp, cm.tp + cm.fp)


def recall(cm: ConfusionMatrix) -> float:
    return _ratio(cm.tp, cm.tp + cm.fn)


def specificity(cm: ConfusionMatrix) -> float:
    return _ratio(cm.tn, cm.tn + cm.fp)


def true_positive_rate(cm: ConfusionMatrix) -> float:
    return recall(cm)


def false_positive_rate(cm: ConfusionMatrix) -> float:
    return _ratio(cm.fp, cm.fp + cm.tn)


def f1(cm: ConfusionMatrix) -> float:
    """Harmonic mean of precision and recall."""
    p, r = precision(cm), recall(cm)
    return _ratio(2.0 * p * r, p + r)


def f1_counts(cm: ConfusionMatrix) -> float:
    return _ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn)


def balanced_accuracy(cm: ConfusionMatrix) -> float:
    return (recall(cm) + specificity(cm)) / 2.0


@dataclasses.dataclass(frozen=True)
class MetricSet:
    accuracy: float
    balanced_accuracy: float
    precision: float
    recall: float
    f1: float
    degenerate: tuple[str, ...]


def evaluate(cm: ConfusionMatrix) -> MetricSet:
    degenerate = []
    if cm.tp + cm.fp == 0:
        degenerate.append("precision")
    if cm.tp + cm.fn == 0:
        degenerate.append("recall")
    if cm.tn + cm.fp == 0:
        degenerate.append("specificity")
    if precision(cm) + recall(cm) == 0:
        degenerate.append("f1")
    return MetricSet(
        accuracy=accuracy(cm),
        balanced_accuracy=balanced_accuracy(cm),
        precision=precision(cm),
        recall=recall(cm),
        f1=f1(cm),
        degenerate=tuple(degenerate),
    )


def _check_scores(y_true, scores):
    y = _labels(y_true, "y_true")
    s = np.asarray(scores, dtype=np.float64)
    if s.shape != y.shape:
        raise ParameterError(f"length mismatch: {y.size} labels vs {s.size} scores")
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise UndefinedAUCError("ROC AUC is undefined unless both classes are present")
    if not np.isfinite(s).all():
        raise ParameterError("scores must be finite")
    return y, s, n_pos, n_neg


def midranks(values) -> np.ndarray:
    """1-based ranks with tied values sharing the mean of their positions."""
    v = np.asarray(values, dtype=np.float64)
    order = np.argsort(v, kind="stable")
    sv = v[order]
    starts = np.flatnonzero(np.r_[True, sv[1:] != sv[:-1]])
    ends = np.r_[starts[1:], sv.size]
    group_rank = (starts + 1 + ends) / 2.0
    ranks = np.empty(v.size)
    ranks[order] = np.repeat(group_rank, ends - starts)
    return ranks


def roc_auc_rank(y_true, scores) -> float:
    """P(random positive outscores random negative), ties counted as one half."""
    y, s, n_pos, n_neg = _check_scores(y_true, scores)
    ranks = midranks(s)
    u = ranks[y == 1].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))


def roc_curve(y_true, scores) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """FPR, TPR and thresholds, one point per distinct score, from (0, 0)."""
    y, s, n_pos, n_neg = _check_scores(y_true, scores)
    order = np.argsort(-s, kind="stable")
    ss = s[order]
    ys = y[order]
    last = np.r_[ss[1:] != ss[:-1], True]
    tps = np.cumsum(ys)[last]
    fps = np.cumsum(1 - ys)[last]
    tpr = np.r_[0.0, tps / n_pos]
    fpr = np.r_[0.0, fps / n_neg]
    thresholds = np.r_[np.inf, ss[last]]
    return fpr, tpr, thresholds


def roc_auc_trapezoid(y_true, scores) -> float:
    fpr, tpr, _ = roc_curve(y_true, scores)
    return float(np.sum((fpr[1:] - fpr[:-1]) * (tpr[1:] + tpr[:-1]) / 2.0))


def roc_auc(y_true, scores) -> float:
    """Area under the ROC curve.

    Computed as a rank statistic and by trapezoidal integration; the two must
    agree to ``AUC_AGREEMENT_TOL`` and the rank value is returned.
    """
    by_rank = roc_auc_rank(y_true, scores)
    by_area = roc_auc_trapezoid(y_true, scores)
    if abs(by_rank - by_area) > AUC_AGREEMENT_TOL:
        raise ArithmeticError(f"AUC routes disagree: rank {by_rank!r} vs trapezoid {by_area!r}")
    return by_rank
