"""Pearson correlation and one-way ANOVA F scoring with top-k selection."""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import kernels
from .errors import FeatureLookupError, GroupingError, InsufficientDataError, ParameterError
from .tabular import FeatureMatrix, check_k

# Correlation entries that involve a constant column carry this value.
UNDEFINED = float("nan")


@dataclasses.dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    values: np.ndarray
    names: tuple[str, ...]

    def get(self, a: str, b: str) -> float:
        return float(self.values[self.names.index(a), self.names.index(b)])

    def defined(self) -> np.ndarray:
        return ~np.isnan(self.values)


def pearson_correlation(matrix: FeatureMatrix) -> CorrelationMatrix:
    """Sample Pearson coefficients over the input columns plus the target.

    Entries touching a constant column are :data:`UNDEFINED` (NaN), including
    that column's diagonal.
    """
    if matrix.p < 2:
        raise InsufficientDataError(f"correlation needs at least 2 rows, got {matrix.p}")
    data = np.column_stack([matrix.values, matrix.target.astype(np.float64)])
    centered = data - data.mean(axis=0)
    ss = np.sqrt((centered * centered).sum(axis=0))
    constant = ss == 0.0
    scale = np.where(constant, 1.0, ss)
    z = centered / scale
    corr = z.T @ z
    corr = np.clip((corr + corr.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(corr, 1.0)
    corr[constant, :] = UNDEFINED
    corr[:, constant] = UNDEFINED
    names = tuple(matrix.feature_names) + (matrix.target_name,)
    return CorrelationMatrix(corr, names)


def _group_codes(labels) -> tuple[np.ndarray, int]:
    labels = np.asarray(labels)
    _, codes = np.unique(labels, return_inverse=True)
    return codes.astype(np.int64), int(codes.max()) + 1 if codes.size else 0


def _f_from_ss(ssb, ssw, n, s):
    msb = ssb / (s - 1)
    msw = ssw / (n - s)
    if msw == 0.0:
        return 0.0 if msb == 0.0 else math.inf
    return msb / msw


def anova_f(feature, labels) -> float:
    """One-way ANOVA F value of ``feature`` grouped by ``labels``.

    Mean square between groups over mean square within groups. Zero within-group
    variance gives ``inf`` (or ``0.0`` when the group means coincide too).
    """
    x = np.asarray(feature, dtype=np.float64)
    codes, s = _group_codes(labels)
    if x.shape != codes.shape:
        raise ParameterError("feature and labels must have the same length")
    if s < 2:
        raise GroupingError(f"ANOVA needs at least 2 groups, got {s}")
    if x.size < s + 1:
        raise GroupingError(f"ANOVA needs more observations ({x.size}) than groups ({s})")
    ssb, ssw = kernels.anova_sums_of_squares(x[:, None], codes, s)
    return _f_from_ss(float(ssb[0]), float(ssw[0]), x.size, s)


def anova_f_columns(X, labels) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    codes, s = _group_codes(labels)
    if s < 2:
        raise GroupingError(f"ANOVA needs at least 2 groups, got {s}")
    if X.shape[0] < s + 1:
        raise GroupingError(f"ANOVA needs more observations ({X.shape[0]}) than groups ({s})")
    ssb, ssw = kernels.anova_sums_of_squares(X, codes, s)
    return np.array([_f_from_ss(b, w, X.shape[0], s) for b, w in zip(ssb, ssw)])


def rank_scores(f_values) -> np.ndarray:
    """Indices by descending score; ties keep column order, non-finite last."""
    f = np.asarray(f_values, dtype=np.float64)
    key = np.where(np.isfinite(f), -f, np.inf)
    return np.argsort(key, kind="stable")


@dataclasses.dataclass(frozen=True, eq=False)
class FeatureScores:
    feature_names: tuple[str, ...]
    f_values: np.ndarray
    ranking: np.ndarray
    k: int

    @property
    def selected(self) -> list[str]:
        return [self.feature_names[i] for i in self.ranking[: self.k]]

    def ranked(self) -> list[tuple[str, float]]:
        return [(self.feature_names[i], float(self.f_values[i])) for i in self.ranking]


def select_k_best(matrix: FeatureMatrix, k: int) -> FeatureScores:
    """Score every input column against the target and keep the top ``k``."""
    k = check_k(k, matrix.q)
    f = anova_f_columns(matrix.values, matrix.target)
    return FeatureScores(tuple(matrix.feature_names), f, rank_scores(f), k)


def project(matrix: FeatureMatrix, names) -> FeatureMatrix:
    names = list(names)
    if not names:
        raise ParameterError("project needs at least one feature name")
    idx = []
    for nm in names:
        try:
            idx.append(matrix.feature_names.index(nm))
        except ValueError:
            raise FeatureLookupError(f"unknown feature {nm!r}; have {list(matrix.feature_names)}") from None
    return FeatureMatrix(matrix.values[:, idx], tuple(names), matrix.target, matrix.target_name)
