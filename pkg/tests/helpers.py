"""Shared builders and independent oracles for the test suite."""

import math

import numpy as np

from heartsel.tabular import FeatureSpec, _rows_to_dataset, encode

TOY_SCHEMA = [
    FeatureSpec("rid", "continuous", "ignore"),
    FeatureSpec("x", "continuous"),
    FeatureSpec("z", "continuous"),
    FeatureSpec("y", "binary", "target"),
]


def toy_dataset(y, x=None, missing_rows=()):
    """Encoded dataset with a row id column so rows can be traced after sampling."""
    y = list(y)
    x = list(range(len(y))) if x is None else list(x)
    rows = []
    for i, (xi, yi) in enumerate(zip(x, y)):
        z = "" if i in missing_rows else str(float(i) * 0.5)
        rows.append([str(i), repr(float(xi)), z, str(yi)])
    return encode(_rows_to_dataset(["rid", "x", "z", "y"], rows, TOY_SCHEMA))


def row_ids(dataset):
    return [int(v) for v in dataset.column("rid")]


def literal_anova_f(groups):
    """One-way ANOVA F written out term by term from the textbook definition.

    ``groups`` is a list of lists of observations K_ip, one list per group i.
    """
    S = len(groups)
    N = sum(len(g) for g in groups)
    grand = sum(sum(g) for g in groups) / N
    between = 0.0
    for g in groups:
        j_i = len(g)
        mean_i = sum(g) / j_i
        between += j_i * (mean_i - grand) ** 2
    within = 0.0
    for g in groups:
        mean_i = sum(g) / len(g)
        for k in g:
            within += (k - mean_i) ** 2
    msb = between / (S - 1)
    msw = within / (N - S)
    if msw == 0.0:
        return 0.0 if msb == 0.0 else math.inf
    return msb / msw


def brute_force_auc(y, scores):
    """Fraction of (positive, negative) pairs ordered correctly, ties count half."""
    pos = [s for s, t in zip(scores, y) if t == 1]
    neg = [s for s, t in zip(scores, y) if t == 0]
    total = 0.0
    for p in pos:
        for n in neg:
            total += 1.0 if p > n else 0.5 if p == n else 0.0
    return total / (len(pos) * len(neg))


def random_anova_instance(rng):
    n = int(rng.integers(4, 31))
    y = np.zeros(n, dtype=np.int64)
    y[rng.permutation(n)[: int(rng.integers(1, n - 1))]] = 1
    scale = 10.0 ** rng.uniform(-3, 3)
    x = rng.normal(loc=rng.uniform(-50, 50), scale=scale, size=n)
    if rng.random() < 0.1:
        x = np.round(x / scale)  # coarse values produce ties and equal means
    return x, y
