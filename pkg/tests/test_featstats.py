import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from heartsel.errors import FeatureLookupError, GroupingError, InsufficientDataError, ParameterError
from heartsel.featstats import (
    anova_f,
    anova_f_columns,
    pearson_correlation,
    project,
    rank_scores,
    select_k_best,
)
from heartsel.tabular import FeatureMatrix

from helpers import literal_anova_f, random_anova_instance


def fm(X, y, names=None):
    X = np.asarray(X, dtype=float)
    names = names or tuple(f"f{i}" for i in range(X.shape[1]))
    return FeatureMatrix(X, tuple(names), np.asarray(y))


def test_anova_worked_example():
    assert anova_f([1, 2, 3, 4, 5, 6], [0, 0, 0, 1, 1, 1]) == pytest.approx(13.5, rel=1e-12)


def test_anova_equal_means_is_zero():
    assert anova_f([1, 3, 2, 2], [0, 0, 1, 1]) == 0.0


def test_anova_zero_within_variance():
    assert anova_f([5, 5, 7, 7], [0, 0, 1, 1]) == math.inf
    assert anova_f([5, 5, 5, 5], [0, 0, 1, 1]) == 0.0


def test_anova_needs_two_groups():
    with pytest.raises(GroupingError):
        anova_f([1, 2, 3], [1, 1, 1])
    with pytest.raises(GroupingError):
        anova_f([1, 2], [0, 1])


def test_anova_three_groups_match_oracle():
    groups = [[1.0, 2.5, 3.0], [4.0, 4.5], [9.0, 7.0, 8.5, 6.0]]
    x = sum(groups, [])
    labels = sum(([i] * len(g) for i, g in enumerate(groups)), [])
    assert anova_f(x, labels) == pytest.approx(literal_anova_f(groups), rel=1e-12)


def test_anova_matches_literal_oracle(each_backend):
    rng = np.random.default_rng(2024)
    for _ in range(300):
        x, y = random_anova_instance(rng)
        expect = literal_anova_f([list(x[y == 0]), list(x[y == 1])])
        got = anova_f(x, y)
        if math.isinf(expect):
            assert got == expect
        else:
            assert got == pytest.approx(expect, rel=1e-9, abs=1e-300)


def test_anova_columns_agree_with_single(each_backend):
    rng = np.random.default_rng(1)
    X = rng.normal(size=(40, 6)) * [1, 10, 100, 0.1, 5, 2]
    y = rng.integers(0, 2, 40)
    cols = anova_f_columns(X, y)
    for j in range(6):
        assert cols[j] == pytest.approx(anova_f(X[:, j], y), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(
    st.integers(0, 2**32),
    st.floats(1e-3, 1e3) | st.floats(-1e3, -1e-3),
    st.floats(-1e3, 1e3),
)
def test_anova_affine_invariance(seed, a, shift):
    x, y = random_anova_instance(np.random.default_rng(seed))
    # keep the offset commensurate with the spread, otherwise storing a*x+b in
    # a double already discards the digits the statistic depends on
    b = shift * abs(a) * np.std(x)
    f = anova_f(x, y)
    g = anova_f(a * x + b, y)
    if math.isfinite(f) and f > 1e-6:
        assert g == pytest.approx(f, rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_anova_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    x, y = random_anova_instance(rng)
    perm = rng.permutation(x.size)
    assert anova_f(x[perm], y[perm]) == pytest.approx(anova_f(x, y), rel=1e-9, abs=1e-12)


def test_ranking_ties_and_non_finite():
    f = np.array([2.0, math.inf, 5.0, 2.0, math.nan, 5.0])
    assert rank_scores(f).tolist() == [2, 5, 0, 3, 1, 4]


def test_select_k_best_prefix_and_order():
    rng = np.random.default_rng(0)
    y = np.repeat([0, 1], 50)
    X = rng.normal(size=(100, 5)) + np.outer(y, [0.0, 3.0, 1.0, 2.0, 0.1])
    scores = select_k_best(fm(X, y), 3)
    assert scores.selected == ["f1", "f3", "f2"]
    f = scores.f_values[scores.ranking]
    assert np.all(f[:-1] >= f[1:])
    full = select_k_best(fm(X, y), 5)
    assert [n for n, _ in full.ranked()] == full.selected


@pytest.mark.parametrize("k", [0, 6, -1])
def test_select_k_range(k):
    with pytest.raises(ParameterError):
        select_k_best(fm(np.eye(6)[:, :5], [0, 1, 0, 1, 0, 1]), k)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 8))
def test_select_monotone_in_k(seed, q):
    rng = np.random.default_rng(seed)
    y = np.repeat([0, 1], 10)
    X = np.round(rng.normal(size=(20, q)) * 2)  # rounding makes ties likely
    m = fm(X, y)
    prev = []
    for k in range(1, q + 1):
        cur = select_k_best(m, k).selected
        assert cur[: len(prev)] == prev
        prev = cur


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.floats(0.01, 100), st.floats(-100, 100))
def test_top_feature_stable_under_rescaling(seed, a, b):
    rng = np.random.default_rng(seed)
    y = np.repeat([0, 1], 15)
    X = rng.normal(size=(30, 4)) + np.outer(y, rng.uniform(0, 2, 4))
    top = select_k_best(fm(X, y), 1).selected
    j = int(rng.integers(0, 4))
    X2 = X.copy()
    X2[:, j] = a * X2[:, j] + b
    f = select_k_best(fm(X, y), 4).f_values
    if np.sort(f)[-1] - np.sort(f)[-2] > 1e-6 * np.sort(f)[-1]:
        assert select_k_best(fm(X2, y), 1).selected == top


def test_pearson_hand_example():
    c = pearson_correlation(fm([[1.0], [2.0], [3.0]], [1, 0, 0]))
    assert c.names == ("f0", "target")
    c2 = pearson_correlation(fm([[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]], [0, 1, 0]))
    assert c2.get("f0", "f1") == pytest.approx(-1.0, abs=1e-12)
    assert c.get("f0", "f0") == 1.0


def test_pearson_matches_numpy():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(50, 4))
    y = rng.integers(0, 2, 50)
    c = pearson_correlation(fm(X, y))
    ref = np.corrcoef(np.column_stack([X, y]).T)
    np.testing.assert_allclose(c.values, ref, atol=1e-12)


def test_pearson_constant_column_undefined():
    X = np.array([[1.0, 7.0], [2.0, 7.0], [4.0, 7.0]])
    c = pearson_correlation(fm(X, [0, 1, 1]))
    assert np.isnan(c.values[1]).all() and np.isnan(c.values[:, 1]).all()
    assert c.values[0, 0] == 1.0
    assert c.defined().sum() == 4


def test_pearson_needs_two_rows():
    with pytest.raises(InsufficientDataError):
        pearson_correlation(fm([[1.0]], [0]))


@settings(max_examples=80, deadline=None)
@given(
    arrays(np.float64, st.integers(3, 25), elements=st.floats(-100, 100)),
    st.floats(0.01, 50) | st.floats(-50, -0.01),
    st.floats(-100, 100),
)
def test_pearson_affine_sign(x, a, b):
    x = x - x.mean()
    if np.ptp(x) < 1e-3:
        return
    y = (np.arange(x.size) % 2).astype(np.int64)
    base = pearson_correlation(fm(x[:, None], y)).values[0, 1]
    moved = pearson_correlation(fm((a * x + b)[:, None], y)).values[0, 1]
    assert moved == pytest.approx(np.sign(a) * base, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 6))
def test_pearson_invariants(seed, q):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(12, q))
    c = pearson_correlation(fm(X, rng.integers(0, 2, 12))).values
    ok = ~np.isnan(c)
    assert np.all(np.abs(c[ok]) <= 1.0)
    np.testing.assert_allclose(np.where(ok, c, 0), np.where(ok, c, 0).T, atol=1e-12)


def test_project():
    m = fm(np.arange(12.0).reshape(4, 3), [0, 1, 0, 1], ("a", "b", "c"))
    p = project(m, ["c", "a"])
    np.testing.assert_array_equal(p.values, m.values[:, [2, 0]])
    assert p.feature_names == ("c", "a")
    np.testing.assert_array_equal(p.target, m.target)
    same = project(m, m.feature_names)
    np.testing.assert_array_equal(same.values, m.values)
    with pytest.raises(ParameterError):
        project(m, [])
    with pytest.raises(FeatureLookupError, match="'d'"):
        project(m, ["a", "d"])
