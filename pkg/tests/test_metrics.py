import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heartsel.errors import ParameterError, UndefinedAUCError
from heartsel.metrics import (
    ConfusionMatrix,
    accuracy,
    balanced_accuracy,
    confusion,
    error_rate,
    evaluate,
    f1,
    f1_counts,
    false_positive_rate,
    midranks,
    precision,
    recall,
    roc_auc,
    roc_auc_rank,
    roc_auc_trapezoid,
    roc_curve,
    specificity,
)

from helpers import brute_force_auc


def test_worked_confusion_example():
    cm = ConfusionMatrix(tp=3, fp=1, fn=2, tn=4)
    assert accuracy(cm) == pytest.approx(0.7, abs=1e-12)
    assert precision(cm) == pytest.approx(0.75, abs=1e-12)
    assert recall(cm) == pytest.approx(0.6, abs=1e-12)
    assert f1(cm) == pytest.approx(2 / 3, abs=1e-12)
    assert balanced_accuracy(cm) == pytest.approx(0.7, abs=1e-12)
    assert error_rate(cm) == pytest.approx(0.3, abs=1e-12)


def test_confusion_counts():
    cm = confusion([1, 1, 0, 0, 1], [1, 0, 0, 1, 1])
    assert (cm.tp, cm.fp, cm.fn, cm.tn) == (2, 1, 1, 1)
    assert cm.n == 5


def test_perfect_and_all_wrong():
    assert accuracy(confusion([0, 1, 1], [0, 1, 1])) == 1.0
    cm = confusion([0, 1], [1, 0])
    assert accuracy(cm) == 0.0 and f1(cm) == 0.0


def test_degenerate_denominators_flagged():
    # a model that never predicts positive
    m = evaluate(confusion([0, 0, 1, 1], [0, 0, 0, 0]))
    assert m.precision == 0.0 and m.f1 == 0.0
    assert "precision" in m.degenerate and "f1" in m.degenerate
    assert m.balanced_accuracy == 0.5
    only_neg = evaluate(confusion([0, 0], [0, 1]))
    assert "recall" in only_neg.degenerate


@pytest.mark.parametrize(
    "t, p",
    [([0, 1], [0]), ([], []), ([0, 2], [0, 1]), ([[0, 1]], [[0, 1]])],
)
def test_confusion_rejects_bad_input(t, p):
    with pytest.raises(ParameterError):
        confusion(t, p)


def test_negative_counts_rejected():
    with pytest.raises(ParameterError):
        ConfusionMatrix(-1, 0, 0, 0)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 500), st.integers(0, 500), st.integers(0, 500), st.integers(0, 500))
def test_identities(tp, fp, fn, tn):
    if tp + fp + fn + tn == 0:
        return
    cm = ConfusionMatrix(tp, fp, fn, tn)
    n = cm.n
    assert accuracy(cm) == pytest.approx((tp + tn) / n, abs=1e-12)
    assert accuracy(cm) + error_rate(cm) == pytest.approx(1.0, abs=1e-12)
    assert balanced_accuracy(cm) == pytest.approx((recall(cm) + specificity(cm)) / 2, abs=1e-12)
    assert f1(cm) == pytest.approx(f1_counts(cm), abs=1e-12)
    assert specificity(cm) + false_positive_rate(cm) == pytest.approx(1.0 if fp + tn else 0.0, abs=1e-12)
    for v in (accuracy(cm), balanced_accuracy(cm), precision(cm), recall(cm), f1(cm)):
        assert 0.0 <= v <= 1.0


def test_auc_worked_example():
    assert roc_auc([0, 0, 1, 1], [0.1, 0.6, 0.35, 0.8]) == pytest.approx(0.75, abs=1e-12)


def test_auc_extremes_and_ties():
    assert roc_auc([0, 0, 1, 1], [0, 1, 2, 3]) == 1.0
    assert roc_auc([0, 0, 1, 1], [3, 2, 1, 0]) == 0.0
    assert roc_auc([0, 1, 0, 1], [0.5] * 4) == 0.5


def test_auc_single_class_undefined():
    with pytest.raises(UndefinedAUCError):
        roc_auc([1, 1, 1], [0.1, 0.2, 0.3])


def test_auc_rejects_non_finite():
    with pytest.raises(ParameterError):
        roc_auc([0, 1], [0.0, np.nan])


def test_midranks():
    np.testing.assert_array_equal(midranks([10, 20, 10, 30]), [1.5, 3, 1.5, 4])


def test_roc_curve_endpoints():
    fpr, tpr, thr = roc_curve([0, 1, 0, 1, 1], [0.2, 0.9, 0.4, 0.4, 0.1])
    assert (fpr[0], tpr[0]) == (0.0, 0.0)
    assert (fpr[-1], tpr[-1]) == (1.0, 1.0)
    assert np.all(np.diff(fpr) >= 0) and np.all(np.diff(tpr) >= 0)
    assert np.isinf(thr[0])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 40), st.booleans())
def test_auc_routes_agree_with_brute_force(seed, n, coarse):
    rng = np.random.default_rng(seed)
    y = rng.integers(0, 2, n)
    y[0], y[1] = 0, 1
    s = rng.integers(0, 4, n).astype(float) if coarse else rng.normal(size=n)
    expect = brute_force_auc(y.tolist(), s.tolist())
    assert roc_auc_rank(y, s) == pytest.approx(expect, abs=1e-12)
    assert roc_auc_trapezoid(y, s) == pytest.approx(expect, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_auc_invariant_under_monotone_transform(seed):
    rng = np.random.default_rng(seed)
    y = np.r_[0, 1, rng.integers(0, 2, 30)]
    s = rng.normal(size=32)
    assert roc_auc(y, np.exp(s) * 3 + 1) == pytest.approx(roc_auc(y, s), abs=1e-12)
    assert roc_auc(y, -s) == pytest.approx(1 - roc_auc(y, s), abs=1e-12)
