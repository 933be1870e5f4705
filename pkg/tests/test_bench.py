import dataclasses

import numpy as np
import pytest

from heartsel import metrics
from heartsel.bench import (
    LINEAR_DISTANCE_MODELS,
    EvalReport,
    ExperimentConfig,
    ModelResult,
    compare,
    evaluate_model,
    prepare,
    run_experiment,
    run_modes,
)
from heartsel.errors import ComparisonError, ConfigError, ParameterError
from heartsel.featstats import select_k_best
from heartsel.models import ModelSpec
from heartsel.report import (
    METRIC_COLUMNS,
    TIMING_HEADERS,
    emit_report,
    predictions_csv,
    read_report_csv,
    results_from_csv,
)

FAST = ("dummy", "logistic-regression", "gaussian-nb", "nearest-centroid", "decision-tree", "perceptron")


@pytest.fixture(scope="module")
def cvd_config():
    return ExperimentConfig(dataset="cvd", synthetic=True, seed=42, models=FAST, serial=True, save_predictions=True)


@pytest.fixture(scope="module")
def cvd_reports(cvd_config):
    return run_modes(cvd_config)


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(models=())
    with pytest.raises(ParameterError):
        ExperimentConfig(models=("not-a-model",))
    with pytest.raises(ConfigError):
        ExperimentConfig(feature_mode="half")
    with pytest.raises(ConfigError):
        ExperimentConfig(split_ratio=1.0)
    with pytest.raises(ConfigError):
        ExperimentConfig(dataset="mystery.csv")
    with pytest.raises(ParameterError):
        ExperimentConfig(params={"kneighbors": {"k": 3}})


def test_config_round_trip(cvd_config):
    assert ExperimentConfig.from_dict(cvd_config.to_dict()) == cvd_config


def test_default_k():
    assert ExperimentConfig(dataset="cvd").effective_k == 4
    assert ExperimentConfig(dataset="framingham").effective_k == 5


def test_preprocess_arithmetic(cvd_reports):
    full = cvd_reports["full"]
    m = full.metadata
    per_class = m["balanced_rows"] // 2
    assert m["n_train"] == 2 * int(np.floor(0.8 * per_class))
    assert m["n_train"] + m["n_test"] == m["balanced_rows"]
    assert len(m["feature_names"]) == 10
    assert len(full.rows) == len(FAST)


def test_reduced_features_equal_selection(cvd_config, cvd_reports):
    prepared = prepare(cvd_config)
    selected = select_k_best(prepared.matrix, 4).selected
    assert cvd_reports["reduced"].metadata["feature_names"] == selected


def test_rows_sorted_by_accuracy(cvd_reports):
    acc = [r.accuracy for r in cvd_reports["full"].rows]
    assert acc == sorted(acc, reverse=True)


def test_metrics_recomputable_from_predictions(cvd_reports):
    for report in cvd_reports.values():
        y = np.array(report.y_test)
        for r in report.rows:
            m = metrics.evaluate(metrics.confusion(y, np.array(r.predictions)))
            assert abs(m.accuracy - r.accuracy) <= 1e-12
            assert abs(m.balanced_accuracy - r.balanced_accuracy) <= 1e-12
            assert abs(m.f1 - r.f1) <= 1e-12
            assert abs(metrics.roc_auc(y, np.array(r.predictions)) - r.roc_auc_label) <= 1e-12


def test_dummy_has_no_scores(cvd_reports):
    row = cvd_reports["full"].row("dummy")
    assert row.score_source == "labels (no score)"
    assert row.roc_auc == 0.5
    assert "precision" in row.degenerate


def test_compare_identity_and_mismatch(cvd_reports):
    full = cvd_reports["full"]
    same = compare(full, full)
    for c in same.rows:
        for m in ("accuracy", "balanced_accuracy", "roc_auc", "f1"):
            assert c.delta(m) == 0.0
    other = dataclasses.replace(full, metadata={**full.metadata, "seed": 1})
    with pytest.raises(ComparisonError):
        compare(full, other)


def test_comparison_summary(cvd_reports):
    c = compare(cvd_reports["full"], cvd_reports["reduced"])
    assert c.summary["best_full_accuracy"] == cvd_reports["full"].best_accuracy()
    assert len(c.summary["reduced_features"]) == 4


def test_failed_model_recorded_not_raised(blobs):
    train, test = blobs
    bad = train.rows(np.flatnonzero(train.target == 1))
    r = evaluate_model(ModelSpec("logistic-regression"), bad, test)
    assert r.status.startswith("error")
    assert not r.ok


def test_parallel_matches_serial(cvd_config):
    serial = run_experiment(cvd_config, "full")
    parallel = run_experiment(dataclasses.replace(cvd_config, serial=False, workers=3), "full")
    strip = lambda rep: [dataclasses.replace(r, fit_seconds=0.0, predict_seconds=0.0) for r in rep.rows]  # noqa: E731
    assert strip(serial) == strip(parallel)


def test_run_experiment_single_mode_only(cvd_config):
    with pytest.raises(ConfigError):
        run_experiment(cvd_config, "both")


def test_report_columns_and_round_trip(cvd_reports):
    full = cvd_reports["full"]
    text = emit_report(full, "csv")
    header = text.splitlines()[0].split(",")
    assert header[:5] == ["Model", "Accuracy", "Balanced Accuracy", "ROC AUC", "F1-Score"]
    assert header[5:7] == list(TIMING_HEADERS)
    back = results_from_csv(text)
    for a, b in zip(back, full.rows):
        assert dataclasses.replace(b, predictions=None) == a
    assert len(read_report_csv(text)) == len(full.rows)


def test_markdown_two_rows():
    rows = (
        ModelResult("a", "A", 0.123, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, "margin"),
        ModelResult("b", "B", 0.9, 0.9, 0.9, 0.9, 0.9, 0.9, 0.9, "margin"),
    )
    md = emit_report(EvalReport(rows, {}), "markdown").strip().splitlines()
    assert len(md) == 4
    assert md[0].startswith("| " + " | ".join(h for h, _ in METRIC_COLUMNS))
    assert "0.12" in md[2]
    with pytest.raises(ParameterError):
        emit_report(EvalReport(rows, {}), "html")


def test_predictions_csv(cvd_reports):
    text = predictions_csv(cvd_reports["full"])
    lines = text.strip().splitlines()
    assert lines[0].startswith("y_true,")
    assert len(lines) == cvd_reports["full"].metadata["n_test"] + 1


def test_linear_distance_subset_registered():
    for name in LINEAR_DISTANCE_MODELS:
        ModelSpec(name)


def test_framingham_synthetic_runs():
    cfg = ExperimentConfig(dataset="framingham", synthetic=True, models=("lda", "ridge-classifier"), seed=3)
    reports = run_modes(cfg)
    assert len(reports["reduced"].metadata["feature_names"]) == 5
    assert reports["full"].metadata["feature_names"][0] == "male"
