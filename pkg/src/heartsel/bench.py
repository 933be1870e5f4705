"""Experiment orchestration: full vs reduced feature sets over the registry."""

from __future__ import annotations

import concurrent.futures
import dataclasses
import logging
import os
import time
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from . import metrics
from ._accel import backend
from .errors import ComparisonError, ConfigError, HeartselError
from .featstats import FeatureScores, project, select_k_best
from .models import CORE_MODELS, ModelSpec, decision_scores, fit, get_entry, predict
from .preprocess import DEFAULT_SEED, downsample_balance, drop_missing, stratified_rows
from .presets import PRESETS, get_preset, resolve_preset_file
from .tabular import Dataset, FeatureMatrix, encode, feature_matrix, load_csv, load_schema

log = logging.getLogger(__name__)

MODES = ("full", "reduced", "both")
LINEAR_DISTANCE_MODELS = ("logistic-regression", "ridge-classifier", "nearest-centroid", "kneighbors")


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    dataset: str = "cvd"
    schema: str | None = None
    data_dir: str | None = None
    synthetic: bool = False
    synthetic_rows: int | None = None
    seed: int = DEFAULT_SEED
    split_ratio: float = 0.8
    k: int | None = None
    models: tuple[str, ...] = CORE_MODELS
    feature_mode: str = "both"
    select_on_train: bool = False
    params: Mapping[str, Mapping[str, Any]] = dataclasses.field(default_factory=dict)
    serial: bool = False
    workers: int | None = None
    save_predictions: bool = False

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))
        if not self.models:
            raise ConfigError("model list is empty")
        for name in self.models:
            get_entry(name)
        if len(set(self.models)) != len(self.models):
            raise ConfigError(f"duplicate model names in {list(self.models)}")
        if self.feature_mode not in MODES:
            raise ConfigError(f"feature_mode must be one of {MODES}, got {self.feature_mode!r}")
        if not 0.0 < float(self.split_ratio) < 1.0:
            raise ConfigError(f"split ratio must lie in (0, 1), got {self.split_ratio}")
        if self.k is not None and int(self.k) < 1:
            raise ConfigError(f"k must be positive, got {self.k}")
        if self.dataset not in PRESETS and self.schema is None and not self.synthetic:
            raise ConfigError(f"dataset {self.dataset!r} is not a preset; pass a schema file")
        if self.synthetic and self.dataset not in PRESETS:
            raise ConfigError("--synthetic needs a preset dataset name")
        for model, overrides in self.params.items():
            ModelSpec(model, overrides)

    @property
    def effective_k(self) -> int | None:
        if self.k is not None:
            return int(self.k)
        if self.dataset in PRESETS:
            return get_preset(self.dataset)["default_k"]
        return None

    def spec_for(self, name: str) -> ModelSpec:
        return ModelSpec(name, dict(self.params.get(name, {})), self.seed)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["models"] = list(self.models)
        d["params"] = {m: dict(v) for m, v in self.params.items()}
        return d

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ExperimentConfig":
        fields = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - fields
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        return cls(**dict(d))


# ---------------------------------------------------------------------------
# Data preparation
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True, eq=False)
class Prepared:
    raw_rows: int
    complete_rows: int
    balanced: Dataset
    matrix: FeatureMatrix
    train_rows: np.ndarray
    test_rows: np.ndarray


def load_dataset(config: ExperimentConfig) -> Dataset:
    if config.synthetic:
        from .synthetic import synthetic_dataset

        return synthetic_dataset(config.dataset, config.seed, config.synthetic_rows)
    if config.dataset in PRESETS and config.schema is None:
        path = resolve_preset_file(config.dataset, config.data_dir)
        return load_csv(path, get_preset(config.dataset)["schema"])
    schema = load_schema(config.schema) if config.schema else get_preset(config.dataset)["schema"]
    path = Path(config.dataset)
    if config.dataset in PRESETS:
        path = resolve_preset_file(config.dataset, config.data_dir)
    if not path.is_file():
        raise FileNotFoundError(f"dataset file {path} not found")
    return load_csv(path, schema)


def prepare(config: ExperimentConfig, dataset: Dataset | None = None) -> Prepared:
    raw = load_dataset(config) if dataset is None else dataset
    complete = drop_missing(encode(raw))
    balanced = downsample_balance(complete, config.seed)
    matrix = feature_matrix(balanced)
    train_rows, test_rows = stratified_rows(matrix.target, config.split_ratio, config.seed)
    return Prepared(raw.n, complete.n, balanced, matrix, train_rows, test_rows)


def feature_scores(prepared: Prepared, k: int, select_on_train: bool = False) -> FeatureScores:
    source = prepared.matrix.rows(prepared.train_rows) if select_on_train else prepared.matrix
    return select_k_best(source, k)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ModelResult:
    model: str
    label: str
    accuracy: float = float("nan")
    balanced_accuracy: float = float("nan")
    roc_auc: float = float("nan")
    roc_auc_label: float = float("nan")
    f1: float = float("nan")
    precision: float = float("nan")
    recall: float = float("nan")
    score_source: str = ""
    degenerate: tuple[str, ...] = ()
    status: str = "ok"
    fit_seconds: float = 0.0
    predict_seconds: float = 0.0
    predictions: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def _row_order(r: ModelResult):
    return (not r.ok, -r.accuracy if r.ok else 0.0, r.model)


@dataclasses.dataclass(frozen=True)
class EvalReport:
    rows: tuple[ModelResult, ...]
    metadata: Mapping[str, Any]
    y_test: tuple[int, ...] | None = None

    def row(self, model: str) -> ModelResult:
        for r in self.rows:
            if r.model == model:
                return r
        raise KeyError(model)

    def best_accuracy(self) -> float:
        ok = [r.accuracy for r in self.rows if r.ok]
        return max(ok) if ok else float("nan")

    def total_fit_seconds(self) -> float:
        return float(sum(r.fit_seconds + r.predict_seconds for r in self.rows))


def _score_source(model) -> str:
    if model.supports_scores:
        return model.estimator.score_kind
    return "labels (no score)"


def evaluate_model(spec: ModelSpec, train: FeatureMatrix, test: FeatureMatrix, keep_predictions=False) -> ModelResult:
    entry = get_entry(spec.name)
    try:
        model = fit(spec, train)
        start = time.perf_counter()
        y_pred = predict(model, test)
        predict_seconds = time.perf_counter() - start
        scores = decision_scores(model, test)
        cm = metrics.confusion(test.target, y_pred)
        m = metrics.evaluate(cm)
        return ModelResult(
            model=spec.name,
            label=entry.label,
            accuracy=m.accuracy,
            balanced_accuracy=m.balanced_accuracy,
            roc_auc=metrics.roc_auc(test.target, scores),
            roc_auc_label=metrics.roc_auc(test.target, y_pred),
            f1=m.f1,
            precision=m.precision,
            recall=m.recall,
            score_source=_score_source(model),
            degenerate=m.degenerate,
            fit_seconds=model.fit_seconds,
            predict_seconds=predict_seconds,
            predictions=tuple(int(v) for v in y_pred) if keep_predictions else None,
        )
    except (HeartselError, ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        log.warning("model %s failed: %s", spec.name, exc)
        return ModelResult(model=spec.name, label=entry.label, status=f"error: {exc}")


def _run_models(config: ExperimentConfig, train: FeatureMatrix, test: FeatureMatrix) -> list[ModelResult]:
    specs = [config.spec_for(name) for name in config.models]
    if config.serial or len(specs) == 1:
        return [evaluate_model(s, train, test, config.save_predictions) for s in specs]
    workers = config.workers or min(len(specs), os.cpu_count() or 1)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(evaluate_model, s, train, test, config.save_predictions) for s in specs]
        return [f.result() for f in futures]


def run_experiment(
    config: ExperimentConfig,
    mode: str | None = None,
    prepared: Prepared | None = None,
) -> EvalReport:
    """Run one feature set (``full`` or ``reduced``) across the configured models."""
    mode = mode or config.feature_mode
    if mode not in ("full", "reduced"):
        raise ConfigError(f"run_experiment runs a single mode, got {mode!r}")
    started = time.perf_counter()
    prepared = prepared or prepare(config)
    matrix = prepared.matrix
    if mode == "reduced":
        k = config.effective_k
        if k is None:
            raise ConfigError("reduced mode needs k for non-preset datasets")
        if k > matrix.q:
            raise ConfigError(f"k={k} exceeds the {matrix.q} input features")
        scores = feature_scores(prepared, k, config.select_on_train)
        matrix = project(matrix, scores.selected)
    train = matrix.rows(prepared.train_rows)
    test = matrix.rows(prepared.test_rows)
    results = _run_models(config, train, test)
    wall = time.perf_counter() - started
    rows = tuple(sorted(results, key=_row_order))
    meta = {
        "dataset": config.dataset,
        "synthetic": config.synthetic,
        "mode": mode,
        "seed": config.seed,
        "split_ratio": config.split_ratio,
        "raw_rows": prepared.raw_rows,
        "complete_rows": prepared.complete_rows,
        "balanced_rows": prepared.balanced.n,
        "n_train": train.p,
        "n_test": test.p,
        "feature_names": list(matrix.feature_names),
        "backend": backend(),
        "total_wall_seconds": wall,
        "models_per_second": len(rows) / wall if wall > 0 else float("inf"),
    }
    y_test = tuple(int(v) for v in test.target) if config.save_predictions else None
    return EvalReport(rows, meta, y_test)


def run_modes(config: ExperimentConfig, prepared: Prepared | None = None) -> dict[str, EvalReport]:
    prepared = prepared or prepare(config)
    modes = ("full", "reduced") if config.feature_mode == "both" else (config.feature_mode,)
    return {m: run_experiment(config, m, prepared) for m in modes}


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------

COMPARED_METRICS = ("accuracy", "balanced_accuracy", "roc_auc", "f1")


@dataclasses.dataclass(frozen=True)
class ComparisonRow:
    model: str
    label: str
    full: ModelResult | None
    reduced: ModelResult | None

    def delta(self, metric: str) -> float:
        if self.full is None or self.reduced is None:
            return float("nan")
        return getattr(self.reduced, metric) - getattr(self.full, metric)


@dataclasses.dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]
    summary: Mapping[str, Any]


_MATCHED_KEYS = ("dataset", "synthetic", "seed", "split_ratio", "n_train", "n_test")


def compare(full: EvalReport, reduced: EvalReport) -> ComparisonReport:
    for key in _MATCHED_KEYS:
        if full.metadata.get(key) != reduced.metadata.get(key):
            raise ComparisonError(
                f"reports differ on {key!r}: {full.metadata.get(key)!r} vs {reduced.metadata.get(key)!r}"
            )
    names = [r.model for r in full.rows] + [r.model for r in reduced.rows if r.model not in {x.model for x in full.rows}]
    f_by = {r.model: r for r in full.rows}
    r_by = {r.model: r for r in reduced.rows}
    rows = []
    for name in names:
        f, r = f_by.get(name), r_by.get(name)
        rows.append(ComparisonRow(name, (f or r).label, f, r))
    rows.sort(key=lambda c: (-(c.reduced.accuracy if c.reduced and c.reduced.ok else -1.0), c.model))
    summary = {
        "dataset": full.metadata.get("dataset"),
        "seed": full.metadata.get("seed"),
        "best_full_accuracy": full.best_accuracy(),
        "best_reduced_accuracy": reduced.best_accuracy(),
        "total_seconds_full": full.total_fit_seconds(),
        "total_seconds_reduced": reduced.total_fit_seconds(),
        "full_features": list(full.metadata.get("feature_names", [])),
        "reduced_features": list(reduced.metadata.get("feature_names", [])),
    }
    return ComparisonReport(tuple(rows), summary)


# ---------------------------------------------------------------------------
# Timing
# ---------------------------------------------------------------------------


def time_fit_predict(spec: ModelSpec, train: FeatureMatrix, test: FeatureMatrix, repeats=5, min_seconds=0.02) -> float:
    """Median seconds for one fit+predict, each repeat looping until ``min_seconds``."""
    samples = []
    for _ in range(repeats):
        loops = 0
        start = time.perf_counter()
        while True:
            model = fit(spec, train)
            predict(model, test)
            loops += 1
            elapsed = time.perf_counter() - start
            if elapsed >= min_seconds:
                break
        samples.append(elapsed / loops)
    return float(np.median(samples))


__all__ = [
    "ComparisonReport",
    "EvalReport",
    "ExperimentConfig",
    "ModelResult",
    "Prepared",
    "compare",
    "evaluate_model",
    "feature_scores",
    "prepare",
    "run_experiment",
    "run_modes",
    "time_fit_predict",
]
