"""Model registry and the ModelSpec-driven fit/predict/score entry points."""

from __future__ import annotations

import dataclasses
import inspect
import time
from typing import Any, Callable, Mapping

import numpy as np

from ..errors import ParameterError, ShapeError
from ..tabular import FeatureMatrix
from .base import LABEL, Estimator
from .bayes import BernoulliNB, GaussianNB
from .discriminant import LinearDiscriminant, QuadraticDiscriminant
from .dummy import DummyClassifier
from .ensemble import AdaBoost, Bagging, ExtraTrees, RandomForest
from .linear import (
    LinearSVC,
    LogisticRegression,
    PassiveAggressive,
    Perceptron,
    RidgeClassifier,
    SGDClassifier,
)
from .neighbors import KNeighbors, NearestCentroid
from .neural import MLP
from .tree import DecisionTree


@dataclasses.dataclass(frozen=True)
class RegistryEntry:
    name: str
    label: str
    factory: Callable[..., Estimator]
    defaults: Mapping[str, Any]
    supports_scores: bool
    core: bool = True

    @property
    def score_kind(self) -> str:
        return self.factory.score_kind


def _defaults(cls) -> dict:
    sig = inspect.signature(cls.__init__)
    return {
        k: p.default
        for k, p in sig.parameters.items()
        if k not in ("self", "seed") and p.default is not inspect.Parameter.empty
    }


def _entry(name, label, cls, core=True, supports_scores=None):
    if supports_scores is None:
        supports_scores = cls.score_kind != LABEL
    return RegistryEntry(name, label, cls, _defaults(cls), supports_scores, core)


REGISTRY: dict[str, RegistryEntry] = {
    e.name: e
    for e in [
        _entry("dummy", "Dummy Classifier", DummyClassifier),
        _entry("logistic-regression", "Logistic Regression", LogisticRegression),
        _entry("sgd-classifier", "SGD Classifier", SGDClassifier),
        _entry("perceptron", "Perceptron", Perceptron),
        _entry("ridge-classifier", "Ridge Classifier", RidgeClassifier),
        _entry("linear-svc", "Linear SVC", LinearSVC),
        _entry("gaussian-nb", "Gaussian NB", GaussianNB),
        _entry("bernoulli-nb", "Bernoulli NB", BernoulliNB),
        _entry("nearest-centroid", "Nearest Centroid", NearestCentroid),
        _entry("kneighbors", "KNeighbors Classifier", KNeighbors),
        _entry("decision-tree", "Decision Tree Classifier", DecisionTree),
        _entry("random-forest", "Random Forest Classifier", RandomForest),
        _entry("bagging", "Bagging Classifier", Bagging),
        _entry("adaboost", "AdaBoost Classifier", AdaBoost),
        _entry("lda", "Linear Discriminant Analysis", LinearDiscriminant),
        _entry("qda", "Quadratic Discriminant Analysis", QuadraticDiscriminant),
        _entry("extra-trees", "Extra Trees Classifier", ExtraTrees, core=False),
        _entry("passive-aggressive", "Passive Aggressive Classifier", PassiveAggressive, core=False),
        _entry("mlp", "MLP Classifier", MLP, core=False),
    ]
}

CORE_MODELS = tuple(name for name, e in REGISTRY.items() if e.core)
OPTIONAL_MODELS = tuple(name for name, e in REGISTRY.items() if not e.core)


def get_entry(name: str) -> RegistryEntry:
    try:
        return REGISTRY[name]
    except KeyError:
        raise ParameterError(f"unknown model {name!r}; registered: {sorted(REGISTRY)}") from None


@dataclasses.dataclass(frozen=True)
class ModelSpec:
    name: str
    hyperparameters: Mapping[str, Any] = dataclasses.field(default_factory=dict)
    seed: int = 42

    def __post_init__(self):
        entry = get_entry(self.name)
        unknown = set(self.hyperparameters) - set(entry.defaults)
        if unknown:
            raise ParameterError(
                f"unknown hyperparameter(s) {sorted(unknown)} for {self.name!r}; "
                f"accepted: {sorted(entry.defaults)}"
            )
        object.__setattr__(self, "hyperparameters", dict(self.hyperparameters))

    def resolved(self) -> dict:
        params = dict(get_entry(self.name).defaults)
        params.update(self.hyperparameters)
        return params


@dataclasses.dataclass(frozen=True, eq=False)
class TrainedModel:
    spec: ModelSpec
    estimator: Estimator
    feature_names: tuple[str, ...]
    classes: tuple[int, int] = (0, 1)
    fit_seconds: float = 0.0

    @property
    def supports_scores(self) -> bool:
        return get_entry(self.spec.name).supports_scores


def fit(spec: ModelSpec, train: FeatureMatrix) -> TrainedModel:
    """Fit a registry model; the input matrix is never modified."""
    estimator = get_entry(spec.name).factory(seed=spec.seed, **spec.resolved())
    start = time.perf_counter()
    estimator.fit(train.values, train.target)
    elapsed = time.perf_counter() - start
    return TrainedModel(spec, estimator.freeze(), tuple(train.feature_names), (0, 1), elapsed)


def _matrix(model: TrainedModel, X) -> np.ndarray:
    if isinstance(X, FeatureMatrix):
        if tuple(X.feature_names) != model.feature_names:
            raise ShapeError(
                f"feature mismatch: model trained on {list(model.feature_names)}, "
                f"got {list(X.feature_names)}"
            )
        return X.values
    values = np.asarray(X, dtype=np.float64)
    if values.ndim != 2 or values.shape[1] != len(model.feature_names):
        raise ShapeError(
            f"expected {len(model.feature_names)} feature columns, got shape {values.shape}"
        )
    return values


def predict(model: TrainedModel, X) -> np.ndarray:
    return model.estimator.predict(_matrix(model, X))


def decision_scores(model: TrainedModel, X) -> np.ndarray:
    """Higher means more confident class 1.

    Models without a score of their own return their 0/1 predictions; check
    ``model.supports_scores`` to tell the two apart.
    """
    values = _matrix(model, X)
    if not model.supports_scores:
        return model.estimator.predict(values).astype(np.float64)
    return model.estimator.decision_function(values)
