from .registry import (
    CORE_MODELS,
    OPTIONAL_MODELS,
    REGISTRY,
    ModelSpec,
    RegistryEntry,
    TrainedModel,
    decision_scores,
    fit,
    get_entry,
    predict,
)

__all__ = [
    "CORE_MODELS",
    "OPTIONAL_MODELS",
    "REGISTRY",
    "ModelSpec",
    "RegistryEntry",
    "TrainedModel",
    "decision_scores",
    "fit",
    "get_entry",
    "predict",
]
