"""Built-in schemas for the two heart-disease datasets."""

from __future__ import annotations

import os
from pathlib import Path

from .errors import DataError, ParameterError
from .tabular import FeatureSpec, validate_schema

YES_NO = {"no": 0, "yes": 1}

CVD_SCHEMA = validate_schema(
    [
        FeatureSpec("id", "continuous", "ignore"),
        FeatureSpec("gender", "categorical", encoding={"male": 0, "female": 1, "other": 2}),
        FeatureSpec("age", "continuous"),
        FeatureSpec("hypertension", "binary"),
        FeatureSpec("heart_disease", "binary"),
        FeatureSpec("ever_married", "binary", encoding=YES_NO),
        FeatureSpec(
            "work_type",
            "categorical",
            encoding={
                "children": 0,
                "govt_job": 1,
                "never_worked": 2,
                "private": 3,
                "self_employed": 4,
            },
        ),
        FeatureSpec("Residence_type", "categorical", encoding={"rural": 0, "urban": 1}),
        FeatureSpec("avg_glucose_level", "continuous"),
        FeatureSpec("bmi", "continuous"),
        FeatureSpec(
            "smoking_status",
            "categorical",
            encoding={"never smoked": 0, "formerly smoked": 1, "smokes": 2},
        ),
        FeatureSpec("stroke", "binary", "target"),
    ]
)

FRAMINGHAM_SCHEMA = validate_schema(
    [
        FeatureSpec("male", "binary"),
        FeatureSpec("age", "continuous"),
        FeatureSpec("education", "continuous"),
        FeatureSpec("currentSmoker", "binary"),
        FeatureSpec("cigsPerDay", "continuous"),
        FeatureSpec("BPMeds", "binary"),
        FeatureSpec("prevalentStroke", "binary"),
        FeatureSpec("prevalentHyp", "binary"),
        FeatureSpec("diabetes", "binary"),
        FeatureSpec("totChol", "continuous"),
        FeatureSpec("sysBP", "continuous"),
        FeatureSpec("diaBP", "continuous"),
        FeatureSpec("BMI", "continuous"),
        FeatureSpec("heartRate", "continuous"),
        FeatureSpec("glucose", "continuous"),
        FeatureSpec("TenYearCHD", "binary", "target"),
    ]
)

PRESETS = {
    "cvd": {
        "schema": CVD_SCHEMA,
        "filenames": ("train_2v.csv", "healthcare-dataset-stroke-data.csv", "cvd.csv"),
        "default_k": 4,
        "source": "https://www.kaggle.com/datasets/asaumya/healthcare-dataset-stroke-data",
    },
    "framingham": {
        "schema": FRAMINGHAM_SCHEMA,
        "filenames": ("framingham.csv",),
        "default_k": 5,
        "source": "https://www.kaggle.com/datasets/amanajmera1/framingham-heart-study-dataset",
    },
}

DATA_DIR_ENV = "HEARTSEL_DATA_DIR"


def get_preset(name: str) -> dict:
    try:
        return PRESETS[name]
    except KeyError:
        raise ParameterError(f"unknown dataset preset {name!r}; choose from {sorted(PRESETS)}") from None


def data_dirs(extra=None) -> list[Path]:
    dirs = []
    if extra:
        dirs.append(Path(extra))
    if os.environ.get(DATA_DIR_ENV):
        dirs.append(Path(os.environ[DATA_DIR_ENV]))
    dirs += [Path.cwd() / "data", Path.cwd()]
    return dirs


def find_preset_file(name: str, data_dir=None) -> Path | None:
    preset = get_preset(name)
    for d in data_dirs(data_dir):
        for fname in preset["filenames"]:
            candidate = d / fname
            if candidate.is_file():
                return candidate
    return None


def missing_file_message(name: str) -> str:
    preset = get_preset(name)
    return (
        f"dataset {name!r} not found. Download it from {preset['source']} and place "
        f"one of {list(preset['filenames'])} in ./data/ or in ${DATA_DIR_ENV}; "
        f"or pass --synthetic to use a generated surrogate with the same schema."
    )


def resolve_preset_file(name: str, data_dir=None) -> Path:
    path = find_preset_file(name, data_dir)
    if path is None:
        raise DataError(missing_file_message(name))
    return path
