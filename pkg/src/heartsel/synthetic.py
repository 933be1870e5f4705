"""Seeded surrogate datasets with the preset schemas.

The real CSVs are Kaggle downloads and not redistributable; these generators
produce raw CSV-shaped rows (category strings, blank cells for missing values,
strong class imbalance) so the whole pipeline runs offline. Risk is driven by
age, hypertension, heart disease, glucose and blood pressure, loosely following
the clinical picture of the real data. Nothing here reproduces real values.
"""

from __future__ import annotations

import csv

import numpy as np

from .errors import ParameterError
from .preprocess import STREAM_SYNTHETIC, make_rng
from .presets import get_preset
from .tabular import Dataset, _rows_to_dataset

DEFAULT_ROWS = {"cvd": 43400, "framingham": 4240}


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


def _fmt(values, decimals=None):
    if decimals is None:
        return [str(int(v)) for v in values]
    return [f"{v:.{decimals}f}" for v in values]


def _cvd_columns(rng, n):
    age = np.clip(rng.uniform(0.08, 82.0, n) * rng.uniform(0.7, 1.0, n) + rng.uniform(0, 10, n), 0.08, 82.0)
    age = np.round(age, 0)
    hyper = rng.random(n) < _sigmoid(-5.0 + 0.055 * age)
    heart = rng.random(n) < _sigmoid(-6.8 + 0.065 * age)
    diabetic = rng.random(n) < _sigmoid(-4.5 + 0.035 * age)
    glucose = np.clip(rng.lognormal(np.log(90), 0.18, n) + diabetic * rng.normal(100, 30, n), 55, 290)
    bmi = np.clip(rng.normal(18 + 0.2 * np.minimum(age, 50), 6.5, n), 10, 90)
    gender = rng.choice(np.array(["Male", "Female", "Other"]), n, p=[0.41, 0.5898, 0.0002])
    married = np.where(rng.random(n) < _sigmoid(-1.5 + 0.06 * age), "Yes", "No")
    work = np.where(
        age < 16,
        "children",
        rng.choice(np.array(["Private", "Self-employed", "Govt_job", "Never_worked"]), n, p=[0.66, 0.19, 0.145, 0.005]),
    )
    residence = rng.choice(np.array(["Urban", "Rural"]), n)
    smoking = rng.choice(np.array(["never smoked", "formerly smoked", "smokes"]), n, p=[0.53, 0.25, 0.22])
    logit = -9.0 + 0.08 * age + 0.9 * hyper + 0.9 * heart + 0.012 * (glucose - 90)
    stroke = rng.random(n) < _sigmoid(logit)

    bmi_cells = _fmt(bmi, 1)
    smoke_cells = list(smoking)
    for i in np.flatnonzero(rng.random(n) < 0.034):
        bmi_cells[i] = ""
    for i in np.flatnonzero(rng.random(n) < 0.306):
        smoke_cells[i] = ""
    return {
        "id": [str(30000 + i) for i in range(n)],
        "gender": list(gender),
        "age": _fmt(age, 0),
        "hypertension": _fmt(hyper),
        "heart_disease": _fmt(heart),
        "ever_married": list(married),
        "work_type": list(work),
        "Residence_type": list(residence),
        "avg_glucose_level": _fmt(glucose, 2),
        "bmi": bmi_cells,
        "smoking_status": smoke_cells,
        "stroke": _fmt(stroke),
    }


def _framingham_columns(rng, n):
    age = np.round(rng.uniform(32, 70, n))
    male = rng.random(n) < 0.43
    education = rng.choice([1, 2, 3, 4], n, p=[0.41, 0.3, 0.17, 0.12])
    smoker = rng.random(n) < 0.49
    cigs = np.where(smoker, np.round(np.clip(rng.normal(18, 10, n), 1, 70)), 0)
    hyp = rng.random(n) < _sigmoid(-4.2 + 0.07 * age)
    bpmeds = rng.random(n) < np.where(hyp, 0.09, 0.002)
    stroke_hist = rng.random(n) < 0.006
    diabetes = rng.random(n) < _sigmoid(-5.2 + 0.03 * age)
    chol = np.round(np.clip(rng.normal(200 + 0.7 * age, 44, n), 110, 600))
    sys_bp = np.clip(95 + 0.55 * age + 28 * hyp + rng.normal(0, 14, n), 83, 295)
    dia_bp = np.clip(0.42 * sys_bp + 27 + rng.normal(0, 7, n), 48, 142)
    bmi = np.clip(rng.normal(25.8, 4.1, n), 15.5, 57)
    heart_rate = np.round(np.clip(rng.normal(76, 12, n), 44, 143))
    glucose = np.round(np.clip(rng.normal(80, 11, n) + diabetes * rng.normal(90, 40, n), 40, 394))
    logit = -6.2 + 0.06 * age + 0.25 * male + 0.015 * (sys_bp - 130) + 0.5 * hyp + 0.02 * (glucose - 80) + 0.006 * cigs
    chd = rng.random(n) < _sigmoid(logit)

    cols = {
        "male": _fmt(male),
        "age": _fmt(age),
        "education": _fmt(education),
        "currentSmoker": _fmt(smoker),
        "cigsPerDay": _fmt(cigs),
        "BPMeds": _fmt(bpmeds),
        "prevalentStroke": _fmt(stroke_hist),
        "prevalentHyp": _fmt(hyp),
        "diabetes": _fmt(diabetes),
        "totChol": _fmt(chol),
        "sysBP": _fmt(sys_bp, 1),
        "diaBP": _fmt(dia_bp, 1),
        "BMI": _fmt(bmi, 2),
        "heartRate": _fmt(heart_rate),
        "glucose": _fmt(glucose),
        "TenYearCHD": _fmt(chd),
    }
    for name, rate in [
        ("education", 0.025),
        ("cigsPerDay", 0.007),
        ("BPMeds", 0.0125),
        ("totChol", 0.012),
        ("BMI", 0.0045),
        ("heartRate", 0.0003),
        ("glucose", 0.0915),
    ]:
        for i in np.flatnonzero(rng.random(n) < rate):
            cols[name][i] = "NA"
    return cols


_GENERATORS = {"cvd": _cvd_columns, "framingham": _framingham_columns}


def synthetic_rows(preset: str, seed: int = 42, n: int | None = None):
    """Header and string rows of a surrogate CSV for ``preset``."""
    if preset not in _GENERATORS:
        raise ParameterError(f"no synthetic generator for {preset!r}")
    n = DEFAULT_ROWS[preset] if n is None else int(n)
    if n < 0:
        raise ParameterError("row count must be non-negative")
    cols = _GENERATORS[preset](make_rng(seed, STREAM_SYNTHETIC), n)
    header = [spec.name for spec in get_preset(preset)["schema"]]
    rows = [[cols[h][i] for h in header] for i in range(n)]
    return header, rows


def synthetic_dataset(preset: str, seed: int = 42, n: int | None = None) -> Dataset:
    header, rows = synthetic_rows(preset, seed, n)
    return _rows_to_dataset(header, rows, get_preset(preset)["schema"], source=f"synthetic:{preset}")


def write_synthetic_csv(path, preset: str, seed: int = 42, n: int | None = None) -> None:
    header, rows = synthetic_rows(preset, seed, n)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
