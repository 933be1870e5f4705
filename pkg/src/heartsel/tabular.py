"""Dataset representation, CSV ingestion, categorical encoding.

A :class:`Dataset` is column-major: one numpy vector per schema entry plus an
``(n, n_columns)`` missing mask. Categorical columns hold strings until
:func:`encode` replaces them with integer codes (stored as float64 so every
column of an encoded dataset has the same dtype).
"""

from __future__ import annotations

import csv
import dataclasses
import json
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    EncodingError,
    IncompleteDataError,
    ParameterError,
    SchemaError,
    SchemaMismatchError,
)

KINDS = ("continuous", "binary", "categorical")
KIND_ALIASES = {"categorical-encoded": "categorical", "categorical_encoded": "categorical"}
ROLES = ("input", "target", "ignore")
MISSING_MARKERS = frozenset({"", "na", "n/a", "null", "nan"})
SCHEMA_FORMAT_VERSION = 1


def normalize_category(value: str) -> str:
    """Canonical form used for category lookups.

    Case-folded, trimmed, with ``-`` read as ``_`` so that ``"Self-employed"``
    and ``"self_employed"`` name the same category.
    """
    return value.strip().casefold().replace("-", "_")


def is_missing(cell: str) -> bool:
    return cell.strip().casefold() in MISSING_MARKERS


@dataclasses.dataclass(frozen=True)
class FeatureSpec:
    name: str
    kind: str = "continuous"
    role: str = "input"
    encoding: Mapping[str, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", KIND_ALIASES.get(self.kind, self.kind))
        if self.kind not in KINDS:
            raise SchemaError(f"feature {self.name!r}: unknown kind {self.kind!r}")
        if self.role not in ROLES:
            raise SchemaError(f"feature {self.name!r}: unknown role {self.role!r}")
        if self.kind == "categorical" and not self.encoding:
            raise SchemaError(f"categorical feature {self.name!r} needs an encoding")
        if self.encoding is not None:
            normalized = {}
            for label, code in self.encoding.items():
                key = normalize_category(str(label))
                if key in normalized and normalized[key] != int(code):
                    raise SchemaError(
                        f"feature {self.name!r}: category {label!r} listed twice"
                    )
                normalized[key] = int(code)
            if len(set(normalized.values())) != len(normalized):
                raise SchemaError(
                    f"feature {self.name!r}: encoding is not injective {dict(self.encoding)}"
                )
            object.__setattr__(self, "encoding", dict(self.encoding))
            object.__setattr__(self, "_lookup", normalized)

    @property
    def encoded(self) -> bool:
        return self.encoding is not None

    def code_of(self, label: str) -> int | None:
        return self._lookup.get(normalize_category(label))

    def decode(self, code: int) -> str:
        for label, c in self.encoding.items():
            if c == code:
                return label
        raise KeyError(code)

    def to_dict(self) -> dict:
        d = {"name": self.name, "kind": self.kind, "role": self.role}
        if self.encoding is not None:
            d["encoding"] = dict(self.encoding)
        return d


def validate_schema(schema: Sequence[FeatureSpec]) -> tuple[FeatureSpec, ...]:
    schema = tuple(schema)
    names = [s.name for s in schema]
    if len(set(names)) != len(names):
        raise SchemaError(f"duplicate feature names in schema: {names}")
    targets = [s for s in schema if s.role == "target"]
    if len(targets) != 1:
        raise SchemaError(f"schema needs exactly one target, found {len(targets)}")
    if targets[0].kind != "binary":
        raise SchemaError(f"target {targets[0].name!r} must be binary")
    return schema


def load_schema(path) -> tuple[FeatureSpec, ...]:
    """Read a JSON schema file (``{"version": 1, "features": [...]}``)."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    version = doc.get("version")
    if version != SCHEMA_FORMAT_VERSION:
        raise SchemaError(f"{path}: unsupported schema version {version!r}")
    features = [FeatureSpec(**entry) for entry in doc["features"]]
    return validate_schema(features)


def dump_schema(schema: Sequence[FeatureSpec], path) -> None:
    doc = {
        "version": SCHEMA_FORMAT_VERSION,
        "features": [s.to_dict() for s in schema],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclasses.dataclass(frozen=True, eq=False)
class Dataset:
    schema: tuple[FeatureSpec, ...]
    columns: tuple[np.ndarray, ...]
    missing_mask: np.ndarray
    encoded: bool = False

    def __post_init__(self):
        if len(self.columns) != len(self.schema):
            raise SchemaError("one column per schema entry required")
        n = self.missing_mask.shape[0]
        if self.missing_mask.shape != (n, len(self.schema)):
            raise SchemaError("missing mask shape does not match columns")
        for spec, col in zip(self.schema, self.columns):
            if col.shape != (n,):
                raise SchemaError(f"column {spec.name!r} has length {col.shape}, expected {n}")
        _frozen(self.missing_mask)
        for col in self.columns:
            _frozen(col)

    @property
    def n(self) -> int:
        return self.missing_mask.shape[0]

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.schema]

    @property
    def input_names(self) -> list[str]:
        return [s.name for s in self.schema if s.role == "input"]

    @property
    def target_spec(self) -> FeatureSpec:
        for s in self.schema:
            if s.role == "target":
                return s
        raise SchemaError("dataset has no target column")

    def index_of(self, name: str) -> int:
        for i, s in enumerate(self.schema):
            if s.name == name:
                return i
        raise KeyError(name)

    def column(self, name: str) -> np.ndarray:
        return self.columns[self.index_of(name)]

    def target(self) -> np.ndarray:
        """Target column as int labels; raises if any target cell is missing."""
        i = self.index_of(self.target_spec.name)
        if self.missing_mask[:, i].any():
            raise IncompleteDataError(
                f"target {self.schema[i].name!r} has {int(self.missing_mask[:, i].sum())} missing cells"
            )
        col = self.columns[i]
        if not self.encoded and self.schema[i].encoded:
            raise IncompleteDataError("dataset must be encoded before reading the target")
        return col.astype(np.int64)

    def take(self, rows) -> "Dataset":
        rows = np.asarray(rows, dtype=np.int64)
        return Dataset(
            schema=self.schema,
            columns=tuple(col[rows].copy() for col in self.columns),
            missing_mask=self.missing_mask[rows].copy(),
            encoded=self.encoded,
        )

    def is_complete(self) -> bool:
        return not self.missing_mask.any()


@dataclasses.dataclass(frozen=True, eq=False)
class FeatureMatrix:
    values: np.ndarray
    feature_names: tuple[str, ...]
    target: np.ndarray
    target_name: str = "target"

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] != len(self.feature_names):
            raise SchemaError("values must be p x q with q feature names")
        target = np.asarray(self.target, dtype=np.int64)
        if target.shape != (values.shape[0],):
            raise SchemaError("target length must equal row count")
        if np.isnan(values).any():
            raise IncompleteDataError("feature matrix contains missing cells")
        object.__setattr__(self, "values", _frozen(np.array(values)))
        object.__setattr__(self, "target", _frozen(np.array(target)))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))

    @property
    def p(self) -> int:
        return self.values.shape[0]

    @property
    def q(self) -> int:
        return self.values.shape[1]

    def rows(self, idx) -> "FeatureMatrix":
        idx = np.asarray(idx, dtype=np.int64)
        return FeatureMatrix(self.values[idx], self.feature_names, self.target[idx], self.target_name)


def _parse_float(cell: str) -> float | None:
    try:
        v = float(cell)
    except ValueError:
        return None
    return v if np.isfinite(v) else None


def _rows_to_dataset(header: Sequence[str], rows: Iterable[Sequence[str]], schema, source=None) -> Dataset:
    schema = validate_schema(schema)
    positions = {}
    for spec in schema:
        try:
            positions[spec.name] = list(header).index(spec.name)
        except ValueError:
            raise SchemaMismatchError(spec.name, source) from None
    raw = [list(r) for r in rows]
    n = len(raw)
    mask = np.zeros((n, len(schema)), dtype=bool)
    columns = []
    for j, spec in enumerate(schema):
        pos = positions[spec.name]
        if spec.role == "ignore":
            columns.append(np.array([row[pos] if pos < len(row) else "" for row in raw], dtype=object))
            continue
        if spec.encoded:
            col = np.empty(n, dtype=object)
        else:
            col = np.full(n, np.nan)
        for i, row in enumerate(raw):
            cell = row[pos] if pos < len(row) else ""
            if is_missing(cell):
                mask[i, j] = True
                if spec.encoded:
                    col[i] = None
                continue
            if spec.encoded:
                col[i] = cell.strip()
            else:
                v = _parse_float(cell)
                if v is None:
                    mask[i, j] = True
                else:
                    col[i] = v
        columns.append(col)
    return Dataset(schema=schema, columns=tuple(columns), missing_mask=mask, encoded=False)


def load_csv(path, schema: Sequence[FeatureSpec]) -> Dataset:
    """Read a headed, comma-delimited UTF-8 CSV into a :class:`Dataset`.

    Columns follow schema order; extra CSV columns are ignored. Unparseable
    numeric cells and the usual missing markers are flagged in the mask.
    """
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise SchemaError(f"{path}: empty file, no header row") from None
        rows = [r for r in reader if r]
    return _rows_to_dataset(header, rows, schema, source=path)


def encode(dataset: Dataset) -> Dataset:
    """Replace category strings with their integer codes."""
    if dataset.encoded:
        return dataset
    columns = []
    for j, (spec, col) in enumerate(zip(dataset.schema, dataset.columns)):
        if not spec.encoded or spec.role == "ignore":
            columns.append(col.copy())
            continue
        out = np.full(dataset.n, np.nan)
        for i in range(dataset.n):
            if dataset.missing_mask[i, j]:
                continue
            label = col[i]
            code = spec.code_of(label)
            if code is None:
                numeric = _parse_float(label)
                if numeric is not None and numeric in spec._lookup.values():
                    code = int(numeric)
                else:
                    raise EncodingError(spec.name, i, label)
            out[i] = code
        columns.append(out)
    encoded = Dataset(dataset.schema, tuple(columns), dataset.missing_mask.copy(), encoded=True)
    _check_target_values(encoded)
    return encoded


def decode(dataset: Dataset) -> Dataset:
    """Inverse of :func:`encode` for categorical columns (canonical labels)."""
    if not dataset.encoded:
        return dataset
    columns = []
    for j, (spec, col) in enumerate(zip(dataset.schema, dataset.columns)):
        if not spec.encoded or spec.role == "ignore":
            columns.append(col.copy())
            continue
        out = np.empty(dataset.n, dtype=object)
        for i in range(dataset.n):
            out[i] = None if dataset.missing_mask[i, j] else spec.decode(int(col[i]))
        columns.append(out)
    return Dataset(dataset.schema, tuple(columns), dataset.missing_mask.copy(), encoded=False)


def _check_target_values(dataset: Dataset) -> None:
    i = dataset.index_of(dataset.target_spec.name)
    col = dataset.columns[i][~dataset.missing_mask[:, i]]
    bad = col[(col != 0) & (col != 1)]
    if bad.size:
        raise SchemaError(
            f"target {dataset.schema[i].name!r} must be 0/1, found {sorted(set(bad.tolist()))[:5]}"
        )


def feature_matrix(dataset: Dataset) -> FeatureMatrix:
    """Dense input matrix plus target; requires a complete, encoded dataset."""
    if not dataset.encoded:
        dataset = encode(dataset)
    if dataset.missing_mask.any():
        rows = int(dataset.missing_mask.any(axis=1).sum())
        raise IncompleteDataError(
            f"{rows} rows contain missing cells; run drop_missing first"
        )
    target = dataset.target()
    names = dataset.input_names
    if names:
        values = np.column_stack([dataset.column(nm).astype(np.float64) for nm in names])
    else:
        values = np.zeros((dataset.n, 0))
    return FeatureMatrix(
        values.reshape(dataset.n, len(names)), tuple(names), target, dataset.target_spec.name
    )


def write_csv(dataset: Dataset, path) -> None:
    """Write a dataset back to CSV; missing cells become empty strings."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(dataset.names)
        for i in range(dataset.n):
            row = []
            for j, col in enumerate(dataset.columns):
                if dataset.missing_mask[i, j]:
                    row.append("")
                elif col.dtype == object:
                    row.append(col[i])
                else:
                    row.append(repr(float(col[i])))
            writer.writerow(row)


def check_k(k: int, q: int) -> int:
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= q:
        raise ParameterError(f"k must be an integer in [1, {q}], got {k!r}")
    return int(k)
