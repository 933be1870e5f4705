"""CSV and markdown rendering of evaluation, comparison and feature reports."""

from __future__ import annotations

import csv
import io
import math

from .bench import COMPARED_METRICS, ComparisonReport, EvalReport, ModelResult
from .errors import ParameterError
from .featstats import CorrelationMatrix, FeatureScores

FORMATS = ("csv", "markdown")

METRIC_COLUMNS = [
    ("Model", "label"),
    ("Accuracy", "accuracy"),
    ("Balanced Accuracy", "balanced_accuracy"),
    ("ROC AUC", "roc_auc"),
    ("F1-Score", "f1"),
]
TIMING_COLUMNS = [("Fit Seconds", "fit_seconds"), ("Predict Seconds", "predict_seconds")]
EXTRA_COLUMNS = [
    ("ROC AUC (labels)", "roc_auc_label"),
    ("Precision", "precision"),
    ("Recall", "recall"),
    ("Score Source", "score_source"),
    ("Degenerate", "degenerate"),
    ("Status", "status"),
    ("Key", "model"),
]
REPORT_COLUMNS = METRIC_COLUMNS + TIMING_COLUMNS + EXTRA_COLUMNS
TIMING_HEADERS = tuple(h for h, _ in TIMING_COLUMNS)


def _check_format(fmt):
    if fmt not in FORMATS:
        raise ParameterError(f"unknown report format {fmt!r}; choose from {FORMATS}")


def _cell(value, fmt):
    if isinstance(value, tuple):
        return ";".join(value)
    if isinstance(value, float):
        if fmt == "markdown":
            return "-" if math.isnan(value) else f"{value:.2f}"
        return repr(value)
    return str(value)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _markdown_text(header, rows) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    for r in rows:
        lines.append("| " + " | ".join(r) + " |")
    return "\n".join(lines) + "\n"


def _eval_table(report: EvalReport, fmt):
    columns = REPORT_COLUMNS if fmt == "csv" else METRIC_COLUMNS + TIMING_COLUMNS + EXTRA_COLUMNS[:1] + EXTRA_COLUMNS[3:6]
    header = [h for h, _ in columns]
    rows = [[_cell(getattr(r, attr), fmt) for _, attr in columns] for r in report.rows]
    return header, rows


def _comparison_table(report: ComparisonReport, fmt):
    header = ["Model"]
    for m in COMPARED_METRICS:
        title = dict((a, h) for h, a in METRIC_COLUMNS)[m]
        header += [f"{title} (full)", f"{title} (reduced)", f"{title} (delta)"]
    header += ["Fit Seconds (full)", "Fit Seconds (reduced)"]
    rows = []
    for c in report.rows:
        row = [c.label]
        for m in COMPARED_METRICS:
            f = getattr(c.full, m) if c.full and c.full.ok else float("nan")
            r = getattr(c.reduced, m) if c.reduced and c.reduced.ok else float("nan")
            row += [_cell(f, fmt), _cell(r, fmt), _cell(r - f, fmt)]
        row += [
            _cell(c.full.fit_seconds if c.full else float("nan"), fmt),
            _cell(c.reduced.fit_seconds if c.reduced else float("nan"), fmt),
        ]
        rows.append(row)
    return header, rows


def emit_report(report, fmt: str = "csv") -> str:
    """Render an :class:`EvalReport` or :class:`ComparisonReport` as text."""
    _check_format(fmt)
    if isinstance(report, EvalReport):
        header, rows = _eval_table(report, fmt)
    elif isinstance(report, ComparisonReport):
        header, rows = _comparison_table(report, fmt)
    else:
        raise ParameterError(f"cannot render {type(report).__name__}")
    if fmt == "csv":
        return _csv_text(header, rows)
    text = _markdown_text(header, rows)
    if isinstance(report, ComparisonReport):
        s = report.summary
        text = (
            f"# {s['dataset']}: full vs reduced feature set (seed {s['seed']})\n\n"
            f"- best accuracy, full ({len(s['full_features'])} features): {s['best_full_accuracy']:.2f}\n"
            f"- best accuracy, reduced ({len(s['reduced_features'])} features: "
            f"{', '.join(s['reduced_features'])}): {s['best_reduced_accuracy']:.2f}\n"
            f"- total fit+predict seconds: full {s['total_seconds_full']:.3f}, "
            f"reduced {s['total_seconds_reduced']:.3f}\n\n" + text
        )
    return text


def read_report_csv(text: str) -> list[dict]:
    """Parse an emitted report CSV back into typed dicts."""
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        row = {}
        for header, attr in REPORT_COLUMNS:
            value = rec[header]
            if attr in ("label", "model", "score_source", "status"):
                row[attr] = value
            elif attr == "degenerate":
                row[attr] = tuple(v for v in value.split(";") if v)
            else:
                row[attr] = float(value)
        out.append(row)
    return out


def results_from_csv(text: str) -> list[ModelResult]:
    return [ModelResult(**row) for row in read_report_csv(text)]


def feature_scores_csv(scores: FeatureScores) -> str:
    rows = [[name, repr(f)] for name, f in scores.ranked()]
    return _csv_text(["feature", "f_value"], rows)


def correlations_csv(corr: CorrelationMatrix) -> str:
    rows = [[name] + ["" if math.isnan(v) else repr(float(v)) for v in corr.values[i]] for i, name in enumerate(corr.names)]
    return _csv_text([""] + list(corr.names), rows)


def predictions_csv(report: EvalReport) -> str:
    """Per-model test predictions, one column per model, plus the truth."""
    kept = [r for r in report.rows if r.predictions is not None]
    if report.y_test is None:
        raise ParameterError("report was produced without save_predictions")
    header = ["y_true"] + [r.model for r in kept]
    rows = [[str(y)] + [str(r.predictions[i]) for r in kept] for i, y in enumerate(report.y_test)]
    return _csv_text(header, rows)
