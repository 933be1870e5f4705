"""Command-line entry point.

Exit codes: 0 success, 1 usage or parameter error, 2 data error, 3 internal
error. Diagnostics go to stderr; data goes to files and stdout.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import platform
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._accel import HAS_NUMBA, backend
from .bench import MODES, ExperimentConfig, compare, feature_scores, prepare, run_modes
from .errors import DataError, HeartselError, ParameterError
from .featstats import pearson_correlation
from .models import CORE_MODELS, REGISTRY
from .preprocess import DEFAULT_SEED
from .report import (
    correlations_csv,
    emit_report,
    feature_scores_csv,
    predictions_csv,
    results_from_csv,
)

log = logging.getLogger("heartsel")

OUT_DIR_ENV = "HEARTSEL_OUT_DIR"
DEFAULT_OUT_DIR = "heartsel-out"
RUN_META_FORMAT = 1

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

# Flags that map one-to-one onto ExperimentConfig fields.
CONFIG_FLAGS = (
    "dataset",
    "schema",
    "data_dir",
    "synthetic",
    "synthetic_rows",
    "seed",
    "split_ratio",
    "k",
    "models",
    "feature_mode",
    "select_on_train",
    "serial",
    "workers",
    "save_predictions",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_params(items) -> dict:
    """``model.key=value`` pairs into ``{model: {key: value}}``."""
    out: dict = {}
    for item in items or ():
        lhs, sep, value = item.partition("=")
        model, dot, key = lhs.partition(".")
        if not sep or not dot or not model or not key:
            raise ParameterError(f"--param expects model.key=value, got {item!r}")
        out.setdefault(model, {})[key] = _parse_value(value)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=None, help=f"random seed (default {DEFAULT_SEED})")
    g.add_argument("--config", help="JSON config file (or a previous run_meta.json)")
    g.add_argument("--out-dir", help=f"output directory (default ${OUT_DIR_ENV} or ./{DEFAULT_OUT_DIR})")
    g.add_argument("--dataset", default=None, help="preset name (cvd, framingham) or CSV path")
    g.add_argument("--schema", default=None, help="JSON schema file for a non-preset CSV")
    g.add_argument("--data-dir", default=None, help="directory holding the preset CSV files")
    g.add_argument("--synthetic", action="store_true", default=None, help="use a seeded surrogate dataset")
    g.add_argument("--synthetic-rows", type=int, default=None)
    g.add_argument("--quiet", action="store_true", help="only log warnings and errors")

    parser = _Parser(prog="heartsel", description="ANOVA-F feature selection and classifier benchmarks")
    parser.add_argument("--version", action="version", version=f"heartsel {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sub.add_parser("ingest", parents=[common], help="load, clean and balance a dataset; print counts")

    sub.add_parser("correlate", parents=[common], help="write correlations.csv")

    p = sub.add_parser("select", parents=[common], help="rank features by ANOVA F and keep the top k")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--select-on-train", action="store_true", default=None)
    p.add_argument("--split-ratio", type=float, default=None)

    p = sub.add_parser("bench", parents=[common], help="train and evaluate the model registry")
    p.add_argument("--mode", dest="feature_mode", choices=MODES, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--split-ratio", type=float, default=None)
    p.add_argument("--models", default=None, help="comma-separated registry names (default: core set)")
    p.add_argument("--param", action="append", default=[], metavar="MODEL.KEY=VALUE")
    p.add_argument("--select-on-train", action="store_true", default=None)
    p.add_argument("--serial", action="store_true", default=None, help="fit models one at a time")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--save-predictions", action="store_true", default=None)
    p.add_argument("--list-models", action="store_true", help="print the registry and exit")

    p = sub.add_parser("report", parents=[common], help="render a finished run as markdown")
    p.add_argument("--run-dir", default=None, help="run directory (default: --out-dir)")
    return parser


def _load_config_file(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ParameterError(f"config file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise ParameterError(f"config file {path} is not valid JSON: {exc}") from None
    if "config" in doc and isinstance(doc["config"], dict):
        doc = doc["config"]
    return doc


def resolve_config(args) -> tuple[ExperimentConfig, Path]:
    values: dict = {}
    out_dir = None
    if args.config:
        file_values = _load_config_file(args.config)
        out_dir = file_values.pop("out_dir", None)
        values.update(file_values)
    for flag in CONFIG_FLAGS:
        v = getattr(args, flag, None)
        if v is not None:
            values[flag] = v
    if isinstance(values.get("models"), str):
        values["models"] = [m.strip() for m in values["models"].split(",") if m.strip()]
    params = {m: dict(v) for m, v in values.get("params", {}).items()}
    for model, kv in parse_params(getattr(args, "param", None)).items():
        params.setdefault(model, {}).update(kv)
    values["params"] = params
    config = ExperimentConfig.from_dict(values)
    out = args.out_dir or out_dir or os.environ.get(OUT_DIR_ENV) or DEFAULT_OUT_DIR
    return config, Path(out)


def _versions() -> dict:
    v = {"heartsel": __version__, "numpy": np.__version__, "python": platform.python_version()}
    if HAS_NUMBA:
        import numba

        v["numba"] = numba.__version__
    return v


def write_run_meta(out: Path, command: str, config: ExperimentConfig, extra=None) -> None:
    meta = {
        "format": RUN_META_FORMAT,
        "command": command,
        "config": config.to_dict(),
        "backend": backend(),
        "versions": _versions(),
    }
    if extra:
        meta.update(extra)
    (out / "run_meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write(out: Path, name: str, text: str) -> Path:
    path = out / name
    path.write_text(text, encoding="utf-8")
    log.info("wrote %s", path)
    return path


def cmd_ingest(config, out):
    prepared = prepare(config)
    y = prepared.balanced.target()
    summary = {
        "dataset": config.dataset,
        "raw_rows": prepared.raw_rows,
        "complete_rows": prepared.complete_rows,
        "balanced_rows": prepared.balanced.n,
        "balanced_class_counts": [int((y == 0).sum()), int((y == 1).sum())],
        "n_train": int(prepared.train_rows.size),
        "n_test": int(prepared.test_rows.size),
        "input_features": list(prepared.matrix.feature_names),
    }
    print(json.dumps(summary, indent=2))
    out.mkdir(parents=True, exist_ok=True)
    write_run_meta(out, "ingest", config)
    return EXIT_OK


def cmd_correlate(config, out):
    prepared = prepare(config)
    corr = pearson_correlation(prepared.matrix)
    out.mkdir(parents=True, exist_ok=True)
    _write(out, "correlations.csv", correlations_csv(corr))
    target = corr.names[-1]
    for name in corr.names[:-1]:
        value = corr.get(name, target)
        print(f"{name}\t{'undefined' if np.isnan(value) else f'{value:.4f}'}")
    write_run_meta(out, "correlate", config)
    return EXIT_OK


def cmd_select(config, out):
    k = config.effective_k
    if k is None:
        raise ParameterError("--k is required for non-preset datasets")
    prepared = prepare(config)
    scores = feature_scores(prepared, k, config.select_on_train)
    out.mkdir(parents=True, exist_ok=True)
    _write(out, "feature_scores.csv", feature_scores_csv(scores))
    _write(out, "selected_features.txt", "\n".join(scores.selected) + "\n")
    for name in scores.selected:
        print(name)
    write_run_meta(out, "select", config)
    return EXIT_OK


def cmd_bench(config, out, args):
    if args.list_models:
        for name, e in REGISTRY.items():
            tag = "core" if name in CORE_MODELS else "optional"
            print(f"{name}\t{tag}\tsupports_scores={e.supports_scores}\t{json.dumps(dict(e.defaults), sort_keys=True)}")
        return EXIT_OK
    prepared = prepare(config)
    reports = run_modes(config, prepared)
    out.mkdir(parents=True, exist_ok=True)
    for mode, report in reports.items():
        _write(out, f"report_{mode}.csv", emit_report(report, "csv"))
        if config.save_predictions:
            _write(out, f"predictions_{mode}.csv", predictions_csv(report))
    if config.effective_k is not None:
        k = min(config.effective_k, prepared.matrix.q)
        _write(out, "feature_scores.csv", feature_scores_csv(feature_scores(prepared, k, config.select_on_train)))
    _write(out, "correlations.csv", correlations_csv(pearson_correlation(prepared.matrix)))
    if "full" in reports and "reduced" in reports:
        comparison = compare(reports["full"], reports["reduced"])
        _write(out, "comparison.md", emit_report(comparison, "markdown"))
        _write(out, "comparison.csv", emit_report(comparison, "csv"))
    for mode, report in reports.items():
        print(f"## {mode} ({len(report.metadata['feature_names'])} features)")
        print(emit_report(report, "markdown"))
    timing = {
        mode: {
            "total_wall_seconds": r.metadata["total_wall_seconds"],
            "models_per_second": r.metadata["models_per_second"],
        }
        for mode, r in reports.items()
    }
    write_run_meta(out, "bench", config, {"timing": timing})
    return EXIT_OK


def cmd_report(config, out, args):
    run_dir = Path(args.run_dir) if args.run_dir else out
    found = False
    for mode in ("full", "reduced"):
        path = run_dir / f"report_{mode}.csv"
        if not path.is_file():
            continue
        found = True
        print(f"## {mode}")
        for r in results_from_csv(path.read_text(encoding="utf-8")):
            print(
                f"{r.label}: accuracy {r.accuracy:.2f}, balanced {r.balanced_accuracy:.2f}, "
                f"ROC AUC {r.roc_auc:.2f}, F1 {r.f1:.2f} [{r.status}]"
            )
    comparison = run_dir / "comparison.md"
    if comparison.is_file():
        found = True
        print(comparison.read_text(encoding="utf-8"))
    if not found:
        raise DataError(f"no report files in {run_dir}")
    return EXIT_OK


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    stage = args.command
    try:
        config, out = resolve_config(args)
        if args.command == "ingest":
            return cmd_ingest(config, out)
        if args.command == "correlate":
            return cmd_correlate(config, out)
        if args.command == "select":
            return cmd_select(config, out)
        if args.command == "bench":
            return cmd_bench(config, out, args)
        return cmd_report(config, out, args)
    except ParameterError as exc:
        print(f"heartsel {stage}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        print(f"heartsel {stage}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except HeartselError as exc:
        print(f"heartsel {stage}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"heartsel {stage}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main(argv=None):
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
