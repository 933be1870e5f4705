"""Time each kernel and a full bench run under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeats 5] [--json out.json]

The first numba call compiles (or loads the on-disk cache); it runs once as a
warm-up before timing. Reported numbers are the median of ``--repeats``.
"""

import argparse
import json
import statistics
import time

import numpy as np

from heartsel import kernels
from heartsel._accel import HAS_NUMBA, use_backend
from heartsel.bench import ExperimentConfig, prepare, run_experiment


def median_seconds(fn, repeats):
    fn()
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def cases(rng):
    n, q = 876, 10
    X = rng.normal(size=(n, q)) * rng.uniform(0.1, 100, q)
    y = rng.integers(0, 2, n)
    codes = y.astype(np.int64)
    idx = np.arange(n, dtype=np.int64)
    feats = np.arange(q, dtype=np.int64)
    w = np.ones(n)
    Q = rng.normal(size=(220, q)) * X.std(axis=0)
    orders = np.stack([rng.permutation(n) for _ in range(100)]).astype(np.int64)
    ys = 2.0 * y - 1
    return {
        "anova_sums_of_squares": lambda: kernels.anova_sums_of_squares(X, codes, 2),
        "best_split (root node)": lambda: kernels.best_split(X, y, w, idx, feats),
        "knn_fraction (220 queries)": lambda: kernels.knn_fraction(X, y, Q, 5),
        "logistic_descent (1000 epochs)": lambda: kernels.logistic_descent(X, y, 1e-4, 0.1, 1000),
        "sgd_logistic (100 epochs)": lambda: kernels.sgd_logistic(X / 100, y, np.zeros(q), 0.0, 0.01, orders),
        "perceptron (100 epochs)": lambda: kernels.perceptron(X, ys, np.zeros(q), 0.0, orders),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--json", help="also write the results as JSON")
    args = parser.parse_args()
    backends = ["numpy"] + (["numba"] if HAS_NUMBA else [])
    results = {}
    for name, fn in cases(np.random.default_rng(0)).items():
        results[name] = {}
        for b in backends:
            with use_backend(b):
                results[name][b] = median_seconds(fn, args.repeats)

    cfg = ExperimentConfig(dataset="cvd", synthetic=True, serial=True)
    prepared = prepare(cfg)
    results["bench full mode, 16 models"] = {}
    for b in backends:
        with use_backend(b):
            results["bench full mode, 16 models"][b] = median_seconds(
                lambda: run_experiment(cfg, "full", prepared), max(1, args.repeats // 2)
            )

    width = max(len(k) for k in results)
    print(f"{'case':<{width}}  " + "  ".join(f"{b:>10}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for name, row in results.items():
        cells = "  ".join(f"{row[b] * 1e3:>8.2f}ms" for b in backends)
        speed = f"   {row['numpy'] / row['numba']:7.1f}x" if "numba" in row else ""
        print(f"{name:<{width}}  {cells}{speed}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
