"""Missing-row removal, random down-sampling and stratified splitting.

All randomness comes from numpy's PCG64 bit generator keyed by
``(seed, stream)`` where ``stream`` names the consumer. PCG64 output for a
given key is fixed across platforms and numpy releases, and the shuffles below
draw only integers from it, so a seed reproduces the same rows everywhere.
"""

from __future__ import annotations

import dataclasses
import warnings

import numpy as np

from .errors import BalanceError, IncompleteDataError, ParameterError, StratificationError
from .tabular import Dataset

DEFAULT_SEED = 42

STREAM_BALANCE = 1
STREAM_SPLIT = 2
STREAM_MODEL = 3
STREAM_SYNTHETIC = 4


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    if seed < 0 or seed >= 2**64:
        raise ParameterError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
    return np.random.Generator(np.random.PCG64([int(seed), int(stream)]))


def fisher_yates(items, rng: np.random.Generator, k: int | None = None) -> np.ndarray:
    """Uniform random sample of ``k`` items without replacement, in draw order.

    Partial Fisher-Yates: position ``i`` swaps with a uniform index in
    ``[i, n)``. ``k=None`` shuffles everything.
    """
    a = np.array(items, copy=True)
    n = a.shape[0]
    k = n if k is None else k
    if not 0 <= k <= n:
        raise ParameterError(f"cannot draw {k} of {n} items")
    for i in range(k):
        j = int(rng.integers(i, n))
        if j != i:
            a[i], a[j] = a[j], a[i]
    return a[:k]


def drop_missing(dataset: Dataset) -> Dataset:
    """Keep only rows with no missing cell, in their original order."""
    keep = np.flatnonzero(~dataset.missing_mask.any(axis=1))
    if keep.size == dataset.n:
        return dataset
    if keep.size == 0:
        warnings.warn("drop_missing removed every row; dataset is now empty", stacklevel=2)
    return dataset.take(keep)


def downsample_balance(dataset: Dataset, seed: int = DEFAULT_SEED) -> Dataset:
    """All minority rows plus an equal-size random sample of majority rows.

    The combined rows are shuffled with the same seeded generator.
    """
    if not dataset.is_complete():
        raise IncompleteDataError("down-sampling needs complete data; run drop_missing first")
    y = dataset.target()
    pos = np.flatnonzero(y == 1)
    neg = np.flatnonzero(y == 0)
    if pos.size == 0 or neg.size == 0:
        raise BalanceError(
            f"both classes required for balancing (class 0: {neg.size}, class 1: {pos.size})"
        )
    minority, majority = (pos, neg) if pos.size < neg.size else (neg, pos)
    rng = make_rng(seed, STREAM_BALANCE)
    sampled = fisher_yates(majority, rng, minority.size)
    rows = fisher_yates(np.concatenate([minority, sampled]), rng)
    return dataset.take(rows)


@dataclasses.dataclass(frozen=True)
class SplitPair:
    train: Dataset
    test: Dataset
    seed: int
    ratio: float
    train_rows: np.ndarray
    test_rows: np.ndarray


def stratified_rows(y: np.ndarray, ratio: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Row indices for a per-class split with ``floor(ratio * count)`` in train."""
    if not 0.0 < ratio < 1.0:
        raise ParameterError(f"split ratio must lie in (0, 1), got {ratio}")
    rng = make_rng(seed, STREAM_SPLIT)
    train, test = [], []
    for label in (0, 1):
        rows = np.flatnonzero(y == label)
        if rows.size < 2:
            raise StratificationError(
                f"class {label} has {rows.size} rows; stratification needs at least 2"
            )
        shuffled = fisher_yates(rows, rng)
        cut = int(np.floor(ratio * rows.size))
        train.append(shuffled[:cut])
        test.append(shuffled[cut:])
    return np.sort(np.concatenate(train)), np.sort(np.concatenate(test))


def stratified_split(dataset: Dataset, ratio: float = 0.8, seed: int = DEFAULT_SEED) -> SplitPair:
    y = dataset.target()
    train_rows, test_rows = stratified_rows(y, ratio, seed)
    return SplitPair(
        train=dataset.take(train_rows),
        test=dataset.take(test_rows),
        seed=seed,
        ratio=ratio,
        train_rows=train_rows,
        test_rows=test_rows,
    )
