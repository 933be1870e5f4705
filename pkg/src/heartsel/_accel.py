"""Backend switch for the compiled kernels.

Kernels come in pairs: a loop version compiled with numba and a pure-numpy
version. ``HEARTSEL_DISABLE_NUMBA=1`` (or a missing numba install) selects the
numpy path. Tests and the benchmark flip the backend with :func:`use_backend`.
"""

from __future__ import annotations

import contextlib
import os

try:
    from numba import njit as _numba_njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False
    _numba_njit = None

_FALSEY = {"", "0", "false", "no", "off"}

_state = {
    "numba": HAS_NUMBA
    and os.environ.get("HEARTSEL_DISABLE_NUMBA", "").strip().lower() in _FALSEY
}


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise a no-op decorator."""
    if HAS_NUMBA:
        kwargs.setdefault("cache", True)
        return _numba_njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn


def numba_enabled() -> bool:
    return _state["numba"]


def backend() -> str:
    return "numba" if _state["numba"] else "numpy"


def set_backend(name: str) -> None:
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}; expected 'numba' or 'numpy'")
    if name == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba is not installed")
    _state["numba"] = name == "numba"


@contextlib.contextmanager
def use_backend(name: str):
    previous = backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)
