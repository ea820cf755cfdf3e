"""Numeric backend selection and the shared log cache.

Two interchangeable kernel modules exist: `_kernels_numpy` (always
available) and `_kernels_numba` (JIT-compiled, imported only if numba is
installed). Selection order: explicit `select_backend()` call, else the
ZETA_BACKEND environment variable ("auto", "numba", "numpy"), else auto
(numba when importable, numpy otherwise).

The ln cache maps index i -> log(i + 1) and is shared by every kernel
call; it grows by replacement under a lock, so references handed to
running kernels stay valid and all growth paths produce identical values.
"""

from __future__ import annotations

import os
import threading

import numpy as np

from .errors import ConfigError

ENV_VAR = "ZETA_BACKEND"
_CHOICES = ("auto", "numba", "numpy")

_lock = threading.Lock()
_kernels = None
_ln: np.ndarray = np.log(np.arange(1.0, 1025.0))


def _load(name: str):
    if name == "numpy":
        from . import _kernels_numpy as mod
        return mod
    if name == "numba":
        from . import _kernels_numba as mod
        return mod
    raise ConfigError(f"unknown backend {name!r}; choose from {_CHOICES}")


def select_backend(name: str | None = None):
    """Pick the kernel module (and warm it up); returns the module."""
    global _kernels
    if name is None:
        name = os.environ.get(ENV_VAR, "auto").strip().lower()
    if name not in _CHOICES:
        raise ConfigError(f"{ENV_VAR} must be one of {_CHOICES}, got {name!r}")
    if name == "auto":
        try:
            mod = _load("numba")
        except ImportError:
            mod = _load("numpy")
    elif name == "numba":
        try:
            mod = _load("numba")
        except ImportError as exc:
            raise ConfigError(
                "backend 'numba' requested but numba is not importable; "
                "install the 'accel' extra or set ZETA_BACKEND=numpy"
            ) from exc
    else:
        mod = _load("numpy")
    mod.warmup()
    with _lock:
        _kernels = mod
    return mod


def get_kernels():
    """Currently selected kernel module, selecting on first use."""
    mod = _kernels
    if mod is None:
        mod = select_backend()
    return mod


def backend_name() -> str:
    return get_kernels().BACKEND_NAME


def ln_values(n_entries: int) -> np.ndarray:
    """Cache of ln(1..n); returned array has at least n_entries items."""
    global _ln
    arr = _ln
    if arr.shape[0] >= n_entries:
        return arr
    with _lock:
        if _ln.shape[0] < n_entries:
            size = max(n_entries, 2 * _ln.shape[0])
            _ln = np.log(np.arange(1.0, size + 1.0))
        return _ln
