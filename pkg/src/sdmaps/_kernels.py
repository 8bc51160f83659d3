"""Backend selection for the classifier's search kernels.

Two interchangeable kernel modules exist: a numba-compiled one and a pure
numpy one. The active backend is chosen per call, defaulting to the
``SDMAPS_BACKEND`` environment variable (auto / numba / numpy); ``auto``
takes numba when it imports and numpy otherwise.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

BACKEND_ENV = "SDMAPS_BACKEND"
BACKENDS = ("auto", "numba", "numpy")


def _numba_importable() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend(override: str | None = None) -> str:
    """Concrete backend name ("numba" or "numpy") for this call."""
    choice = override if override is not None else os.environ.get(BACKEND_ENV, "auto")
    choice = choice.lower()
    if choice not in BACKENDS:
        raise ValueError(f"unknown backend {choice!r}; expected one of {BACKENDS}")
    if choice == "auto":
        return "numba" if _numba_importable() else "numpy"
    if choice == "numba" and not _numba_importable():
        raise RuntimeError("numba backend requested but numba is not importable")
    return choice


def load_kernels(backend: str | None = None) -> tuple[str, ModuleType]:
    name = resolve_backend(backend)
    if name == "numba":
        from . import _kernels_numba as mod
    else:
        from . import _kernels_numpy as mod
    return name, mod


def inverse_table(p: int) -> np.ndarray:
    """inv[i] = i**(-1) mod p for i in [1, p); inv[0] = 0 as a dead slot.

    Built by the linear-time recurrence inv[i] = -(p // i) * inv[p % i].
    """
    inv = np.zeros(p, dtype=np.int64)
    if p > 1:
        inv[1] = 1
    for i in range(2, p):
        inv[i] = (p - p // i) * inv[p % i] % p
    return inv


def canonical_pairs(p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All ordered pairs in canonical order with precomputed arguments.

    Returns (xs, ys, args) where args[i] = (x + y) / (x - y) mod p, the
    point the equation's left side probes for pair i.
    """
    inv = inverse_table(p)
    xs, ys = [], []
    for x in range(p):
        for y in range(x):
            xs.append(x)
            ys.append(y)
    for x in range(p):
        for y in range(x + 1, p):
            xs.append(x)
            ys.append(y)
    xa = np.array(xs, dtype=np.int64)
    ya = np.array(ys, dtype=np.int64)
    args = (xa + ya) * inv[(xa - ya) % p] % p
    return xa, ya, args
