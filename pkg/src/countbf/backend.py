"""Kernel backend selection.

Two interchangeable kernel modules exist: the compiled Cython extension
(_speedups) and the pure-Python reference (_kernels_py).  The compiled one
is preferred when importable; COUNTBF_BACKEND=py forces the reference and
COUNTBF_BACKEND=c fails loudly instead of silently degrading.  The choice is
made once at import time; individual filters can still be constructed with
an explicit kernels= module, which is how the equivalence tests drive both.
"""

from __future__ import annotations

import os


def _load() -> tuple[object, str]:
    forced = os.environ.get("COUNTBF_BACKEND", "").strip().lower()
    if forced not in ("", "c", "py"):
        raise RuntimeError(f"COUNTBF_BACKEND must be 'c' or 'py', got {forced!r}")
    if forced in ("", "c"):
        try:
            from . import _speedups

            return _speedups, "c"
        except ImportError:
            if forced == "c":
                raise RuntimeError(
                    "COUNTBF_BACKEND=c but the compiled extension is not available"
                ) from None
    from . import _kernels_py

    return _kernels_py, "py"


kernels, BACKEND = _load()


def active_backend() -> str:
    """Name of the kernel backend in use: 'c' (compiled) or 'py' (fallback)."""
    return BACKEND
