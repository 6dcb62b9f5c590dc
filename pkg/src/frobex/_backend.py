"""Kernel selection: compiled extension when available, pure Python otherwise."""

from __future__ import annotations

from . import _kernel_py

try:
    from . import _kernel_cy as _kernel

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    _kernel = _kernel_py
    BACKEND = "pure"

rref_mod = _kernel.rref_mod
matmul_mod = _kernel.matmul_mod


def backend_name() -> str:
    return BACKEND
