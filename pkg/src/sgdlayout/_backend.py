"""Kernel backend selection.

The compiled extension is used when importable; set ``SGDLAYOUT_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def get_kernels(name: str | None = None) -> ModuleType:
    """Return the kernel module for ``name`` (``"compiled"``, ``"python"`` or default)."""
    if name is None:
        name = BACKEND
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built; run `pip install -e .`")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> list[str]:
    return ["compiled", "python"] if _ckernels is not None else ["python"]


if os.environ.get("SGDLAYOUT_PURE_PYTHON", "") not in ("", "0") or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"

kernels = get_kernels(BACKEND)
