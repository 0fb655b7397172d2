"""Kernel backend selection.

Prefers the compiled Cython kernels and falls back to the NumPy
implementation. Override with the environment variable WSQAOA_KERNELS set to
"compiled" (fail if missing) or "python".
"""

import os

_requested = os.environ.get("WSQAOA_KERNELS", "").strip().lower()
if _requested not in ("", "compiled", "python"):
    raise RuntimeError(
        f"WSQAOA_KERNELS must be 'compiled' or 'python', got {_requested!r}")

if _requested == "python":
    from . import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _kernels_py as kernels  # type: ignore[no-redef]
        BACKEND = "python"


def active_backend() -> str:
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return BACKEND
