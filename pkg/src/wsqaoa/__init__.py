"""Statevector toolkit for QAOA and warm-start QAOA on weighted MAX-CUT."""

from ._backend import active_backend

__version__ = "0.1.0"

__all__ = ["active_backend", "__version__"]
