"""NumPy fallback for the gate kernels.

Same interface and in-place semantics as the compiled module ``_kernels``;
used when the extension is unavailable (or forced via WSQAOA_KERNELS=python).
"""

import numpy as np


def apply_phase(amps: np.ndarray, values: np.ndarray, scale: float) -> None:
    """amps[k] *= exp(1j * scale * values[k])."""
    amps *= np.exp(1j * scale * values)


def apply_phase_pair(amps: np.ndarray, v1: np.ndarray, s1: float,
                     v2: np.ndarray, s2: float) -> None:
    """amps[k] *= exp(1j * (s1 * v1[k] + s2 * v2[k])). Fused diagonal layer."""
    amps *= np.exp(1j * (s1 * v1 + s2 * v2))


def apply_rx_all(amps: np.ndarray, n_qubits: int, beta: float) -> None:
    """Apply exp(1j * beta * X) to every qubit."""
    c = np.cos(beta)
    s = 1j * np.sin(beta)
    for q in range(n_qubits):
        stride = 1 << q
        view = amps.reshape(-1, 2, stride)
        lo = view[:, 0, :].copy()
        hi = view[:, 1, :]
        view[:, 0, :] = c * lo + s * hi
        view[:, 1, :] = s * lo + c * hi


def expect_diagonal(amps: np.ndarray, values: np.ndarray) -> float:
    """Return sum_k |amps[k]|^2 * values[k]."""
    return float((amps.real ** 2 + amps.imag ** 2) @ values)
