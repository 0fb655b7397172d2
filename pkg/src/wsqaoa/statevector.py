"""Dense statevector kernel: initial states, ansatz unitaries, observables.

Basis index k encodes an assignment little-endian (bit i of k is x_i). All
apply_* operations are functional (the input state is left untouched); the
in-place work happens in the selected kernel backend.

Conventions: R_Y(t) = exp(i*(t/2)*Y) so R_Y(t)|0> = cos(t/2)|0> - sin(t/2)|1>;
the transverse mixer applies exp(+i*beta*X) per qubit (the mixer Hamiltonian
is -sum_i X_i); the bias layer implements exp(-i*beta*H_L) with
H_L = -alpha * sum_i (1 - 2*x0_i) Z_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._backend import kernels
from .graph import (IsingProblem, SolutionPair, as_assignment,
                    assignment_to_index, complement)

MAX_QUBITS = 24


@dataclass
class StateVector:
    """2^n complex amplitudes with unit norm."""

    n_qubits: int
    amplitudes: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())


def _check_guard(n: int, max_qubits: int) -> None:
    if not 1 <= n <= max_qubits:
        raise ValueError(f"n={n} outside guard [1, {max_qubits}]")


def _check_dims(s: StateVector, n: int) -> None:
    if s.n_qubits != n or len(s.amplitudes) != 1 << s.n_qubits:
        raise ValueError(f"state on {s.n_qubits} qubits, expected {n}")


def plus_state(n: int, max_qubits: int = MAX_QUBITS) -> StateVector:
    """Equal-weight superposition |+>^n."""
    _check_guard(n, max_qubits)
    amps = np.full(1 << n, 2.0 ** (-n / 2.0), dtype=np.complex128)
    return StateVector(n, amps)


def warmstart_initial_state(x0: Sequence[int] | np.ndarray, alpha: float,
                            max_qubits: int = MAX_QUBITS) -> StateVector:
    """Product state biased toward x0.

    Qubit i is prepared by R_Y(-pi/2 + (1 - 2*x0_i)*arctan(alpha)) acting on
    |0>. All amplitudes are real and strictly positive for finite alpha;
    alpha = 0 reduces to the plus state.
    """
    bits = as_assignment(x0)
    n = len(bits)
    _check_guard(n, max_qubits)
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    theta = np.arctan(alpha)
    match_amp = np.cos(np.pi / 4 - theta / 2)   # amplitude on the x0_i value
    flip_amp = np.cos(np.pi / 4 + theta / 2)    # amplitude on the opposite value
    amps = np.ones(1, dtype=np.complex128)
    for i in range(n):
        if bits[i] == 0:
            q = np.array([match_amp, flip_amp], dtype=np.complex128)
        else:
            q = np.array([flip_amp, match_amp], dtype=np.complex128)
        amps = np.kron(q, amps)
    return StateVector(n, amps)


@lru_cache(maxsize=8)
def _cached_energies(prob: IsingProblem) -> np.ndarray:
    n = prob.n
    ks = np.arange(1 << n, dtype=np.uint64)
    energies = np.zeros(1 << n, dtype=np.float64)
    for i, j, coupling in prob.couplings:
        parity = ((ks >> np.uint64(i)) ^ (ks >> np.uint64(j))) & np.uint64(1)
        energies += coupling * (1.0 - 2.0 * parity)
    energies.flags.writeable = False
    return energies


def diagonal_energies(prob: IsingProblem) -> np.ndarray:
    """Ising energy of every basis state (offset excluded); cached, read-only."""
    return _cached_energies(prob)


def bias_field_sums(x0: Sequence[int] | np.ndarray) -> np.ndarray:
    """sum_i (1 - 2*x0_i) * z_i(k) for every basis index k.

    Equals n - 2 * hamming(k, x0), the aligned-minus-misaligned count.
    """
    bits = as_assignment(x0)
    n = len(bits)
    ks = np.arange(1 << n, dtype=np.uint64)
    k0 = np.uint64(assignment_to_index(bits))
    return (n - 2.0 * np.bitwise_count(ks ^ k0)).astype(np.float64)


def apply_cost_phase(s: StateVector, prob: IsingProblem, gamma: float) -> StateVector:
    """Diagonal phase exp(-1j * gamma * E_k) per basis state."""
    _check_dims(s, prob.n)
    out = s.amplitudes.copy()
    kernels.apply_phase(out, diagonal_energies(prob), -gamma)
    return StateVector(s.n_qubits, out)


def apply_bias_phase(s: StateVector, x0: Sequence[int] | np.ndarray,
                     alpha: float, beta: float) -> StateVector:
    """Diagonal phase exp(+1j * beta * alpha * b_k) with b_k the bias sums."""
    bits = as_assignment(x0)
    _check_dims(s, len(bits))
    out = s.amplitudes.copy()
    kernels.apply_phase(out, bias_field_sums(bits), beta * alpha)
    return StateVector(s.n_qubits, out)


def apply_transverse_mixer(s: StateVector, beta: float) -> StateVector:
    """exp(+1j * beta * X) on every qubit."""
    out = s.amplitudes.copy()
    kernels.apply_rx_all(out, s.n_qubits, beta)
    return StateVector(s.n_qubits, out)


def probabilities(s: StateVector) -> np.ndarray:
    """|amplitude|^2 per basis state."""
    return s.amplitudes.real ** 2 + s.amplitudes.imag ** 2


def expectation_energy(s: StateVector, prob: IsingProblem) -> float:
    """<H_C> = sum_k |a_k|^2 E_k; the offset is not included."""
    _check_dims(s, prob.n)
    return kernels.expect_diagonal(s.amplitudes, diagonal_energies(prob))


def fidelity(s: StateVector, sol: SolutionPair) -> float:
    """Summed probability of the two exact-solution basis states."""
    if len(sol.solution) != s.n_qubits:
        raise ValueError(f"solution on {len(sol.solution)} qubits, "
                         f"state on {s.n_qubits}")
    k1 = assignment_to_index(sol.solution)
    k2 = assignment_to_index(complement(sol.solution))
    a = s.amplitudes
    return float((a[k1].real ** 2 + a[k1].imag ** 2)
                 + (a[k2].real ** 2 + a[k2].imag ** 2))
