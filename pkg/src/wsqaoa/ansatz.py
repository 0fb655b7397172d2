"""Depth-p variational states for QAOA and warm-start QAOA.

Each layer applies, in order, the cost phase U_C(gamma_s), the bias phase
U_L(beta_s) (an exact identity when alpha = 0), and the transverse mixer
U_T(beta_s). The scalar objective is the cost expectation <H_C>.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._backend import kernels
from .graph import IsingProblem, as_assignment
from .statevector import (StateVector, bias_field_sums, diagonal_energies,
                          plus_state, warmstart_initial_state)


@dataclass(frozen=True)
class ParameterSet:
    """Variational angles (beta_1..beta_p, gamma_1..gamma_p), radians."""

    betas: tuple[float, ...]
    gammas: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        if len(self.betas) != len(self.gammas) or len(self.betas) < 1:
            raise ValueError("betas and gammas must have equal length >= 1")

    @property
    def p(self) -> int:
        return len(self.betas)


@dataclass(frozen=True)
class AnsatzSpec:
    """Ansatz family: bias strength alpha, approximate solution x0, depth p.

    alpha = 0 denotes plain QAOA and x0 is ignored; alpha > 0 requires x0.
    """

    alpha: float
    p: int
    x0: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.p < 1:
            raise ValueError(f"depth must be >= 1, got {self.p}")
        if self.x0 is not None:
            object.__setattr__(self, "x0", tuple(int(b) for b in self.x0))
        if self.alpha > 0 and self.x0 is None:
            raise ValueError("alpha > 0 requires an approximate solution x0")


class Evaluator:
    """Repeated circuit evaluations for one (spec, prob), reusing buffers.

    Keeps the per-layer intermediate states of the last value_with_prefixes
    call so that single-parameter perturbations (finite differences) only
    recompute the layers a parameter actually touches. value_suffix results
    are bitwise identical to full evaluations.
    """

    def __init__(self, spec: AnsatzSpec, prob: IsingProblem):
        self.p = spec.p
        self.n = prob.n
        self.alpha = spec.alpha
        self.energies = diagonal_energies(prob)
        if spec.alpha > 0:
            x0 = as_assignment(spec.x0)
            if len(x0) != prob.n:
                raise ValueError(f"x0 length {len(x0)} != n={prob.n}")
            self.initial = warmstart_initial_state(x0, spec.alpha).amplitudes
            self.bias = bias_field_sums(x0)
        else:
            self.initial = plus_state(prob.n).amplitudes
            self.bias = None
        self.buf = np.empty_like(self.initial)
        self._prefix = [np.empty_like(self.initial) for _ in range(self.p - 1)]

    def _layer(self, amps: np.ndarray, beta: float, gamma: float) -> None:
        if self.bias is None:
            kernels.apply_phase(amps, self.energies, -gamma)
        else:
            kernels.apply_phase_pair(amps, self.energies, -gamma,
                                     self.bias, self.alpha * beta)
        kernels.apply_rx_all(amps, self.n, beta)

    def state(self, betas: Sequence[float], gammas: Sequence[float]) -> np.ndarray:
        """Full circuit run into the shared scratch buffer."""
        np.copyto(self.buf, self.initial)
        for beta, gamma in zip(betas, gammas):
            self._layer(self.buf, beta, gamma)
        return self.buf

    def value(self, theta: np.ndarray) -> float:
        """<H_C> at theta = (beta_1..beta_p, gamma_1..gamma_p)."""
        return kernels.expect_diagonal(self.state(theta[:self.p], theta[self.p:]),
                                       self.energies)

    def value_with_prefixes(self, theta: np.ndarray) -> float:
        """Like value, but records the state after each non-final layer."""
        np.copyto(self.buf, self.initial)
        for s in range(self.p):
            self._layer(self.buf, theta[s], theta[self.p + s])
            if s < self.p - 1:
                np.copyto(self._prefix[s], self.buf)
        return kernels.expect_diagonal(self.buf, self.energies)

    def value_suffix(self, theta: np.ndarray, layer: int) -> float:
        """Re-evaluate layers >= layer (0-based), reusing recorded prefixes.

        Only valid when theta agrees with the last value_with_prefixes call
        on every layer before `layer`.
        """
        src = self.initial if layer == 0 else self._prefix[layer - 1]
        np.copyto(self.buf, src)
        for s in range(layer, self.p):
            self._layer(self.buf, theta[s], theta[self.p + s])
        return kernels.expect_diagonal(self.buf, self.energies)


def _check_depth(spec: AnsatzSpec, params: ParameterSet) -> None:
    if params.p != spec.p:
        raise ValueError(f"parameter depth {params.p} != spec depth {spec.p}")


def build_state(spec: AnsatzSpec, params: ParameterSet, prob: IsingProblem) -> StateVector:
    """Construct the depth-p variational state for the given angles."""
    _check_depth(spec, params)
    ev = Evaluator(spec, prob)
    return StateVector(prob.n, ev.state(params.betas, params.gammas).copy())


def objective(spec: AnsatzSpec, params: ParameterSet, prob: IsingProblem) -> float:
    """<H_C> of the variational state; lower is better, offset excluded."""
    _check_depth(spec, params)
    ev = Evaluator(spec, prob)
    return kernels.expect_diagonal(ev.state(params.betas, params.gammas),
                                   ev.energies)


def objective_function(spec: AnsatzSpec, prob: IsingProblem) -> Callable[[np.ndarray], float]:
    """Fast repeated-evaluation form: maps theta = (betas..., gammas...) to <H_C>."""
    return Evaluator(spec, prob).value
