"""Classical outer loop: finite-difference gradient descent, RI multistart,
and the INTERP depth-incremental schedule.

RI draws 50 (configurable) random initial parameter sets, with beta ranges
keyed on the bias strength, and keeps the best converged objective. INTERP
optimizes depth 1 by RI, then grows the depth one layer at a time, seeding
each new depth by linear interpolation of the previous optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._seeds import derive_seed
from .ansatz import AnsatzSpec, Evaluator, ParameterSet
from .graph import IsingProblem

_MIN_STEP = 1e-18


@dataclass(frozen=True)
class OptimizerConfig:
    learning_rate: float = 0.1
    grad_threshold: float = 1e-3
    max_iters: int = 5000
    fd_step: float = 1e-4
    restarts: int = 50

    def __post_init__(self):
        for name in ("learning_rate", "grad_threshold", "max_iters",
                     "fd_step", "restarts"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class OptResult:
    params: ParameterSet
    objective_value: float
    iterations: int
    converged: bool
    grad_norm_final: float


def _fd_gradient(ev: Evaluator, theta: np.ndarray, h: float) -> np.ndarray:
    """Central differences (f(x+h) - f(x-h)) / 2h, one coordinate at a time.

    Assumes ev.value_with_prefixes was last called at this theta, so each
    perturbed evaluation only recomputes from the touched layer onward.
    """
    grad = np.empty_like(theta)
    p = ev.p
    for k in range(len(theta)):
        layer = k if k < p else k - p
        saved = theta[k]
        theta[k] = saved + h
        f_plus = ev.value_suffix(theta, layer)
        theta[k] = saved - h
        f_minus = ev.value_suffix(theta, layer)
        theta[k] = saved
        grad[k] = (f_plus - f_minus) / (2.0 * h)
    return grad


def gradient(spec: AnsatzSpec, params: ParameterSet, prob: IsingProblem,
             fd_step: float = 1e-4) -> np.ndarray:
    """Gradient of the objective w.r.t. (beta_1..beta_p, gamma_1..gamma_p)."""
    if fd_step <= 0:
        raise ValueError("fd_step must be positive")
    ev = Evaluator(spec, prob)
    theta = np.array(params.betas + params.gammas, dtype=np.float64)
    ev.value_with_prefixes(theta)
    return _fd_gradient(ev, theta, fd_step)


def _to_params(theta: np.ndarray, p: int) -> ParameterSet:
    return ParameterSet(tuple(theta[:p]), tuple(theta[p:]))


def gradient_descent(spec: AnsatzSpec, init: ParameterSet, prob: IsingProblem,
                     cfg: OptimizerConfig) -> OptResult:
    """Descend until the gradient infinity-norm drops below the threshold.

    Each iteration starts from the configured learning rate and halves it
    until the objective decreases, so accepted values are monotone
    non-increasing. Non-convergence (max_iters, or no descent direction at
    machine precision) is reported via converged=False, never raised.
    """
    if init.p != spec.p:
        raise ValueError(f"init depth {init.p} != spec depth {spec.p}")
    ev = Evaluator(spec, prob)
    theta = np.array(init.betas + init.gammas, dtype=np.float64)
    f_curr = ev.value_with_prefixes(theta)
    for it in range(cfg.max_iters):
        grad = _fd_gradient(ev, theta, cfg.fd_step)
        gnorm = float(np.max(np.abs(grad)))
        if gnorm < cfg.grad_threshold:
            return OptResult(_to_params(theta, spec.p), f_curr, it, True, gnorm)
        eta = cfg.learning_rate
        while True:
            trial = theta - eta * grad
            f_trial = ev.value_with_prefixes(trial)
            if f_trial < f_curr:
                break
            eta *= 0.5
            if eta < _MIN_STEP:
                return OptResult(_to_params(theta, spec.p), f_curr, it, False, gnorm)
        theta, f_curr = trial, f_trial
    grad = _fd_gradient(ev, theta, cfg.fd_step)
    gnorm = float(np.max(np.abs(grad)))
    return OptResult(_to_params(theta, spec.p), f_curr, cfg.max_iters,
                     gnorm < cfg.grad_threshold, gnorm)


def random_init(alpha: float, p: int, seed: int) -> ParameterSet:
    """Uniform initial angles: beta range keyed on alpha, gamma in [-2pi, 2pi).

    beta is drawn from [-pi/4, pi/4) for alpha = 0, [-pi/2, pi/2) for
    alpha = 1, and [-pi, pi) for any other alpha.
    """
    if p < 1:
        raise ValueError(f"depth must be >= 1, got {p}")
    if alpha == 0:
        half_range = np.pi / 4
    elif alpha == 1:
        half_range = np.pi / 2
    else:
        half_range = np.pi
    rng = np.random.default_rng(seed)
    betas = rng.uniform(-half_range, half_range, size=p)
    gammas = rng.uniform(-2 * np.pi, 2 * np.pi, size=p)
    return ParameterSet(tuple(betas), tuple(gammas))


def run_ri(spec: AnsatzSpec, prob: IsingProblem, cfg: OptimizerConfig,
           seed: int) -> OptResult:
    """Best objective out of cfg.restarts random initializations."""
    best: OptResult | None = None
    for r in range(cfg.restarts):
        init = random_init(spec.alpha, spec.p, derive_seed(seed, r))
        result = gradient_descent(spec, init, prob, cfg)
        if best is None or result.objective_value < best.objective_value:
            best = result
    assert best is not None
    return best


def interp_extend(prev: ParameterSet) -> ParameterSet:
    """Grow a depth-(p-1) optimum into depth-p initial values.

    v_s[p] = ((s-1)/(p-1)) * v_{s-1}[p-1] + (1 - (s-1)/(p-1)) * v_s[p-1],
    with the out-of-range boundary values v_0 = v_p = 0, applied to betas and
    gammas alike.
    """

    def extend(vals: tuple[float, ...]) -> tuple[float, ...]:
        q = len(vals)
        padded = (0.0, *vals, 0.0)
        out = []
        for s in range(1, q + 2):
            frac = (s - 1) / q
            out.append(frac * padded[s - 1] + (1.0 - frac) * padded[s])
        return tuple(out)

    return ParameterSet(extend(prev.betas), extend(prev.gammas))


def run_interp(spec: AnsatzSpec, prob: IsingProblem, p_target: int,
               cfg: OptimizerConfig, seed: int) -> list[OptResult]:
    """Depth-incremental optimization from depth 1 to p_target.

    Depth 1 is a full RI multistart; each later depth runs one descent from
    the interpolated previous optimum. Returns one result per depth.
    """
    if p_target < 1:
        raise ValueError(f"p_target must be >= 1, got {p_target}")

    def at_depth(p: int) -> AnsatzSpec:
        return AnsatzSpec(spec.alpha, p, spec.x0)

    results = [run_ri(at_depth(1), prob, cfg, seed)]
    for depth in range(2, p_target + 1):
        init = interp_extend(results[-1].params)
        results.append(gradient_descent(at_depth(depth), init, prob, cfg))
    return results


# Method defaults: (alpha, p) -> optimizer, first match wins; None matches
# anything. An exact warm start (d = 0, alpha > 0) always uses RI.
METHOD_TABLE: tuple[tuple[float | None, int | None, str], ...] = (
    (1.0, 1, "ri"),
    (1.0, 2, "ri"),
    (1.0, 3, "ri"),
    (1.0, 4, "interp"),
    (None, None, "interp"),
)


def select_method(alpha: float, p: int, d: int | None = None) -> str:
    """Default optimizer choice ('ri' or 'interp') for a sweep cell."""
    if alpha != 0 and d == 0:
        return "ri"
    for a, pp, method in METHOD_TABLE:
        if (a is None or a == alpha) and (pp is None or pp == p):
            return method
    return "interp"
