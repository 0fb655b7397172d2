"""Experiment drivers and closed-form theory curves.

Covers the Hamming-distance/bias-strength fidelity sweeps, critical-distance
estimation, the initial-state fidelity formula and its critical-distance
inversion, highest-probability-string statistics, and the two-stage
QAOA + warm-start pipeline.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._seeds import derive_seed
from .ansatz import AnsatzSpec, build_state
from .graph import (Graph, IsingProblem, SolutionPair, as_assignment,
                    assignment_to_index, brute_force_solve, complement,
                    flip_bits, generate_w3r, index_to_assignment,
                    ising_from_graph, pair_distance)
from .optimize import (OptimizerConfig, OptResult, run_interp, run_ri,
                       select_method)
from .statevector import fidelity, probabilities


# ---------------------------------------------------------------------------
# Theory curves for the warm-start initial state
# ---------------------------------------------------------------------------

def theoretical_initial_fidelity(n: int, d: float, alpha: float) -> float:
    """Closed-form fidelity of the warm-start initial state.

    cos^(2d)(pi/4 + t/2) * cos^(2(n-d))(pi/4 - t/2)
      + cos^(2d)(pi/4 - t/2) * cos^(2(n-d))(pi/4 + t/2),  t = arctan(alpha).

    d counts the bit flips separating the warm start from the exact
    solution; real-valued d is accepted for curve evaluation. Computed in
    log space so large-n tails stay accurate.
    """
    if not 0 <= d <= n:
        raise ValueError(f"d={d} outside [0, {n}]")
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    theta = math.atan(alpha)
    log_match = math.log(math.cos(math.pi / 4 - theta / 2))
    log_flip = math.log(math.cos(math.pi / 4 + theta / 2))
    term1 = math.exp(2 * d * log_flip + 2 * (n - d) * log_match)
    term2 = math.exp(2 * d * log_match + 2 * (n - d) * log_flip)
    return term1 + term2


def theoretical_dc_over_n(n: int, alpha: float, branch: str = "plus") -> float:
    """Relative critical distance of the warm-start initial state.

    Solves F0(n, d, alpha) = 2^(1-n) for d/n. The two roots are

        d/n = log(cos(pi/4) / cos(pi/4 - t/2)) / log(delta)
              + (1/2n) * log(1 +- sqrt(1 - sin^(2n)(pi/2 - t))) / log(delta)

    with t = arctan(alpha) and delta = tan(pi/4 - t/2). branch selects the
    +/- root; the two branches sum to exactly 1. The minus branch is
    evaluated via log(1-s) = log(1-s^2) - log(1+s) to stay stable when
    sin^(2n) underflows.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    theta = math.atan(alpha)
    log_delta = math.log(math.tan(math.pi / 4 - theta / 2))
    first = math.log(math.cos(math.pi / 4) / math.cos(math.pi / 4 - theta / 2)) / log_delta
    # x = sin^(2n)(pi/2 - theta) = cos^(2n)(theta), kept in log form
    log_x = 2 * n * math.log(math.cos(theta))
    root = math.sqrt(-math.expm1(log_x)) if log_x > -745 else 1.0
    if branch == "plus":
        second = math.log1p(root) / (2 * n * log_delta)
    else:
        second = (log_x - math.log1p(root)) / (2 * n * log_delta)
    return first + second


# ---------------------------------------------------------------------------
# Instances and sweep records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    """A pre-solved problem instance."""

    graph_id: str
    graph: Graph
    solution: SolutionPair
    seed: int


@dataclass(frozen=True)
class SweepRecord:
    """One (instance, alpha, d, p, method) optimization outcome."""

    graph_id: str
    n: int
    alpha: float
    d: int
    p: int
    method: str
    seed: int
    fidelity: float
    objective_value: float
    d_hp: int
    converged: bool
    runtime_ms: int


@dataclass(frozen=True)
class TheoryPoint:
    """One evaluated theory-curve point."""

    n: int
    alpha: float
    d: float
    value: float
    kind: str  # F0 | DC_PLUS | DC_MINUS


@dataclass
class WarmStartRun:
    """One warm-start stage of the QAOA+WS pipeline."""

    m_index: int
    x0: np.ndarray
    distribution: np.ndarray
    fidelity: float


def make_instances(n: int, count: int, seed: int) -> list[Instance]:
    """Generate count pre-solved w3R instances; deterministic given seed.

    Degenerate instances are kept (flagged via solution.degenerate) so that
    callers decide the exclusion policy.
    """
    instances = []
    for i in range(count):
        gseed = derive_seed(seed, 101, i)
        g = generate_w3r(n, gseed)
        instances.append(Instance(f"g{i:04d}", g, brute_force_solve(g), gseed))
    return instances


def filter_degenerate(instances: Sequence[Instance]) -> list[Instance]:
    """Drop instances whose optimum is degenerate (default sweep policy)."""
    return [inst for inst in instances if not inst.solution.degenerate]


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def cell_seed(master_seed: int, graph_index: int, alpha_index: int, d: int,
              p: int) -> int:
    """Counter-derived seed identifying one sweep cell."""
    return derive_seed(master_seed, graph_index, alpha_index, d, p)


def optimize_cell(spec: AnsatzSpec, prob: IsingProblem, cfg: OptimizerConfig,
                  opt_seed: int, method: str) -> OptResult:
    """Run one cell's optimizer: 'ri' multistart or full-depth 'interp'."""
    if method == "ri":
        return run_ri(spec, prob, cfg, opt_seed)
    if method == "interp":
        return run_interp(spec, prob, spec.p, cfg, opt_seed)[-1]
    raise ValueError(f"unknown method {method!r}")


def _run_cell(args) -> SweepRecord:
    (instance, graph_index, alpha, alpha_index, d, p, cfg, master_seed,
     method_override) = args
    seed = cell_seed(master_seed, graph_index, alpha_index, d, p)
    prob = ising_from_graph(instance.graph)
    if alpha == 0:
        spec = AnsatzSpec(0.0, p, None)
        method = method_override or select_method(0.0, p)
    else:
        x0 = flip_bits(instance.solution.solution, d, derive_seed(seed, 2))
        spec = AnsatzSpec(alpha, p, tuple(int(b) for b in x0))
        method = method_override or select_method(alpha, p, d)
    start = time.perf_counter()
    result = optimize_cell(spec, prob, cfg, derive_seed(seed, 1), method)
    state = build_state(spec, result.params, prob)
    fid = fidelity(state, instance.solution)
    d_hp = pair_distance(highest_probability_string(probabilities(state)),
                         instance.solution)
    runtime_ms = int(round((time.perf_counter() - start) * 1000))
    return SweepRecord(instance.graph_id, instance.graph.n, alpha, d, p,
                       method, seed, fid, result.objective_value, d_hp,
                       result.converged, runtime_ms)


def run_ws_sweep(instances: Sequence[Instance], alphas: Sequence[float],
                 ds: Sequence[int], ps: Sequence[int], cfg: OptimizerConfig,
                 seed: int, method: str = "auto",
                 workers: int | None = None) -> list[SweepRecord]:
    """Optimize every (instance, alpha, d, p) cell and collect records.

    alpha = 0 cells are plain QAOA baselines (d only labels the grid cell).
    Per-cell seeds derive from the master seed and the cell coordinates, so
    any single cell can be reproduced in isolation and the result does not
    depend on the worker count. Optimizer non-convergence is recorded, not
    raised.
    """
    method_override = None if method == "auto" else method
    jobs = [(inst, gi, alpha, ai, d, p, cfg, seed, method_override)
            for gi, inst in enumerate(instances)
            for ai, alpha in enumerate(alphas)
            for d in ds
            for p in ps]
    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_cell, jobs, chunksize=1))
    else:
        records = [_run_cell(job) for job in jobs]
    records.sort(key=lambda r: (r.graph_id, r.alpha, r.d, r.p))
    return records


def estimate_dc(records: Iterable[SweepRecord]) -> int:
    """Largest d whose mean warm-start fidelity beats the plain-QAOA mean.

    Expects records for a single (n, p): an alpha = 0 baseline set plus one
    nonzero alpha swept over d. Returns 0 when no d beats the baseline.
    """
    records = list(records)
    ns = {r.n for r in records}
    ps = {r.p for r in records}
    if len(ns) != 1 or len(ps) != 1:
        raise ValueError(f"records must share one (n, p), got n={ns}, p={ps}")
    baseline = [r.fidelity for r in records if r.alpha == 0]
    if not baseline:
        raise ValueError("missing alpha=0 baseline records")
    ws_alphas = {r.alpha for r in records if r.alpha != 0}
    if len(ws_alphas) != 1:
        raise ValueError(f"need exactly one nonzero alpha, got {ws_alphas}")
    baseline_mean = float(np.mean(baseline))
    by_d: dict[int, list[float]] = {}
    for r in records:
        if r.alpha != 0:
            by_d.setdefault(r.d, []).append(r.fidelity)
    dc = 0
    for d, fids in by_d.items():
        if float(np.mean(fids)) > baseline_mean:
            dc = max(dc, d)
    return dc


def highest_probability_string(dist: np.ndarray) -> np.ndarray:
    """Assignment of the most probable basis state; ties take the smallest index."""
    dist = np.asarray(dist)
    n = int(round(math.log2(len(dist))))
    if 1 << n != len(dist):
        raise ValueError(f"distribution length {len(dist)} is not a power of 2")
    return index_to_assignment(int(np.argmax(dist)), n)


def average_distributions(ds: Sequence[np.ndarray]) -> np.ndarray:
    """Element-wise mean of equal-length probability distributions."""
    if len(ds) == 0:
        raise ValueError("need at least one distribution")
    lengths = {len(d) for d in ds}
    if len(lengths) != 1:
        raise ValueError(f"distributions must share one length, got {lengths}")
    return np.mean(np.stack(ds), axis=0)


# ---------------------------------------------------------------------------
# QAOA + warm-start pipeline
# ---------------------------------------------------------------------------

def qaoa_plus_ws(graph: Graph, p: int, M: int, alpha: float,
                 cfg: OptimizerConfig, seed: int, *,
                 solution: SolutionPair | None = None, graph_index: int = 0,
                 drop_policy: str = "refill"
                 ) -> tuple[np.ndarray, float, list[WarmStartRun]]:
    """Warm-start runs seeded by the strings plain QAOA ranks highest.

    Stage 1 optimizes plain QAOA at depth p. Stage 2 ranks basis strings by
    probability (ties toward the smaller index) and excludes the exact
    solution pair; with drop_policy="refill" the next-ranked strings keep M
    warm starts, with "shrink" the excluded slots are simply dropped. Stage 3
    optimizes one warm-start circuit per selected string. Returns the mean of
    the M distributions, the mean of the M fidelities, and the per-run data.

    Stage-1 seeding matches an alpha = 0 sweep cell at (alpha_index=0, d=0),
    so the baseline coincides with run_ws_sweep on the same master seed.
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    if drop_policy not in ("refill", "shrink"):
        raise ValueError(f"drop_policy must be 'refill' or 'shrink', got {drop_policy!r}")
    n = graph.n
    if M > (1 << n) - 2:
        raise ValueError(f"M={M} exceeds the {2 ** n - 2} non-solution strings")
    sol = solution if solution is not None else brute_force_solve(graph)
    prob = ising_from_graph(graph)

    base_seed = cell_seed(seed, graph_index, 0, 0, p)
    base_spec = AnsatzSpec(0.0, p, None)
    base_result = optimize_cell(base_spec, prob, cfg, derive_seed(base_seed, 1),
                                select_method(0.0, p))
    base_dist = probabilities(build_state(base_spec, base_result.params, prob))

    k_sol = assignment_to_index(sol.solution)
    k_comp = assignment_to_index(complement(sol.solution))
    ranking = np.argsort(-base_dist, kind="stable")
    if drop_policy == "refill":
        chosen = [int(k) for k in ranking if k != k_sol and k != k_comp][:M]
    else:
        chosen = [int(k) for k in ranking[:M] if k != k_sol and k != k_comp]
        if not chosen:
            raise ValueError("all top-M strings were exact solutions")

    runs = []
    for m_index, k in enumerate(chosen):
        x0 = index_to_assignment(k, n)
        spec = AnsatzSpec(alpha, p, tuple(int(b) for b in x0))
        d = pair_distance(x0, sol)
        ws_seed = derive_seed(seed, graph_index, p, m_index, 7)
        result = optimize_cell(spec, prob, cfg, ws_seed,
                               select_method(alpha, p, d))
        state = build_state(spec, result.params, prob)
        runs.append(WarmStartRun(m_index, x0, probabilities(state),
                                 fidelity(state, sol)))
    averaged = average_distributions([r.distribution for r in runs])
    mean_fidelity = float(np.mean([r.fidelity for r in runs]))
    return averaged, mean_fidelity, runs
