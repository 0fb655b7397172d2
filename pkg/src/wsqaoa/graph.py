"""Problem instances for weighted MAX-CUT.

Weighted 3-regular (w3R) graph generation, cut evaluation, the Ising
encoding, exact brute-force solutions, and construction of approximate
solutions at a controlled Hamming distance.

Assignments are numpy uint8 arrays of 0/1 values; basis index k encodes an
assignment little-endian (bit i of k is x_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

Edge = tuple[int, int, float]

_BRUTE_FORCE_MAX_N = 30
_BRUTE_FORCE_CHUNK = 1 << 20


@dataclass(frozen=True)
class Graph:
    """Weighted undirected graph on vertices 0..n-1, edges as (i, j, w) with i < j."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen = set()
        for i, j, _ in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i}, {j}) violates 0 <= i < j < n={self.n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg


@dataclass(frozen=True)
class IsingProblem:
    """ZZ couplings J = w/2 per edge plus the constant offset D = -sum(w)/2."""

    n: int
    couplings: tuple[tuple[int, int, float], ...]
    offset: float


@dataclass(frozen=True)
class SolutionPair:
    """Exact MAX-CUT optimum: canonical assignment, cut value, degeneracy flag.

    The canonical assignment has x_0 = 0; its complement attains the same
    cut. degenerate is True when a second, non-complement pair ties.
    """

    solution: np.ndarray
    max_cut: float
    degenerate: bool


def as_assignment(bits: Sequence[int] | np.ndarray) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1 or not np.all(arr <= 1):
        raise ValueError("assignment must be a 1-D sequence of 0/1 values")
    return arr


def complement(x: Sequence[int] | np.ndarray) -> np.ndarray:
    """Flip every bit."""
    return (1 - as_assignment(x)).astype(np.uint8)


def assignment_to_index(x: Sequence[int] | np.ndarray) -> int:
    """Little-endian basis index: bit i of the result is x_i."""
    arr = as_assignment(x)
    return int(np.sum(arr.astype(np.uint64) << np.arange(len(arr), dtype=np.uint64)))


def index_to_assignment(k: int, n: int) -> np.ndarray:
    """Inverse of assignment_to_index."""
    return ((k >> np.arange(n)) & 1).astype(np.uint8)


def generate_w3r(n: int, seed: int) -> Graph:
    """Sample a weighted 3-regular graph via the pairing model.

    Stubs (3 per vertex) are randomly paired; pairings with self-loops or
    multi-edges are rejected and redrawn. Weights are i.i.d. uniform on
    [0, 1). Deterministic given seed.
    """
    if n < 4 or n % 2 != 0:
        raise ValueError(f"3-regular graphs need even n >= 4, got {n}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), 3)
    for _ in range(100_000):
        perm = rng.permutation(stubs)
        a = np.minimum(perm[0::2], perm[1::2])
        b = np.maximum(perm[0::2], perm[1::2])
        if np.any(a == b):
            continue
        pairs = set(zip(a.tolist(), b.tolist()))
        if len(pairs) < len(a):
            continue
        weights = rng.uniform(0.0, 1.0, size=len(a))
        edge_list = sorted(zip(a.tolist(), b.tolist()))
        return Graph(n, tuple((i, j, float(w)) for (i, j), w in zip(edge_list, weights)))
    raise RuntimeError(f"pairing model failed to produce a simple graph for n={n}")


def evaluate_cut(g: Graph, x: Sequence[int] | np.ndarray) -> float:
    """Total weight of edges cut by the assignment."""
    arr = as_assignment(x)
    if len(arr) != g.n:
        raise ValueError(f"assignment length {len(arr)} != n={g.n}")
    total = 0.0
    for i, j, w in g.edges:
        if arr[i] != arr[j]:
            total += w
    return total


def ising_from_graph(g: Graph) -> IsingProblem:
    """Encode MAX-CUT as ZZ couplings J = w/2 with offset D = -sum(w)/2."""
    couplings = tuple((i, j, w / 2.0) for i, j, w in g.edges)
    offset = -sum(w / 2.0 for _, _, w in g.edges)
    return IsingProblem(g.n, couplings, offset)


def ising_energy(p: IsingProblem, x: Sequence[int] | np.ndarray) -> float:
    """sum_ij J_ij z_i z_j with z = 1 - 2x; the offset is not added."""
    arr = as_assignment(x)
    if len(arr) != p.n:
        raise ValueError(f"assignment length {len(arr)} != n={p.n}")
    z = 1.0 - 2.0 * arr.astype(np.float64)
    total = 0.0
    for i, j, J in p.couplings:
        total += J * z[i] * z[j]
    return total


def _cut_values_for_indices(g: Graph, ks: np.ndarray) -> np.ndarray:
    vals = np.zeros(len(ks), dtype=np.float64)
    for i, j, w in g.edges:
        vals += w * (((ks >> np.uint64(i)) ^ (ks >> np.uint64(j))) & np.uint64(1))
    return vals


def brute_force_solve(g: Graph) -> SolutionPair:
    """Enumerate the 2^(n-1) assignments with x_0 = 0 and return the optimum.

    Ties beyond the complement pair set degenerate=True; the canonical
    representative is the lexicographically smallest maximizer.
    """
    if g.n > _BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {_BRUTE_FORCE_MAX_N}, got {g.n}")
    half = 1 << (g.n - 1)
    best_val = -np.inf
    best_indices: list[int] = []
    for start in range(0, half, _BRUTE_FORCE_CHUNK):
        stop = min(start + _BRUTE_FORCE_CHUNK, half)
        # x_0 = 0: enumerate bits 1..n-1, shifted left of the fixed bit 0
        ks = np.arange(start, stop, dtype=np.uint64) << np.uint64(1)
        vals = _cut_values_for_indices(g, ks)
        chunk_best = float(vals.max())
        if chunk_best > best_val:
            best_val = chunk_best
            best_indices = [int(k) for k in ks[vals == chunk_best]]
        elif chunk_best == best_val:
            best_indices.extend(int(k) for k in ks[vals == chunk_best])
    degenerate = len(best_indices) > 1
    solution = min(tuple(index_to_assignment(k, g.n)) for k in best_indices)
    return SolutionPair(np.array(solution, dtype=np.uint8), best_val, degenerate)


def flip_bits(x: Sequence[int] | np.ndarray, d: int, seed: int) -> np.ndarray:
    """Flip exactly d distinct uniformly chosen positions; deterministic given seed."""
    arr = as_assignment(x).copy()
    if not 0 <= d <= len(arr):
        raise ValueError(f"d={d} out of range [0, {len(arr)}]")
    if d > 0:
        rng = np.random.default_rng(seed)
        positions = rng.choice(len(arr), size=d, replace=False)
        arr[positions] = 1 - arr[positions]
    return arr


def hamming_distance(a: Sequence[int] | np.ndarray, b: Sequence[int] | np.ndarray) -> int:
    """Number of differing positions."""
    aa, bb = as_assignment(a), as_assignment(b)
    if len(aa) != len(bb):
        raise ValueError(f"length mismatch: {len(aa)} vs {len(bb)}")
    return int(np.count_nonzero(aa != bb))


def pair_distance(a: Sequence[int] | np.ndarray, sol: SolutionPair) -> int:
    """Hamming distance to the solution pair (min over solution and complement)."""
    d = hamming_distance(a, sol.solution)
    return min(d, len(sol.solution) - d)
