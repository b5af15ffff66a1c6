"""Independent ground truth: exhaustive state enumeration and Monte Carlo lifetimes."""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import RatPoly
from .architectures import Graph
from .errors import TooManyEdges

__all__ = [
    "McEstimate",
    "brute_force_polynomial",
    "connected_state_counts",
    "lifetime_sample",
    "lifetime_reference",
    "sample_edge_lifetimes",
    "bottleneck_lifetimes",
    "mc_moments",
    "MAX_EDGES",
]

MAX_EDGES = 22
CHUNK = 65536


@dataclass(frozen=True)
class McEstimate:
    m: int
    mean: float
    std_error: float
    n_samples: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "mean": self.mean,
            "std_error": self.std_error,
            "n_samples": self.n_samples,
            "seed": self.seed,
        }


# -- exhaustive enumeration -------------------------------------------------------


def connected_state_counts(g: Graph, chunk_bits: int = 20) -> list[int]:
    """counts[j] = number of edge subsets with j working edges that connect s and t.

    All 2**E subsets are processed as bitmasks in numpy arrays; reachability
    from the source is propagated edge by edge until it stops changing.
    """
    E = g.edge_count
    if E > MAX_EDGES:
        raise TooManyEdges(f"{E} edges > {MAX_EDGES}")
    counts = np.zeros(E + 1, dtype=np.int64)
    total = 1 << E
    step = 1 << min(chunk_bits, E)
    dtype = np.uint64
    src_bit = dtype(1 << g.source)
    tgt_bit = dtype(1 << g.target)
    for start in range(0, total, step):
        states = np.arange(start, min(start + step, total), dtype=dtype)
        up = [((states >> dtype(e)) & dtype(1)).astype(bool) for e in range(E)]
        reach = np.full(states.shape, src_bit, dtype=dtype)
        while True:
            before = reach.copy()
            for e, (u, v) in enumerate(g.edges):
                bu, bv = dtype(1 << u), dtype(1 << v)
                hit = up[e] & (((reach & bu) != 0) | ((reach & bv) != 0))
                reach[hit] |= bu | bv
            if np.array_equal(before, reach):
                break
        ok = (reach & tgt_bit) != 0
        pop = np.zeros(states.shape, dtype=np.int64)
        for e in range(E):
            pop += up[e]
        counts += np.bincount(pop[ok], minlength=E + 1)
    return [int(c) for c in counts]


def brute_force_polynomial(g: Graph) -> RatPoly:
    """Exact two-terminal reliability sum over all 2**E edge states."""
    E = g.edge_count
    p = RatPoly.x("p")
    q = 1 - p
    total = RatPoly([], "p")
    for j, c in enumerate(connected_state_counts(g)):
        if c:
            total = total + c * p**j * q ** (E - j)
    return total


# -- lifetimes ------------------------------------------------------------------------


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def lifetime_sample(g: Graph, edge_lifetimes: Sequence[float]) -> float:
    """System lifetime = widest (maximin) s-t path through the edge lifetimes.

    Edges enter a union-find in order of decreasing lifetime; the lifetime of
    the edge that first merges s and t is returned.
    """
    parent = list(range(g.node_count))
    size = [1] * g.node_count
    order = sorted(range(g.edge_count), key=lambda e: -edge_lifetimes[e])
    for e in order:
        u, v = g.edges[e]
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
        if _find(parent, g.source) == _find(parent, g.target):
            return float(edge_lifetimes[e])
    return 0.0


def _connected_with(g: Graph, alive: Sequence[bool]) -> bool:
    adj: list[list[int]] = [[] for _ in range(g.node_count)]
    for e, (u, v) in enumerate(g.edges):
        if alive[e]:
            adj[u].append(v)
            adj[v].append(u)
    seen = {g.source}
    todo = deque([g.source])
    while todo:
        x = todo.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return g.target in seen


def lifetime_reference(g: Graph, edge_lifetimes: Sequence[float]) -> float:
    """Quadratic reference: latest failure time at which s and t are still connected."""
    best = 0.0
    for t in sorted(set(edge_lifetimes)):
        if _connected_with(g, [x >= t for x in edge_lifetimes]):
            best = t
    return float(best)


def sample_edge_lifetimes(rng: np.random.Generator, size: tuple[int, int], model) -> np.ndarray:
    """Edge lifetimes for ``model`` (an object with ``sample(rng, size)``) or a rate."""
    if hasattr(model, "sample"):
        return model.sample(rng, size)
    return rng.exponential(1.0 / float(model), size=size)


def bottleneck_lifetimes(g: Graph, lifetimes: np.ndarray) -> np.ndarray:
    """Vectorized widest-path value s -> t for each row of ``lifetimes`` (samples x edges).

    Max-min closure (Floyd-Warshall in the (max, min) semiring); equivalent
    to :func:`lifetime_sample` row by row.
    """
    S = lifetimes.shape[0]
    N = g.node_count
    W = np.zeros((S, N, N))
    for e, (u, v) in enumerate(g.edges):
        col = lifetimes[:, e]
        np.maximum(W[:, u, v], col, out=W[:, u, v])
        W[:, v, u] = W[:, u, v]
    for k in range(N):
        via = np.minimum(W[:, :, k : k + 1], W[:, k : k + 1, :])
        np.maximum(W, via, out=W)
    return W[:, g.source, g.target]


def _chunk_power_sums(g: Graph, model, m_max: int, seed_seq: np.random.SeedSequence, size: int) -> np.ndarray:
    rng = np.random.default_rng(seed_seq)
    life = bottleneck_lifetimes(g, sample_edge_lifetimes(rng, (size, g.edge_count), model))
    powers = np.vstack([life**m for m in range(1, m_max + 1)])
    # per-order sum and sum of squares (float64 accumulators are exact enough here)
    return np.concatenate([powers.sum(axis=1), (powers**2).sum(axis=1)])


def mc_moments(
    g: Graph,
    model=1.0,
    m_max: int = 1,
    n_samples: int = 100_000,
    seed: int = 0,
    workers: int = 1,
) -> list[McEstimate]:
    """Sample moments <T^m>, m = 1..m_max, of the system lifetime.

    Samples are drawn in fixed-size chunks whose RNG streams are spawned from
    ``seed``; the chunk layout never depends on ``workers``, so results are
    identical for any worker count.
    """
    if n_samples < 1000:
        raise ValueError("n_samples must be >= 1000")
    n_chunks = math.ceil(n_samples / CHUNK)
    sizes = [min(CHUNK, n_samples - i * CHUNK) for i in range(n_chunks)]
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    job: Callable[[int], np.ndarray] = lambda i: _chunk_power_sums(g, model, m_max, children[i], sizes[i])  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(n_chunks)))
    else:
        parts = [job(i) for i in range(n_chunks)]
    sums = np.sum(parts, axis=0)
    out = []
    for m in range(1, m_max + 1):
        s1, s2 = sums[m - 1], sums[m_max + m - 1]
        mean = s1 / n_samples
        var = max(s2 / n_samples - mean**2, 0.0) * n_samples / (n_samples - 1)
        out.append(McEstimate(m, float(mean), float(math.sqrt(var / n_samples)), n_samples, seed))
    return out
