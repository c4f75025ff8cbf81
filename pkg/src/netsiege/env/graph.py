"""Random network generation and per-node state.

The network is an undirected graph with no isolated vertices. Edge count is
driven by a connectivity parameter in (0, 1] interpreted as the fraction of
all possible edges, rounded half-up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Make Node Safe semantics put a hard floor under vulnerability.
VULN_FLOOR = 0.01


class InvalidConfigError(ValueError):
    """Environment parameters cannot produce a valid network."""


def round_half_up(x: float) -> int:
    # builtin round() is banker's rounding; edge counts need 0.5 -> 1
    return int(math.floor(x + 0.5))


@dataclass
class NodeState:
    """One machine: exploitable vulnerability, true compromise, visible alert."""

    vulnerability: float
    true_compromise: bool = False
    visible_alert: bool = False
    initial_vulnerability: float | None = None

    def __post_init__(self) -> None:
        if self.initial_vulnerability is None:
            self.initial_vulnerability = self.vulnerability

    def reset(self) -> None:
        """Return the node to its pristine state (Restore semantics)."""
        self.vulnerability = self.initial_vulnerability
        self.true_compromise = False
        self.visible_alert = False


@dataclass
class NetworkGraph:
    """Undirected graph over NodeState objects plus the attacker's entry point.

    Edges are stored as (u, v) tuples with u < v. Topology is immutable after
    generation; adjacency lists are precomputed for cheap neighbor queries.
    """

    nodes: list[NodeState]
    edges: set[tuple[int, int]]
    attacker_entry: int
    _adjacency: list[tuple[int, ...]] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        n = len(self.nodes)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            if u == v:
                raise InvalidConfigError(f"self-loop on node {u}")
            if not (0 <= u < v < n):
                raise InvalidConfigError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].append(v)
            adj[v].append(u)
        if not (0 <= self.attacker_entry < n):
            raise InvalidConfigError(
                f"attacker_entry {self.attacker_entry} out of range for n={n}"
            )
        self._adjacency = [tuple(sorted(neigh)) for neigh in adj]

    @property
    def n(self) -> int:
        return len(self.nodes)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adjacency[v]

    def adjacency_flat(self) -> np.ndarray:
        """Upper-triangle adjacency (i < j, i-major order) as a 0/1 float vector."""
        n = self.n
        out = np.zeros(n * (n - 1) // 2, dtype=np.float64)
        idx = 0
        for i in range(n):
            for j in range(i + 1, n):
                if (i, j) in self.edges:
                    out[idx] = 1.0
                idx += 1
        return out


def _prufer_tree(n: int, rng: np.random.Generator) -> set[tuple[int, int]]:
    """Uniform random labeled tree on n nodes via Prufer decoding."""
    if n == 2:
        return {(0, 1)}
    seq = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, dtype=np.int64)
    for s in seq:
        degree[s] += 1
    edges: set[tuple[int, int]] = set()
    leaves = [i for i in range(n) if degree[i] == 1]
    import heapq

    heapq.heapify(leaves)
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.add((min(leaf, int(s)), max(leaf, int(s))))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, int(s))
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.add((min(u, v), max(u, v)))
    return edges


def generate_network(
    n_nodes: int,
    connectivity: float,
    rng_seed,
    vuln_range: tuple[float, float] = (0.2, 0.8),
) -> NetworkGraph:
    """Build a random network with round_half_up(connectivity * n(n-1)/2) edges.

    Every node ends up with at least one edge. When the edge budget covers a
    spanning tree we lay one down first (uniform over labeled trees) and add
    the remaining edges uniformly without replacement; otherwise a random
    matching covers all nodes before extras are added. Too few edges to touch
    every vertex raises InvalidConfigError.

    rng_seed may be anything np.random.default_rng accepts.
    """
    if n_nodes < 2:
        raise InvalidConfigError(f"need at least 2 nodes, got {n_nodes}")
    if not (0.0 < connectivity <= 1.0):
        raise InvalidConfigError(f"connectivity must be in (0, 1], got {connectivity}")
    lo, hi = vuln_range
    if not (0.0 <= lo <= hi <= 1.0):
        raise InvalidConfigError(f"vulnerability range must satisfy 0 <= lo <= hi <= 1, got {vuln_range}")

    max_edges = n_nodes * (n_nodes - 1) // 2
    m = round_half_up(connectivity * max_edges)
    min_cover = math.ceil(n_nodes / 2)
    if m < min_cover:
        raise InvalidConfigError(
            f"connectivity {connectivity} yields {m} edges; "
            f"{min_cover} needed so no node is isolated at n={n_nodes}"
        )

    rng = np.random.default_rng(rng_seed)
    if m >= n_nodes - 1:
        edges = _prufer_tree(n_nodes, rng)
    else:
        # Not enough budget for a tree: cover every vertex with a matching.
        perm = rng.permutation(n_nodes)
        edges = set()
        for i in range(0, n_nodes - 1, 2):
            u, v = int(perm[i]), int(perm[i + 1])
            edges.add((min(u, v), max(u, v)))
        if n_nodes % 2 == 1:
            last = int(perm[-1])
            other = int(perm[rng.integers(0, n_nodes - 1)])
            edges.add((min(last, other), max(last, other)))

    if len(edges) > m:
        raise InvalidConfigError(f"internal: cover used {len(edges)} edges, budget {m}")
    remaining = [
        (i, j)
        for i in range(n_nodes)
        for j in range(i + 1, n_nodes)
        if (i, j) not in edges
    ]
    extra = m - len(edges)
    if extra > 0:
        picks = rng.choice(len(remaining), size=extra, replace=False)
        for k in picks:
            edges.add(remaining[int(k)])

    vulns = rng.uniform(lo, hi, size=n_nodes)
    nodes = [NodeState(vulnerability=float(v)) for v in vulns]
    entry = int(rng.integers(0, n_nodes))
    return NetworkGraph(nodes=nodes, edges=edges, attacker_entry=entry)
