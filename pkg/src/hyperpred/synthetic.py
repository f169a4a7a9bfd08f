"""Planted-community synthetic hypergraphs for tests and benchmarks.

Nodes are split into near-equal communities.  Each hyperedge belongs to a
community: it samples a size uniformly from the configured range and its
nodes uniformly from that community, except that with probability
``noise`` the nodes come from the whole graph instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, build
from .rng import derive_rng

__all__ = ["SyntheticSpec", "generate_synthetic_edges", "synthetic_hypergraph"]


@dataclass(frozen=True)
class SyntheticSpec:
    num_nodes: int
    num_communities: int
    edges_per_community: int
    min_size: int = 2
    max_size: int = 4
    noise: float = 0.0

    def __post_init__(self):
        if self.num_nodes < 1 or self.num_communities < 1 or self.edges_per_community < 1:
            raise ValueError("node, community and edge counts must be positive")
        if self.num_communities > self.num_nodes:
            raise ValueError("more communities than nodes")
        if self.min_size < 2:
            raise ValueError("hyperedges below size 2 carry no structure")
        if self.max_size < self.min_size:
            raise ValueError("empty size range")
        if not 0.0 <= self.noise <= 1.0:
            raise ValueError(f"noise must lie in [0, 1], got {self.noise}")


def generate_synthetic_edges(spec: SyntheticSpec, seed: int = 0) -> list[list[str]]:
    """Hyperedges as lists of string node labels, deterministic per seed."""
    communities = np.array_split(np.arange(spec.num_nodes), spec.num_communities)
    smallest = min(len(c) for c in communities)
    if spec.max_size > smallest:
        raise ValueError(
            f"max hyperedge size {spec.max_size} exceeds the smallest community ({smallest} nodes)")
    rng = derive_rng(seed, "synthetic")
    edges: list[list[str]] = []
    for community in communities:
        for _ in range(spec.edges_per_community):
            size = int(rng.integers(spec.min_size, spec.max_size + 1))
            pool = np.arange(spec.num_nodes) if rng.random() < spec.noise else community
            nodes = rng.choice(pool, size=size, replace=False)
            edges.append([str(int(v)) for v in sorted(nodes)])
    return edges


def synthetic_hypergraph(spec: SyntheticSpec, seed: int = 0) -> Hypergraph:
    return build(generate_synthetic_edges(spec, seed))
