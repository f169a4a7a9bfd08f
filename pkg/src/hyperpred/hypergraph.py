"""Sparse hypergraph container with degree bookkeeping and clique-style reductions.

A hypergraph is a set of nodes plus a list of weighted hyperedges, each
connecting an arbitrary number of nodes.  Node labels from the outside
world are mapped to dense integer ids at build time; everything downstream
works on the dense ids and maps back to labels only at serialization.

The two reductions exposed here return sparse pair -> value maps rather
than dense matrices: realized node pairs only, upper triangle (x < y).

* ``adjacency_clique``: every pair co-occurring in a hyperedge is connected
  with weight equal to the sum of the shared hyperedge weights.
* ``adjacency_ndp``: like the clique reduction but each hyperedge's weight
  is scaled by 1/(size - 1), so that every node's weighted degree in the
  reduced graph equals its hypergraph degree.

Hypergraphs are immutable after construction and safe for concurrent reads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Hyperedge",
    "Hypergraph",
    "build",
    "adjacency_clique",
    "adjacency_ndp",
    "restrict_to_largest_component",
]


@dataclass(frozen=True)
class Hyperedge:
    """A set of node ids with a positive weight and an optional timestamp.

    Equality and hashing use the node set only, which is exactly the
    identity evaluation matching needs; weight and timestamp are metadata.
    """

    nodes: tuple[int, ...]
    weight: float = field(default=1.0, compare=False)
    t: int | None = field(default=None, compare=False)

    def __post_init__(self):
        nodes = tuple(sorted({int(v) for v in self.nodes}))
        if not nodes:
            raise ValueError("hyperedge must contain at least one node")
        weight = float(self.weight)
        if not weight > 0 or not np.isfinite(weight):
            raise ValueError(f"hyperedge weight must be positive and finite, got {self.weight}")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "t", None if self.t is None else int(self.t))

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def node_set(self) -> frozenset[int]:
        return frozenset(self.nodes)


class Hypergraph:
    """Immutable hypergraph over a fixed node universe.

    Attributes
    ----------
    labels : tuple
        External label for each dense node id.
    edges : tuple[Hyperedge, ...]
        Hyperedges over dense node ids, every one with >= 2 distinct nodes.
    node_degree : ndarray (n,)
        Weighted degree d(v) = sum of w(e) over incident hyperedges.
    edge_degree : ndarray (m,)
        Hyperedge sizes.
    """

    def __init__(self, labels: Sequence, edges: Sequence[Hyperedge]):
        labels = tuple(labels)
        edges = tuple(edges)
        if len(set(labels)) != len(labels):
            raise ValueError("node labels must be distinct")
        if not edges:
            raise ValueError("hypergraph must contain at least one hyperedge")
        n = len(labels)
        for e in edges:
            if len(e) < 2:
                raise ValueError("hyperedges of size 1 carry no pairwise structure; drop them before construction")
            if e.nodes[0] < 0 or e.nodes[-1] >= n:
                raise ValueError(f"hyperedge {e.nodes} references node ids outside [0, {n})")

        self.labels = labels
        self.edges = edges
        self._label_index = {lab: i for i, lab in enumerate(labels)}

        node_edges: list[list[int]] = [[] for _ in range(n)]
        node_degree = np.zeros(n, dtype=np.float64)
        edge_degree = np.empty(len(edges), dtype=np.int64)
        for eid, e in enumerate(edges):
            edge_degree[eid] = len(e)
            for v in e.nodes:
                node_edges[v].append(eid)
                node_degree[v] += e.weight
        self._node_edges = tuple(tuple(lst) for lst in node_edges)
        node_degree.setflags(write=False)
        edge_degree.setflags(write=False)
        self.node_degree = node_degree
        self.edge_degree = edge_degree

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def id_of(self, label) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def label_of(self, v: int):
        self._check_node(v)
        return self.labels[v]

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"node id {v} outside [0, {self.n})")

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Ids of the hyperedges containing node v, in hyperedge-id order."""
        self._check_node(v)
        return self._node_edges[v]

    def neighbors(self, v: int) -> set[int]:
        """One-hop neighbors: nodes sharing at least one hyperedge with v."""
        self._check_node(v)
        out: set[int] = set()
        for eid in self._node_edges[v]:
            out.update(self.edges[eid].nodes)
        out.discard(v)
        return out

    def restricted_to_edges(self, edge_ids: Iterable[int]) -> "Hypergraph":
        """Hypergraph with the same node universe but only the given hyperedges.

        Nodes not covered by the kept hyperedges remain in the universe with
        degree zero; this is what train/test splitting needs so that ids stay
        comparable across the split.
        """
        picked = [self.edges[i] for i in edge_ids]
        return Hypergraph(self.labels, picked)

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m})"


def build(edges: Iterable[Sequence], weights: Sequence[float] | None = None,
          timestamps: Sequence[int | None] | None = None) -> Hypergraph:
    """Build a hypergraph from an edge list of node labels.

    Parameters
    ----------
    edges : iterable of label sequences
        One entry per hyperedge.  Duplicate labels within an entry are
        collapsed.  Entries that are left with a single node are dropped
        with a warning: they contribute nothing to any pairwise score and
        the degree-preserving reduction is undefined for them.
    weights : optional sequence of positive floats, defaults to all 1
    timestamps : optional sequence of ints (or None) per hyperedge

    Labels are assigned dense ids in first-seen order over the surviving
    hyperedges.  Duplicate hyperedges are kept as distinct weighted
    occurrences, equivalent to a single edge with summed weight.
    """
    raw = [tuple(e) for e in edges]
    if not raw:
        raise ValueError("edge list is empty")
    if weights is None:
        weights = [1.0] * len(raw)
    else:
        weights = [float(w) for w in weights]
    if timestamps is None:
        timestamps = [None] * len(raw)
    if len(weights) != len(raw) or len(timestamps) != len(raw):
        raise ValueError("weights/timestamps must align with the edge list")
    for w in weights:
        if not w > 0 or not np.isfinite(w):
            raise ValueError(f"hyperedge weights must be positive and finite, got {w}")

    kept: list[tuple[tuple, float, int | None]] = []
    dropped = 0
    for labs, w, t in zip(raw, weights, timestamps):
        uniq = tuple(dict.fromkeys(labs))
        if len(uniq) < 2:
            dropped += 1
            continue
        kept.append((uniq, w, t))
    if dropped:
        warnings.warn(f"dropped {dropped} hyperedge(s) with fewer than 2 distinct nodes", stacklevel=2)
    if not kept:
        raise ValueError("no hyperedges with >= 2 distinct nodes remain")

    index: dict = {}
    for labs, _, _ in kept:
        for lab in labs:
            if lab not in index:
                index[lab] = len(index)
    labels = tuple(index.keys())
    hyperedges = [Hyperedge(tuple(index[lab] for lab in labs), w, t) for labs, w, t in kept]
    return Hypergraph(labels, hyperedges)


def adjacency_clique(g: Hypergraph) -> dict[tuple[int, int], float]:
    """Clique-expansion adjacency as a sparse pair map.

    Entry (x, y) with x < y is the total weight of hyperedges containing
    both nodes.  Diagonal entries are never materialized.  Accumulation
    runs in hyperedge-id order so repeated calls are bit-identical.
    """
    out: dict[tuple[int, int], float] = {}
    for e in g.edges:
        w = e.weight
        nodes = e.nodes
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                key = (nodes[i], nodes[j])
                out[key] = out.get(key, 0.0) + w
    return out


def adjacency_ndp(g: Hypergraph) -> dict[tuple[int, int], float]:
    """Node-degree-preserving reduction as a sparse pair map.

    Each hyperedge contributes w(e)/(size(e)-1) to each of its node pairs,
    which makes every row sum equal to the node's hypergraph degree.
    """
    out: dict[tuple[int, int], float] = {}
    for e in g.edges:
        w = e.weight / (len(e) - 1)
        nodes = e.nodes
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                key = (nodes[i], nodes[j])
                out[key] = out.get(key, 0.0) + w
    return out


def restrict_to_largest_component(g: Hypergraph) -> Hypergraph:
    """Rebuild the hypergraph on its largest connected component.

    Connectivity is through shared nodes; every hyperedge lies entirely
    inside one component.  Ties between equal-sized components go to the
    one discovered first in node-id order.  Surviving labels keep their
    relative order and are re-indexed densely.
    """
    seen = np.zeros(g.n, dtype=bool)
    best: list[int] = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        component = []
        while stack:
            v = stack.pop()
            component.append(v)
            for eid in g.incident_edges(v):
                for u in g.edges[eid].nodes:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
        if len(component) > len(best):
            best = component

    member = np.zeros(g.n, dtype=bool)
    member[best] = True
    old_ids = [v for v in range(g.n) if member[v]]
    remap = {old: new for new, old in enumerate(old_ids)}
    labels = tuple(g.labels[v] for v in old_ids)
    edges = [
        Hyperedge(tuple(remap[v] for v in e.nodes), e.weight, e.t)
        for e in g.edges
        if member[e.nodes[0]]
    ]
    return Hypergraph(labels, edges)
