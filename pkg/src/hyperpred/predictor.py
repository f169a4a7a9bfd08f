"""Generative hyperedge prediction and candidate-set ranking.

The generative predictor grows one hyperedge at a time:

1. sample the size of the new hyperedge from the (additively smoothed)
   distribution of observed hyperedge sizes;
2. pick the first member by preferential attachment, i.e. proportional to
   weighted node degree;
3. repeatedly score every outside node by its mean pairwise similarity to
   the current members (:func:`attachment_scores`) and sample the next
   member proportionally, until the target size is reached.

The training hypergraph and score matrix stay frozen throughout; draws
within a prediction set are independent, each on its own derived RNG
stream keyed by (seed, draw index), so a set of predictions is
reproducible draw-by-draw and could be computed in any order.

Categorical draws use cumulative-weight inversion and consume exactly one
uniform variate each, which keeps seeded runs portable across any
implementation using the same bit generator (PCG64 here).

The candidate-set variant does no sampling at all: it scores each supplied
candidate hyperedge by the mean of its pairwise similarities and ranks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import Hyperedge, Hypergraph
from .rng import derive_rng
from .similarity import ScoreMatrix, score_matrix

__all__ = [
    "DegreeDistribution",
    "fit_degree_distribution",
    "attachment_scores",
    "sample_hyperedge",
    "PredictionConfig",
    "predict_set",
    "predict",
    "CandidateScore",
    "hyperedge_score",
    "rank_candidates",
    "generate_distractors",
]

_MAX_SIZE_RESAMPLES = 100


class DegreeDistribution:
    """Smoothed categorical distribution over hyperedge sizes.

    prob(d) = (count(d) + alpha) / (m + alpha * |support|) over a
    contiguous integer support, so any support size keeps a fail-safe
    positive probability whenever alpha > 0.
    """

    def __init__(self, min_size: int, max_size: int, probs: np.ndarray, smoothing_alpha: float):
        if min_size < 2:
            raise ValueError("hyperedge sizes below 2 are not predictable")
        if max_size < min_size:
            raise ValueError("empty size support")
        probs = np.asarray(probs, dtype=np.float64)
        if probs.shape != (max_size - min_size + 1,):
            raise ValueError("probability vector does not match the support")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, expected 1")
        self.min_size = min_size
        self.max_size = max_size
        self.probs = probs
        self.smoothing_alpha = float(smoothing_alpha)
        self._cum = np.cumsum(probs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(range(self.min_size, self.max_size + 1))

    def prob_of(self, size: int) -> float:
        if self.min_size <= size <= self.max_size:
            return float(self.probs[size - self.min_size])
        return 0.0

    def sample(self, rng: np.random.Generator) -> int:
        """Draw one size; consumes exactly one uniform variate."""
        u = rng.random()
        idx = int(np.searchsorted(self._cum, u * self._cum[-1], side="right"))
        idx = min(idx, self.probs.size - 1)
        while idx > 0 and self.probs[idx] == 0.0:
            idx -= 1
        return self.min_size + idx

    def __repr__(self) -> str:
        return (f"DegreeDistribution(support=[{self.min_size}, {self.max_size}], "
                f"alpha={self.smoothing_alpha})")


def fit_degree_distribution(g: Hypergraph, alpha: float = 1.0,
                            support: tuple[int, int] | None = None) -> DegreeDistribution:
    """Fit the smoothed hyperedge size distribution of a hypergraph.

    The default support runs from 2 to one past the largest observed size,
    the minimal extension that leaves room for unseen cardinalities.  An
    explicit support must cover every observed size.
    """
    if alpha < 0:
        raise ValueError(f"smoothing alpha must be nonnegative, got {alpha}")
    counts = Counter(len(e) for e in g.edges)
    observed_min, observed_max = min(counts), max(counts)
    if support is None:
        lo, hi = 2, observed_max + 1
    else:
        lo, hi = int(support[0]), int(support[1])
        if lo > observed_min or hi < observed_max:
            raise ValueError(
                f"support [{lo}, {hi}] does not cover observed sizes "
                f"[{observed_min}, {observed_max}]")
    width = hi - lo + 1
    probs = np.array([(counts.get(d, 0) + alpha) for d in range(lo, hi + 1)], dtype=np.float64)
    probs /= g.m + alpha * width
    return DegreeDistribution(lo, hi, probs, alpha)


def attachment_scores(score: ScoreMatrix, members: Iterable[int],
                      candidates: Iterable[int] | None = None) -> dict[int, float]:
    """Mean similarity between each candidate node and a partial hyperedge.

    The score of candidate x is the average of score(x, y) over the current
    members y.  Members themselves are not scorable; candidates defaults to
    every other node.
    """
    member_list = sorted({int(v) for v in members})
    if not member_list:
        raise ValueError("the partial hyperedge must contain at least one node")
    member_set = set(member_list)
    if candidates is None:
        candidate_list = [v for v in range(score.n) if v not in member_set]
    else:
        candidate_list = sorted({int(v) for v in candidates})
        overlap = member_set.intersection(candidate_list)
        if overlap:
            raise ValueError(f"candidates overlap the hyperedge members: {sorted(overlap)}")
    acc = np.zeros(score.n, dtype=np.float64)
    for y in member_list:
        idx, vals = score.row(y)
        acc[idx] += vals
    inv = 1.0 / len(member_list)
    return {x: acc[x] * inv for x in candidate_list}


def _categorical(rng: np.random.Generator, cum: np.ndarray, weights: np.ndarray) -> int:
    # One uniform variate per draw; zero-weight entries are unreachable.
    u = rng.random()
    idx = int(np.searchsorted(cum, u * cum[-1], side="right"))
    idx = min(idx, weights.size - 1)
    while idx > 0 and weights[idx] == 0.0:
        idx -= 1
    return idx


def _uniform_member(rng: np.random.Generator, pool: np.ndarray) -> int:
    u = rng.random()
    return int(pool[min(int(u * pool.size), pool.size - 1)])


def sample_hyperedge(g: Hypergraph, score: ScoreMatrix, hdd: DegreeDistribution,
                     rng: np.random.Generator) -> Hyperedge:
    """Grow one predicted hyperedge against a frozen training hypergraph.

    Falls back to a uniform draw over the remaining nodes at any growth
    step where every attachment score is zero (disconnected regions), so
    the procedure always terminates with the sampled number of distinct
    nodes.  A sampled size larger than the node count is re-drawn a
    bounded number of times before giving up.
    """
    if score.n != g.n:
        raise ValueError("score matrix and hypergraph disagree on node count")
    for _ in range(_MAX_SIZE_RESAMPLES):
        d = hdd.sample(rng)
        if d <= g.n:
            break
    else:
        raise RuntimeError(
            f"could not sample a hyperedge size <= {g.n} nodes from support "
            f"[{hdd.min_size}, {hdd.max_size}] after {_MAX_SIZE_RESAMPLES} tries")

    degree = g.node_degree
    first = _categorical(rng, np.cumsum(degree), degree)
    members = [first]
    in_edge = np.zeros(g.n, dtype=bool)
    in_edge[first] = True

    acc = np.zeros(g.n, dtype=np.float64)
    idx, vals = score.row(first)
    acc[idx] += vals

    while len(members) < d:
        weights = np.where(in_edge, 0.0, acc)
        cum = np.cumsum(weights)
        if cum[-1] > 0.0:
            nxt = _categorical(rng, cum, weights)
        else:
            nxt = _uniform_member(rng, np.flatnonzero(~in_edge))
        members.append(nxt)
        in_edge[nxt] = True
        idx, vals = score.row(nxt)
        acc[idx] += vals

    return Hyperedge(tuple(members))


@dataclass(frozen=True)
class PredictionConfig:
    """Settings for generating a set of hyperedge predictions."""

    num_predictions: int
    rng_seed: int = 0
    score_kind: str = "ra"
    alpha: float | None = None
    beta: float | None = None
    max_walk_len: int = 5
    smoothing_alpha: float = 1.0
    size_support: tuple[int, int] | None = None

    def __post_init__(self):
        if self.num_predictions < 1:
            raise ValueError("num_predictions must be at least 1")
        if self.smoothing_alpha < 0:
            raise ValueError("smoothing_alpha must be nonnegative")
        if self.size_support is not None and self.size_support[0] < 2:
            raise ValueError("minimum predictable hyperedge size is 2")


def predict_set(g: Hypergraph, score: ScoreMatrix, hdd: DegreeDistribution,
                config: PredictionConfig) -> list[Hyperedge]:
    """Draw ``config.num_predictions`` hyperedges independently.

    Every draw runs on its own stream derived from (rng_seed, draw index),
    so results are order-stable and reproducible per draw.  Duplicates,
    among predictions or against training hyperedges, are allowed; the
    evaluation report counts them.
    """
    out = []
    for i in range(config.num_predictions):
        out.append(sample_hyperedge(g, score, hdd, derive_rng(config.rng_seed, "draw", i)))
    return out


def predict(g: Hypergraph, config: PredictionConfig) -> list[Hyperedge]:
    """Convenience wrapper: fit the size distribution, build the score
    matrix named by the config, and draw the prediction set."""
    hdd = fit_degree_distribution(g, config.smoothing_alpha, config.size_support)
    score = score_matrix(g, config.score_kind, alpha=config.alpha,
                         beta=config.beta, max_walk_len=config.max_walk_len)
    return predict_set(g, score, hdd, config)


@dataclass(frozen=True)
class CandidateScore:
    hyperedge: Hyperedge
    score: float


def hyperedge_score(score: ScoreMatrix, candidate: Hyperedge) -> float:
    """Mean of the s*(s-1)/2 pairwise scores inside one candidate hyperedge.

    Unrealized pairs count as 0, so a candidate disjoint from the scored
    graph scores 0.
    """
    nodes = candidate.nodes
    s = len(nodes)
    if s < 2:
        raise ValueError(f"candidate {nodes} has fewer than 2 nodes")
    total = 0.0
    for i in range(s):
        for j in range(i + 1, s):
            total += score.get(nodes[i], nodes[j])
    return total * 2.0 / (s * (s - 1))


def rank_candidates(score: ScoreMatrix, candidates: Sequence[Hyperedge],
                    k: int | None = None) -> list[CandidateScore]:
    """Rank candidate hyperedges by mean pairwise similarity.

    The sort is stable and descending: ties keep first-seen input order.
    ``k`` trims the result to the top k; the default returns the full
    ranking.
    """
    if k is not None and k > len(candidates):
        raise ValueError(f"k={k} exceeds the {len(candidates)} candidates")
    scored = [CandidateScore(cand, hyperedge_score(score, cand)) for cand in candidates]
    ranked = sorted(scored, key=lambda cs: -cs.score)
    return ranked if k is None else ranked[:k]


def generate_distractors(g: Hypergraph, hdd: DegreeDistribution, count: int,
                         forbidden: Iterable[Hyperedge | frozenset[int]] = (),
                         rng: np.random.Generator | None = None,
                         max_tries_per_edge: int = 1000) -> list[Hyperedge]:
    """Random non-edges whose sizes follow the hyperedge size distribution.

    Each distractor draws a size from ``hdd`` and then that many distinct
    nodes uniformly at random; any draw whose node set equals a forbidden
    hyperedge (typically training plus held-out edges) is re-drawn.
    Distractors may repeat among themselves.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if rng is None:
        raise ValueError("generate_distractors needs an explicit RNG for reproducibility")
    banned = {e.node_set if isinstance(e, Hyperedge) else frozenset(e) for e in forbidden}
    out: list[Hyperedge] = []
    for _ in range(count):
        for _ in range(max_tries_per_edge):
            d = hdd.sample(rng)
            if d > g.n:
                continue
            nodes = rng.choice(g.n, size=d, replace=False)
            if frozenset(int(v) for v in nodes) not in banned:
                out.append(Hyperedge(tuple(int(v) for v in nodes)))
                break
        else:
            raise RuntimeError(
                f"gave up generating distractor {len(out) + 1}/{count} after "
                f"{max_tries_per_edge} tries; the graph has {g.n} nodes and "
                f"{len(banned)} forbidden node sets, leaving too few free combinations")
    return out
