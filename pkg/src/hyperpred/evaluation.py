"""Held-out evaluation of hyperedge predictors.

The protocol: split the hyperedges into a training set and a missing set,
either by K-fold cross-validation (every hyperedge held out exactly once)
or by a temporal cut (train on earlier years, test on one later year).
Missing hyperedges containing a node with no one-hop neighbor in the
training set are unpredictable by any structural score and are pruned.

Two evaluation tracks per fold:

* generative - predict |missing| new hyperedges from the training graph
  and compare against the missing set with the symmetric best-match
  Average F1;
* chs (candidate ranking) - mix the missing hyperedges with 10x randomly
  generated distractors, rank all candidates by mean pairwise score, and
  report AUC (probability a missing candidate outranks a distractor, ties
  at 0.5) and precision in the top |missing|.

Several methods can run against the same split; distractors and candidate
order are shared across methods within a fold so that per-fold metric
differences are paired, and a two-sided paired t-test is reported for
every method pair.  Folds run on independent derived RNG streams, so
results are identical whether folds execute sequentially or in a thread
pool.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .hypergraph import Hyperedge, Hypergraph
from .predictor import (
    CandidateScore,
    PredictionConfig,
    fit_degree_distribution,
    generate_distractors,
    hyperedge_score,
    predict_set,
    rank_candidates,
)
from .rng import derive_rng, derive_seed
from .similarity import KATZ_BETA_GRID, score_matrix

__all__ = [
    "SplitPlan",
    "make_kfold",
    "make_temporal",
    "prune_missing",
    "average_f1",
    "auc",
    "precision_at_l",
    "paired_t_test",
    "MethodConfig",
    "EvalReport",
    "run_experiment",
]

_FALLBACK_KATZ_BETA = 0.05


@dataclass(frozen=True)
class SplitPlan:
    """Train/missing hyperedge-index splits, fixed up front for a run."""

    mode: str  # "kfold" | "temporal"
    seed: int
    folds: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    detail: dict = field(default_factory=dict, compare=False)


def make_kfold(g: Hypergraph, k: int, seed: int = 0) -> SplitPlan:
    """Randomly partition the hyperedges into k near-equal missing sets.

    Every hyperedge lands in exactly one missing set; the complement is
    the fold's training set.  Deterministic given the seed.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if k > g.m:
        raise ValueError(f"cannot make {k} folds from {g.m} hyperedges")
    perm = derive_rng(seed, "split").permutation(g.m)
    parts = np.array_split(perm, k)
    folds = []
    for i, part in enumerate(parts):
        test = tuple(sorted(int(j) for j in part))
        test_set = set(test)
        train = tuple(j for j in range(g.m) if j not in test_set)
        folds.append((train, test))
    return SplitPlan("kfold", seed, tuple(folds), {"k": k})


def make_temporal(g: Hypergraph, train_years: tuple[int, int], test_year: int) -> SplitPlan:
    """Single-fold split: train on hyperedges with timestamps inside
    ``train_years`` (inclusive), test on hyperedges of ``test_year``.

    Every hyperedge must carry a timestamp.
    """
    lo, hi = int(train_years[0]), int(train_years[1])
    if lo > hi:
        raise ValueError(f"empty training window [{lo}, {hi}]")
    missing_ts = sum(1 for e in g.edges if e.t is None)
    if missing_ts:
        raise ValueError(f"temporal split needs a timestamp on every hyperedge; "
                         f"{missing_ts} have none")
    train = tuple(i for i, e in enumerate(g.edges) if lo <= e.t <= hi)
    test = tuple(i for i, e in enumerate(g.edges) if e.t == test_year)
    if not train:
        raise ValueError(f"no hyperedges in training window [{lo}, {hi}]")
    if not test:
        raise ValueError(f"no hyperedges in test year {test_year}")
    return SplitPlan("temporal", 0, ((train, test),),
                     {"train_years": (lo, hi), "test_year": int(test_year)})


def prune_missing(train: Sequence[Hyperedge], missing: Sequence[Hyperedge]) -> list[Hyperedge]:
    """Drop missing hyperedges no structural method could ever predict.

    A missing hyperedge survives iff every one of its nodes has at least
    one one-hop neighbor in the training set, i.e. appears in some
    training hyperedge of size >= 2.
    """
    covered: set[int] = set()
    for e in train:
        if len(e) >= 2:
            covered.update(e.nodes)
    return [e for e in missing if all(v in covered for v in e.nodes)]


def _f1(a: frozenset[int], b: frozenset[int]) -> float:
    inter = len(a & b)
    if inter == 0:
        return 0.0
    return 2.0 * inter / (len(a) + len(b))


def average_f1(missing: Sequence[Hyperedge], predicted: Sequence[Hyperedge]) -> float:
    """Symmetric best-match F1 between two hyperedge sets.

    Mean over missing hyperedges of the best F1 against any prediction,
    averaged with the same quantity in the other direction.  The pairwise
    F1 reduces to 2|a & b| / (|a| + |b|).
    """
    if not missing or not predicted:
        raise ValueError("average_f1 needs nonempty missing and predicted sets")
    m_sets = [e.node_set for e in missing]
    p_sets = [e.node_set for e in predicted]
    best_for_missing = [max(_f1(a, b) for b in p_sets) for a in m_sets]
    best_for_predicted = [max(_f1(a, b) for a in m_sets) for b in p_sets]
    return 0.5 * (sum(best_for_missing) / len(m_sets) + sum(best_for_predicted) / len(p_sets))


def auc(missing_scores: Sequence[float], distractor_scores: Sequence[float],
        num_comparisons: int | str = "exhaustive",
        rng: np.random.Generator | None = None) -> float:
    """Probability that a missing hyperedge outscores a distractor.

    Exhaustive mode compares every (missing, distractor) pair; ties count
    0.5.  Sampled mode draws ``num_comparisons`` seeded random pairs with
    the same counting rule, for candidate sets too large to cross fully.
    """
    m = np.asarray(missing_scores, dtype=np.float64)
    d = np.asarray(distractor_scores, dtype=np.float64)
    if m.size == 0 or d.size == 0:
        raise ValueError("auc needs nonempty score lists for both classes")
    if num_comparisons == "exhaustive":
        d_sorted = np.sort(d)
        below = np.searchsorted(d_sorted, m, side="left")
        below_or_equal = np.searchsorted(d_sorted, m, side="right")
        wins = float(below.sum())
        ties = float((below_or_equal - below).sum())
        return (wins + 0.5 * ties) / (m.size * d.size)
    count = int(num_comparisons)
    if count < 1:
        raise ValueError("num_comparisons must be positive")
    if rng is None:
        raise ValueError("sampled auc needs an explicit RNG")
    mi = rng.integers(0, m.size, size=count)
    di = rng.integers(0, d.size, size=count)
    wins = float(np.count_nonzero(m[mi] > d[di]))
    ties = float(np.count_nonzero(m[mi] == d[di]))
    return (wins + 0.5 * ties) / count


def precision_at_l(ranking: Sequence[CandidateScore], missing: Sequence[Hyperedge]) -> float:
    """Fraction of the top |missing| ranked candidates that are missing
    hyperedges (exact node-set equality)."""
    ell = len(missing)
    if ell == 0:
        raise ValueError("missing set is empty")
    if len(ranking) < ell:
        raise ValueError(f"ranking has {len(ranking)} entries, fewer than |missing|={ell}")
    missing_set = set(missing)
    hits = sum(1 for cs in ranking[:ell] if cs.hyperedge in missing_set)
    return hits / ell


def paired_t_test(metric_a: Sequence[float], metric_b: Sequence[float]) -> tuple[float, float]:
    """Two-sided paired t-test on fold-wise differences.

    Returns (t, p) with K-1 degrees of freedom.  All-zero differences give
    (0, 1); nonzero constant differences are degenerate and reported as
    t = +/-inf with p = 0.
    """
    a = np.asarray(metric_a, dtype=np.float64)
    b = np.asarray(metric_b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError("paired samples must have equal length")
    if a.size < 2:
        raise ValueError("paired t-test needs at least 2 folds")
    diff = a - b
    if not diff.any():
        return 0.0, 1.0
    mean = diff.mean()
    sd = diff.std(ddof=1)
    if sd == 0.0:
        return math.copysign(math.inf, mean), 0.0
    t = mean / (sd / math.sqrt(diff.size))
    p = 2.0 * float(stats.t.sf(abs(t), diff.size - 1))
    return float(t), p


@dataclass(frozen=True)
class MethodConfig:
    """One scoring method to evaluate.

    ``kind`` is one of ``ra``, ``cn``, ``katz`` or ``random``; the last is
    the null baseline (uniform candidate scores, uniformly sampled
    predictions).  A ``katz`` method with ``beta=None`` selects the
    damping factor per fold by nested validation on an 80/20 split of the
    training edges, over the conventional grid.
    """

    kind: str = "ra"
    alpha: float | None = None
    beta: float | None = None
    max_walk_len: int = 5
    label: str | None = None

    def __post_init__(self):
        if self.kind not in ("ra", "cn", "katz", "random"):
            raise ValueError(f"unknown method kind {self.kind!r}")
        if self.alpha is not None and not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @property
    def name(self) -> str:
        return self.label if self.label is not None else self.kind


def _select_katz_beta(g: Hypergraph, train_ids: tuple[int, ...], fold_id: int,
                      tasks: tuple[str, ...], seed: int, smoothing_alpha: float,
                      distractor_ratio: int, max_walk_len: int) -> float:
    """Pick the Katz damping factor on an inner 80/20 split of the fold's
    training edges, maximizing CHS-AUC (or Average F1 when only the
    generative task runs)."""
    if len(train_ids) < 2:
        return _FALLBACK_KATZ_BETA
    rng = derive_rng(seed, "katz-select", fold_id)
    perm = rng.permutation(len(train_ids))
    cut = max(1, int(round(0.2 * len(train_ids))))
    if cut >= len(train_ids):
        return _FALLBACK_KATZ_BETA
    val_edges = [g.edges[train_ids[i]] for i in perm[:cut]]
    fit_ids = [train_ids[i] for i in perm[cut:]]
    inner_g = g.restricted_to_edges(fit_ids)
    inner_missing = prune_missing(inner_g.edges, val_edges)
    if not inner_missing:
        warnings.warn(f"fold {fold_id}: inner validation edges all pruned; "
                      f"falling back to beta={_FALLBACK_KATZ_BETA}")
        return _FALLBACK_KATZ_BETA
    hdd = fit_degree_distribution(inner_g, smoothing_alpha)

    use_chs = "chs" in tasks
    if use_chs:
        forbidden = list(inner_g.edges) + val_edges
        distractors = generate_distractors(
            inner_g, hdd, distractor_ratio * len(inner_missing), forbidden,
            derive_rng(seed, "katz-select-distractors", fold_id))
    else:
        predict_seed = derive_seed(seed, "katz-select-predict", fold_id)

    best_beta, best_value = None, -math.inf
    for beta in KATZ_BETA_GRID:
        sm = score_matrix(inner_g, "katz", beta=beta, max_walk_len=max_walk_len)
        if use_chs:
            m_scores = [hyperedge_score(sm, e) for e in inner_missing]
            d_scores = [hyperedge_score(sm, e) for e in distractors]
            value = auc(m_scores, d_scores)
        else:
            cfg = PredictionConfig(num_predictions=len(inner_missing), rng_seed=predict_seed)
            value = average_f1(inner_missing, predict_set(inner_g, sm, hdd, cfg))
        if value > best_value:
            best_beta, best_value = beta, value
    return best_beta


def _run_fold(g: Hypergraph, fold_id: int, train_ids: tuple[int, ...],
              test_ids: tuple[int, ...], methods: Sequence[MethodConfig],
              tasks: tuple[str, ...], seed: int, smoothing_alpha: float,
              distractor_ratio: int) -> dict:
    train_g = g.restricted_to_edges(train_ids)
    missing_raw = [g.edges[j] for j in test_ids]
    missing = prune_missing(train_g.edges, missing_raw)
    record = {
        "fold": fold_id,
        "num_train": len(train_ids),
        "num_missing": len(missing_raw),
        "num_missing_pruned": len(missing),
        "skipped": False,
        "methods": {},
    }
    if not missing:
        warnings.warn(f"fold {fold_id}: every missing hyperedge was pruned; fold skipped")
        record["skipped"] = True
        return record

    hdd = fit_degree_distribution(train_g, smoothing_alpha)
    candidates: list[Hyperedge] = []
    missing_set: set[Hyperedge] = set()
    if "chs" in tasks:
        forbidden = list(train_g.edges) + missing_raw
        distractors = generate_distractors(
            train_g, hdd, distractor_ratio * len(missing), forbidden,
            derive_rng(seed, "distractors", fold_id))
        pool = missing + distractors
        # One shuffled candidate order shared by all methods in the fold:
        # ranking stays paired across methods and stable ties favor neither class.
        order = derive_rng(seed, "shuffle", fold_id).permutation(len(pool))
        candidates = [pool[i] for i in order]
        missing_set = set(missing)

    for method in methods:
        metrics: dict[str, float] = {}
        details: dict = {}
        score = None
        if method.kind in ("ra", "cn", "katz"):
            beta = method.beta
            if method.kind == "katz" and beta is None:
                beta = _select_katz_beta(g, train_ids, fold_id, tasks, seed,
                                         smoothing_alpha, distractor_ratio,
                                         method.max_walk_len)
                details["selected_beta"] = beta
            score = score_matrix(train_g, method.kind, alpha=method.alpha,
                                 beta=beta, max_walk_len=method.max_walk_len)

        if "chs" in tasks:
            if method.kind == "random":
                vals = derive_rng(seed, "random-scorer", fold_id, method.name).random(len(candidates))
                ranked = sorted((CandidateScore(c, float(v)) for c, v in zip(candidates, vals)),
                                key=lambda cs: -cs.score)
            else:
                ranked = rank_candidates(score, candidates)
            m_scores = [cs.score for cs in ranked if cs.hyperedge in missing_set]
            d_scores = [cs.score for cs in ranked if cs.hyperedge not in missing_set]
            metrics["auc"] = auc(m_scores, d_scores)
            metrics["precision"] = precision_at_l(ranked, missing)

        if "generative" in tasks:
            predict_seed = derive_seed(seed, "predict", fold_id, method.name)
            if method.kind == "random":
                predictions = generate_distractors(
                    train_g, hdd, len(missing), (), derive_rng(predict_seed))
            else:
                cfg = PredictionConfig(num_predictions=len(missing), rng_seed=predict_seed)
                predictions = predict_set(train_g, score, hdd, cfg)
            metrics["average_f1"] = average_f1(missing, predictions)
            pred_sets = [p.node_set for p in predictions]
            train_sets = {e.node_set for e in train_g.edges}
            details["duplicate_predictions"] = len(pred_sets) - len(set(pred_sets))
            details["predictions_matching_training"] = sum(
                1 for ps in pred_sets if ps in train_sets)

        record["methods"][method.name] = {"metrics": metrics, "details": details}
    return record


@dataclass
class EvalReport:
    """Per-fold and aggregate metric records for one experiment."""

    dataset: str
    mode: str
    seed: int
    tasks: tuple[str, ...]
    method_names: list[str]
    fold_records: list[dict]
    aggregates: dict
    t_tests: list[dict]

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "mode": self.mode,
            "seed": self.seed,
            "tasks": list(self.tasks),
            "methods": self.method_names,
            "folds": self.fold_records,
            "aggregates": self.aggregates,
            "t_tests": self.t_tests,
        }

    def to_json(self) -> str:
        return json.dumps(_finite(self.to_dict()), indent=2, sort_keys=True)

    def fold_rows(self) -> list[tuple]:
        rows = []
        for name in self.method_names:
            metrics = sorted({m for rec in self.fold_records if not rec["skipped"]
                              for m in rec["methods"][name]["metrics"]})
            for metric in metrics:
                for rec in self.fold_records:
                    if rec["skipped"]:
                        continue
                    rows.append((self.dataset, name, metric, rec["fold"],
                                 rec["methods"][name]["metrics"][metric]))
        return rows

    def aggregate_rows(self) -> list[tuple]:
        rows = []
        for name in self.method_names:
            for metric in sorted(self.aggregates.get(name, {})):
                entry = self.aggregates[name][metric]
                rows.append((self.dataset, name, metric, entry["mean"], entry["std"]))
        return rows

    def write(self, base_path: str | Path) -> list[Path]:
        """Write <base>.json, <base>_folds.csv and <base>_aggregate.csv."""
        base = Path(base_path)
        if base.suffix == ".json":
            base = base.with_suffix("")
        json_path = base.with_name(base.name + ".json")
        folds_path = base.with_name(base.name + "_folds.csv")
        agg_path = base.with_name(base.name + "_aggregate.csv")
        json_path.parent.mkdir(parents=True, exist_ok=True)
        json_path.write_text(self.to_json() + "\n", encoding="utf-8")
        with open(folds_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["dataset", "method", "metric", "fold", "value"])
            writer.writerows(self.fold_rows())
        with open(agg_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["dataset", "method", "metric", "mean", "std"])
            writer.writerows(self.aggregate_rows())
        return [json_path, folds_path, agg_path]


def _finite(obj):
    """Replace non-finite floats so the JSON stays standard."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj).replace(" ", "")
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def run_experiment(g: Hypergraph, split: SplitPlan,
                   methods: MethodConfig | Sequence[MethodConfig],
                   tasks: Iterable[str] = ("generative", "chs"),
                   seed: int = 0, smoothing_alpha: float = 1.0,
                   distractor_ratio: int = 10, threads: int = 1,
                   dataset: str = "data") -> EvalReport:
    """Run the full evaluation pipeline over a split plan.

    Per fold: rebuild the training hypergraph, prune the missing set, then
    run the selected tasks for every method.  Fold failures are recorded
    and skipped rather than fatal, unless every fold fails.  With the same
    master seed the report is byte-identical across runs and thread
    counts.
    """
    if isinstance(methods, MethodConfig):
        methods = [methods]
    methods = list(methods)
    if not methods:
        raise ValueError("need at least one method")
    names = [m.name for m in methods]
    if len(set(names)) != len(names):
        raise ValueError(f"method names must be unique, got {names}")
    tasks = tuple(tasks)
    for task in tasks:
        if task not in ("generative", "chs"):
            raise ValueError(f"unknown task {task!r}")
    if not tasks:
        raise ValueError("need at least one task")

    def work(i: int) -> dict:
        train_ids, test_ids = split.folds[i]
        try:
            return _run_fold(g, i, train_ids, test_ids, methods, tasks, seed,
                             smoothing_alpha, distractor_ratio)
        except (ValueError, RuntimeError) as exc:
            warnings.warn(f"fold {i} failed: {exc}")
            return {"fold": i, "num_train": len(train_ids), "num_missing": len(test_ids),
                    "num_missing_pruned": 0, "skipped": True, "error": str(exc),
                    "methods": {}}

    indices = range(len(split.folds))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(work, indices))
    else:
        records = [work(i) for i in indices]

    if all(rec["skipped"] for rec in records):
        raise RuntimeError("every fold failed or was pruned empty; nothing to report")

    aggregates: dict[str, dict[str, dict]] = {}
    for name in names:
        per_metric: dict[str, list[float]] = defaultdict(list)
        for rec in records:
            if rec["skipped"]:
                continue
            for metric, value in rec["methods"][name]["metrics"].items():
                per_metric[metric].append(value)
        aggregates[name] = {
            metric: {
                "mean": float(np.mean(values)),
                "std": float(np.std(values, ddof=1)) if len(values) > 1 else 0.0,
                "folds": len(values),
            }
            for metric, values in per_metric.items()
        }

    t_tests = []
    all_metrics = sorted({m for name in names for m in aggregates[name]})
    for metric in all_metrics:
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                a, b = [], []
                for rec in records:
                    if rec["skipped"]:
                        continue
                    ma = rec["methods"][names[i]]["metrics"]
                    mb = rec["methods"][names[j]]["metrics"]
                    if metric in ma and metric in mb:
                        a.append(ma[metric])
                        b.append(mb[metric])
                if len(a) >= 2:
                    t, p = paired_t_test(a, b)
                    t_tests.append({
                        "method_a": names[i], "method_b": names[j], "metric": metric,
                        "t": t, "p": p, "folds": len(a),
                        "zero_variance": not math.isfinite(t),
                    })

    return EvalReport(dataset=dataset, mode=split.mode, seed=seed, tasks=tasks,
                      method_names=names, fold_records=records,
                      aggregates=aggregates, t_tests=t_tests)
