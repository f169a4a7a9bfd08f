"""Command-line interface.

Subcommands: load-info, scores, predict, rank, eval-cv, eval-temporal,
gen-synthetic.  Every command is deterministic given its input files,
flags and ``--seed``: all randomness flows from that one seed through
named derived streams (split, prediction, distractors, synthetic, ...).

Flags can also come from a flat ``key=value`` config file via
``--config``; explicit flags override file entries.  Data goes to output
files or stdout; progress and warnings go to stderr.  Exit codes: 0
success, 1 runtime or data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io as hio
from .evaluation import MethodConfig, make_kfold, make_temporal, run_experiment
from .hypergraph import Hyperedge, Hypergraph
from .predictor import PredictionConfig, predict, rank_candidates
from .rng import derive_seed
from .similarity import score_matrix
from .synthetic import SyntheticSpec, generate_synthetic_edges


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="hyperedge-list file")
    p.add_argument("--largest-component", action="store_true",
                   help="restrict to the largest connected component")


def _add_method_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", default="ra", choices=["ra", "cn", "katz"],
                   help="pairwise similarity index (default ra)")
    p.add_argument("--alpha", type=float, default=None,
                   help="ra only: weight of the direct term in [0,1]; default is the plain sum")
    p.add_argument("--beta", type=float, default=None, help="katz damping factor")
    p.add_argument("--max-walk-len", type=int, default=5, help="katz walk-length cutoff")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--config", default=None,
                   help="flat key=value file supplying flag defaults; flags override it")


def build_parser() -> tuple[argparse.ArgumentParser, argparse._SubParsersAction]:
    parser = argparse.ArgumentParser(
        prog="hyperpred",
        description="Hypergraph link prediction: similarity scores, generative "
                    "hyperedge prediction, candidate ranking and evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("load-info", help="print a size/degree summary of a dataset")
    _add_input_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_load_info)

    p = sub.add_parser("scores", help="materialize pairwise scores to CSV/JSON")
    _add_input_flags(p)
    _add_method_flags(p)
    _add_common(p)
    p.add_argument("--output", required=True)
    p.add_argument("--format", default=None, choices=["csv", "json"],
                   help="override the format implied by the output extension")
    p.set_defaults(func=cmd_scores)

    p = sub.add_parser("predict", help="generate new hyperedges")
    _add_input_flags(p)
    _add_method_flags(p)
    _add_common(p)
    p.add_argument("--output", required=True)
    p.add_argument("--count", type=int, required=True, help="number of hyperedges to generate")
    p.add_argument("--smoothing", type=float, default=1.0,
                   help="additive smoothing of the size distribution (default 1)")
    p.add_argument("--min-size", type=int, default=None, help="size support override, lower end")
    p.add_argument("--max-size", type=int, default=None, help="size support override, upper end")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("rank", help="rank candidate hyperedges by mean pairwise score")
    _add_input_flags(p)
    _add_method_flags(p)
    _add_common(p)
    p.add_argument("--candidates", required=True, help="candidate hyperedge-list file")
    p.add_argument("--output", required=True)
    p.add_argument("--top", type=int, default=None, help="emit only the top K candidates")
    p.add_argument("--format", default=None, choices=["csv", "json"])
    p.set_defaults(func=cmd_rank)

    for name, extra in (("eval-cv", "folds"), ("eval-temporal", "years")):
        p = sub.add_parser(name, help=f"{'cross-validation' if extra == 'folds' else 'temporal'} evaluation")
        _add_input_flags(p)
        _add_common(p)
        p.add_argument("--output", required=True,
                       help="base path; writes <base>.json, <base>_folds.csv, <base>_aggregate.csv")
        p.add_argument("--methods", default="ra",
                       help="comma list from {ra,cn,katz,random} (default ra)")
        p.add_argument("--tasks", default="generative,chs",
                       help="comma list from {generative,chs} (default both)")
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--beta", type=float, default=None,
                       help="katz damping; omit to select per fold by nested validation")
        p.add_argument("--max-walk-len", type=int, default=5)
        p.add_argument("--smoothing", type=float, default=1.0)
        p.add_argument("--distractor-ratio", type=int, default=10)
        p.add_argument("--threads", type=int, default=None,
                       help="worker thread cap (default: HYPERPRED_THREADS or all cores)")
        p.add_argument("--dataset", default=None, help="dataset name in reports")
        if extra == "folds":
            p.add_argument("--folds", type=int, required=True)
            p.set_defaults(func=cmd_eval_cv)
        else:
            p.add_argument("--train-years", required=True, metavar="FROM:TO")
            p.add_argument("--test-year", type=int, required=True)
            p.set_defaults(func=cmd_eval_temporal)

    p = sub.add_parser("gen-synthetic", help="write a planted-community hypergraph")
    _add_common(p)
    p.add_argument("--output", required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--communities", type=int, required=True)
    p.add_argument("--edges-per-community", type=int, required=True)
    p.add_argument("--min-size", type=int, default=2)
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--noise", type=float, default=0.0)
    p.set_defaults(func=cmd_gen_synthetic)

    return parser, sub


def _load_config(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{line_no}: expected key=value, got {stripped!r}")
        key, value = stripped.split("=", 1)
        entries[key.strip().replace("-", "_")] = value.strip()
    return entries


def _apply_config(sub: argparse.ArgumentParser, entries: dict[str, str]) -> None:
    actions = {a.dest: a for a in sub._actions}
    coerced = {}
    for key, raw in entries.items():
        if key in ("config",):
            continue
        if key not in actions:
            raise ValueError(f"config key {key!r} is not a flag of this command")
        action = actions[key]
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            coerced[key] = raw.lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            coerced[key] = action.type(raw)
        else:
            coerced[key] = raw
        action.required = False  # the config file satisfied it
    sub.set_defaults(**coerced)


def _load_graph(args) -> Hypergraph:
    return hio.load(args.input, largest_component=args.largest_component)


def _format_of(args) -> str:
    if args.format:
        return args.format
    return "json" if str(args.output).endswith(".json") else "csv"


def cmd_load_info(args) -> int:
    g = _load_graph(args)
    print(hio.summary_line(g))
    return 0


def cmd_scores(args) -> int:
    g = _load_graph(args)
    score = score_matrix(g, args.method, alpha=args.alpha, beta=args.beta,
                         max_walk_len=args.max_walk_len)
    if _format_of(args) == "csv":
        hio.write_score_csv(args.output, score, g.labels)
    else:
        records = sorted(
            ({"x": xl, "y": yl, "score": v}
             for x, y, v in score.items()
             for xl, yl in [tuple(sorted((str(g.labels[x]), str(g.labels[y]))))]),
            key=lambda r: (r["x"], r["y"]))
        Path(args.output).write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {score.num_pairs} pairs to {args.output}", file=sys.stderr)
    return 0


def cmd_predict(args) -> int:
    g = _load_graph(args)
    support = None
    if (args.min_size is None) != (args.max_size is None):
        raise ValueError("--min-size and --max-size must be given together")
    if args.min_size is not None:
        support = (args.min_size, args.max_size)
    cfg = PredictionConfig(
        num_predictions=args.count,
        rng_seed=derive_seed(args.seed, "prediction"),
        score_kind=args.method, alpha=args.alpha, beta=args.beta,
        max_walk_len=args.max_walk_len, smoothing_alpha=args.smoothing,
        size_support=support)
    predictions = predict(g, cfg)
    hio.write_hyperedges(args.output, g, predictions)
    print(f"wrote {len(predictions)} predicted hyperedges to {args.output}", file=sys.stderr)
    return 0


def cmd_rank(args) -> int:
    g = _load_graph(args)
    rows = hio.parse_edge_list(args.candidates)
    if not rows:
        raise ValueError(f"{args.candidates}: no candidate hyperedges")
    candidates = []
    for labels, weight, t in rows:
        try:
            ids = tuple(g.id_of(lab) for lab in labels)
        except KeyError as exc:
            raise ValueError(f"candidate references a node absent from the input graph: {exc}")
        candidates.append(Hyperedge(ids, weight, t))
    score = score_matrix(g, args.method, alpha=args.alpha, beta=args.beta,
                         max_walk_len=args.max_walk_len)
    ranked = rank_candidates(score, candidates, k=args.top)
    if _format_of(args) == "csv":
        import csv as _csv
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            writer = _csv.writer(fh)
            writer.writerow(["rank", "score", "nodes"])
            for pos, cs in enumerate(ranked, 1):
                labels = " ".join(sorted(str(g.labels[v]) for v in cs.hyperedge.nodes))
                writer.writerow([pos, repr(cs.score), labels])
    else:
        records = [{"rank": pos, "score": cs.score,
                    "nodes": sorted(str(g.labels[v]) for v in cs.hyperedge.nodes)}
                   for pos, cs in enumerate(ranked, 1)]
        Path(args.output).write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")
    print(f"ranked {len(candidates)} candidates to {args.output}", file=sys.stderr)
    return 0


def _parse_methods(args) -> list[MethodConfig]:
    methods = []
    for token in args.methods.split(","):
        kind = token.strip()
        if not kind:
            continue
        methods.append(MethodConfig(
            kind=kind,
            alpha=args.alpha if kind == "ra" else None,
            beta=args.beta if kind == "katz" else None,
            max_walk_len=args.max_walk_len))
    if not methods:
        raise ValueError("no methods selected")
    return methods


def _resolve_threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("HYPERPRED_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_eval(args, split, g) -> int:
    report = run_experiment(
        g, split, _parse_methods(args),
        tasks=tuple(t.strip() for t in args.tasks.split(",") if t.strip()),
        seed=args.seed, smoothing_alpha=args.smoothing,
        distractor_ratio=args.distractor_ratio, threads=_resolve_threads(args),
        dataset=args.dataset or Path(args.input).stem)
    paths = report.write(args.output)
    print("wrote " + ", ".join(str(p) for p in paths), file=sys.stderr)
    return 0


def cmd_eval_cv(args) -> int:
    g = _load_graph(args)
    return _run_eval(args, make_kfold(g, args.folds, args.seed), g)


def cmd_eval_temporal(args) -> int:
    g = _load_graph(args)
    try:
        lo, hi = args.train_years.split(":")
        window = (int(lo), int(hi))
    except ValueError:
        raise ValueError(f"--train-years expects FROM:TO, got {args.train_years!r}") from None
    return _run_eval(args, make_temporal(g, window, args.test_year), g)


def cmd_gen_synthetic(args) -> int:
    spec = SyntheticSpec(num_nodes=args.nodes, num_communities=args.communities,
                         edges_per_community=args.edges_per_community,
                         min_size=args.min_size, max_size=args.max_size,
                         noise=args.noise)
    edges = generate_synthetic_edges(spec, args.seed)
    hio.write_edge_list(args.output, [(labels, 1.0, None) for labels in edges])
    print(f"wrote {len(edges)} hyperedges to {args.output}", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, sub = build_parser()
    command = next((a for a in argv if not a.startswith("-")), None)
    try:
        config_path = None
        for i, token in enumerate(argv):
            if token == "--config" and i + 1 < len(argv):
                config_path = argv[i + 1]
            elif token.startswith("--config="):
                config_path = token.split("=", 1)[1]
        if config_path is not None and command in sub.choices:
            _apply_config(sub.choices[command], _load_config(config_path))
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit:
        raise
    except Exception as exc:  # stable exit-code contract for scripting
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
