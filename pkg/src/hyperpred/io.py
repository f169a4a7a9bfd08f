"""Reading and writing the hyperedge-list text format and result files.

Hyperedge-list format, one hyperedge per line, UTF-8:

    # comment lines start with '#'; blank lines are ignored
    t=2003 labelA labelB labelC w=2.5

Node labels are whitespace-separated strings.  An optional leading
``t=<int>`` token is a timestamp, an optional trailing ``w=<float>`` token
is the (positive) hyperedge weight; both prefixes are reserved in those
positions and cannot be node labels there.  Serialization is canonical:
labels sorted per line, weight omitted when 1, so that
build -> write -> build is idempotent.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

from .hypergraph import Hyperedge, Hypergraph, build, restrict_to_largest_component
from .similarity import ScoreMatrix

__all__ = [
    "EdgeListFormatError",
    "parse_edge_list",
    "load",
    "write_edge_list",
    "edge_line",
    "write_hyperedges",
    "write_score_csv",
    "summary",
    "summary_line",
]

EdgeRow = tuple[list[str], float, int | None]


class EdgeListFormatError(ValueError):
    """Malformed hyperedge-list input, with the offending line number."""

    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


def parse_edge_list(path: str | Path) -> list[EdgeRow]:
    """Parse a hyperedge-list file into (labels, weight, timestamp) rows."""
    rows: list[EdgeRow] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            t: int | None = None
            if tokens and tokens[0].startswith("t="):
                try:
                    t = int(tokens[0][2:])
                except ValueError:
                    raise EdgeListFormatError(path, line_no,
                                              f"bad timestamp token {tokens[0]!r}") from None
                tokens = tokens[1:]
            weight = 1.0
            if tokens and tokens[-1].startswith("w="):
                try:
                    weight = float(tokens[-1][2:])
                except ValueError:
                    raise EdgeListFormatError(path, line_no,
                                              f"bad weight token {tokens[-1]!r}") from None
                if not weight > 0:
                    raise EdgeListFormatError(path, line_no,
                                              f"weight must be positive, got {weight}")
                tokens = tokens[:-1]
            if not tokens:
                raise EdgeListFormatError(path, line_no, "no node labels on line")
            rows.append((tokens, weight, t))
    return rows


def load(path: str | Path, largest_component: bool = False) -> Hypergraph:
    """Load a hyperedge-list file, optionally restricted to the largest
    connected component (components through shared nodes)."""
    rows = parse_edge_list(path)
    if not rows:
        raise EdgeListFormatError(path, 0, "file contains no hyperedges")
    g = build([labels for labels, _, _ in rows],
              weights=[w for _, w, _ in rows],
              timestamps=[t for _, _, t in rows])
    if largest_component:
        g = restrict_to_largest_component(g)
    return g


def edge_line(labels: Sequence[str], weight: float = 1.0, t: int | None = None) -> str:
    parts = []
    if t is not None:
        parts.append(f"t={t}")
    parts.extend(sorted(str(lab) for lab in labels))
    if weight != 1.0:
        parts.append(f"w={weight!r}")
    return " ".join(parts)


def write_edge_list(path: str | Path, rows: Sequence[EdgeRow]) -> None:
    """Write (labels, weight, timestamp) rows in canonical form."""
    with open(path, "w", encoding="utf-8") as fh:
        for labels, weight, t in rows:
            fh.write(edge_line(labels, weight, t) + "\n")


def write_hyperedges(path: str | Path, g: Hypergraph,
                     hyperedges: Sequence[Hyperedge] | None = None) -> None:
    """Serialize hyperedges of ``g`` (or a derived set such as predictions)
    back to the hyperedge-list format, labels resolved through ``g``."""
    edges = g.edges if hyperedges is None else hyperedges
    rows = [([g.labels[v] for v in e.nodes], e.weight, e.t) for e in edges]
    write_edge_list(path, rows)


def write_score_csv(path: str | Path, score: ScoreMatrix, labels: Sequence[str]) -> None:
    """Pairwise scores as a 3-column CSV, one row per stored pair, with
    label_x < label_y and rows sorted by the label pair."""
    pairs = sorted(
        (tuple(sorted((str(labels[x]), str(labels[y])))) + (value,)
         for x, y, value in score.items()),
        key=lambda row: (row[0], row[1]),
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["node_label_x", "node_label_y", "score"])
        writer.writerows((x, y, repr(v)) for x, y, v in pairs)


def summary(g: Hypergraph) -> dict:
    """Size and degree summary of a hypergraph."""
    return {
        "nodes": g.n,
        "hyperedges": g.m,
        "avg_hyperedge_degree": float(g.edge_degree.mean()),
        "avg_node_degree": float(g.node_degree.mean()),
    }


def summary_line(g: Hypergraph) -> str:
    s = summary(g)
    return (f"nodes={s['nodes']} hyperedges={s['hyperedges']} "
            f"avg_hyperedge_degree={s['avg_hyperedge_degree']:.4f} "
            f"avg_node_degree={s['avg_node_degree']:.4f}")
