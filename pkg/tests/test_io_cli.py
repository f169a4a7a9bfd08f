import json
import subprocess
import sys
from pathlib import Path

import pytest

from hyperpred import (
    Hyperedge,
    build,
    fit_degree_distribution,
    generate_distractors,
    load,
    parse_edge_list,
    score_matrix,
    write_edge_list,
    write_hyperedges,
    write_score_csv,
)
from hyperpred.cli import main
from hyperpred.io import EdgeListFormatError, summary, summary_line
from hyperpred.predictor import rank_candidates
from hyperpred.rng import derive_rng

SRC = str(Path(__file__).resolve().parent.parent / "src")


class TestParse:
    def test_basic_lines(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("# a comment\n\na b c\nb c w=2.5\nt=2001 c d\n")
        rows = parse_edge_list(f)
        assert rows == [(["a", "b", "c"], 1.0, None),
                        (["b", "c"], 2.5, None),
                        (["c", "d"], 1.0, 2001)]

    def test_bad_weight_reports_line_number(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("a b\nc d w=oops\n")
        with pytest.raises(EdgeListFormatError, match="2"):
            parse_edge_list(f)

    def test_nonpositive_weight_rejected(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("a b w=0\n")
        with pytest.raises(EdgeListFormatError):
            parse_edge_list(f)

    def test_bad_timestamp_rejected(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("t=abc a b\n")
        with pytest.raises(EdgeListFormatError, match="timestamp"):
            parse_edge_list(f)

    def test_weight_only_line_rejected(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("w=1.5\n")
        with pytest.raises(EdgeListFormatError, match="no node labels"):
            parse_edge_list(f)

    def test_empty_file_rejected(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("# nothing here\n")
        with pytest.raises(EdgeListFormatError):
            load(f)


class TestRoundTrip:
    def test_build_write_load_is_idempotent(self, tmp_path):
        g1 = build([("b", "a"), ("c", "b", "d"), ("a", "d")],
                   weights=[1.0, 2.5, 1.0], timestamps=[None, 7, None])
        p1, p2 = tmp_path / "one.txt", tmp_path / "two.txt"
        write_hyperedges(p1, g1)
        g2 = load(p1)
        write_hyperedges(p2, g2)
        assert p1.read_bytes() == p2.read_bytes()
        assert [set(g1.labels[v] for v in e.nodes) for e in g1.edges] == \
               [set(g2.labels[v] for v in e.nodes) for e in g2.edges]
        assert [e.weight for e in g1.edges] == [e.weight for e in g2.edges]
        assert [e.t for e in g1.edges] == [e.t for e in g2.edges]

    def test_largest_component_flag(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("a b\nc d\nc e\n")
        assert load(f).n == 5
        cut = load(f, largest_component=True)
        assert cut.n == 3
        assert set(cut.labels) == {"c", "d", "e"}

    def test_largest_component_tie_keeps_first_discovered(self, tmp_path):
        f = tmp_path / "g.txt"
        f.write_text("a b\nc d\ne f\n")
        cut = load(f, largest_component=True)
        assert cut.n == 2
        assert set(cut.labels) == {"a", "b"}

    def test_score_csv_sorted_by_label_pair(self, tmp_path):
        g = build([("b", "a"), ("c", "a")])
        sm = score_matrix(g, "ra")
        out = tmp_path / "scores.csv"
        write_score_csv(out, sm, g.labels)
        lines = out.read_text().splitlines()
        assert lines[0] == "node_label_x,node_label_y,score"
        pairs = [tuple(line.split(",")[:2]) for line in lines[1:]]
        assert pairs == sorted(pairs)
        assert all(x < y for x, y in pairs)

    def test_summary_values(self):
        g = build([("a", "b", "c"), ("a", "b")])
        s = summary(g)
        assert s["nodes"] == 3
        assert s["hyperedges"] == 2
        assert s["avg_hyperedge_degree"] == 2.5
        assert s["avg_node_degree"] == pytest.approx(5 / 3)
        line = summary_line(g)
        assert "avg_hyperedge_degree=2.5000" in line


def write_fixture(tmp_path, seed=3) -> Path:
    path = tmp_path / "fixture.txt"
    code = main(["gen-synthetic", "--output", str(path), "--nodes", "60",
                 "--communities", "3", "--edges-per-community", "30",
                 "--min-size", "3", "--max-size", "4", "--noise", "0.05",
                 "--seed", str(seed)])
    assert code == 0
    return path


class TestCli:
    def test_load_info_prints_summary(self, tmp_path, capsys):
        path = write_fixture(tmp_path)
        assert main(["load-info", "--input", str(path)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("nodes=")
        assert "avg_hyperedge_degree=" in out

    def test_gen_synthetic_is_byte_deterministic(self, tmp_path):
        dir_a, dir_b = tmp_path / "a", tmp_path / "b"
        dir_a.mkdir()
        dir_b.mkdir()
        assert write_fixture(dir_a).read_bytes() == write_fixture(dir_b).read_bytes()

    def test_scores_csv_and_json(self, tmp_path):
        path = write_fixture(tmp_path)
        csv_out = tmp_path / "scores.csv"
        json_out = tmp_path / "scores.json"
        assert main(["scores", "--input", str(path), "--output", str(csv_out)]) == 0
        assert main(["scores", "--input", str(path), "--output", str(json_out)]) == 0
        rows = csv_out.read_text().splitlines()
        records = json.loads(json_out.read_text())
        assert len(rows) - 1 == len(records)
        first = rows[1].split(",")
        assert records[0]["x"] == first[0]
        assert float(first[2]) == records[0]["score"]

    def test_predict_round_trips_and_is_deterministic(self, tmp_path):
        path = write_fixture(tmp_path)
        out1, out2 = tmp_path / "p1.txt", tmp_path / "p2.txt"
        args = ["predict", "--input", str(path), "--count", "15", "--seed", "11"]
        assert main(args + ["--output", str(out1)]) == 0
        assert main(args + ["--output", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        predictions = load(out1)
        assert predictions.m == 15

    def test_rank_reproduces_the_direct_pipeline(self, tmp_path):
        path = write_fixture(tmp_path)
        g = load(path)
        hdd = fit_degree_distribution(g, 1.0)
        missing = list(g.edges[:10])
        distractors = generate_distractors(g, hdd, 20, g.edges, derive_rng(5, "cli-rank"))
        candidates = missing + distractors
        cand_path = tmp_path / "candidates.txt"
        write_hyperedges(cand_path, g, candidates)
        out = tmp_path / "ranked.csv"
        assert main(["rank", "--input", str(path), "--candidates", str(cand_path),
                     "--output", str(out)]) == 0

        sm = score_matrix(g, "ra")
        reloaded = [Hyperedge(tuple(g.id_of(lab) for lab in labels))
                    for labels, _, _ in parse_edge_list(cand_path)]
        expected = rank_candidates(sm, reloaded)
        lines = out.read_text().splitlines()[1:]
        assert len(lines) == len(expected)
        for line, cs in zip(lines, expected):
            rank_str, score_str, nodes_str = line.split(",")
            assert float(score_str) == cs.score
            assert set(nodes_str.split()) == {g.labels[v] for v in cs.hyperedge.nodes}

    def test_rank_rejects_unknown_labels(self, tmp_path, capsys):
        path = write_fixture(tmp_path)
        cand = tmp_path / "cand.txt"
        cand.write_text("nope1 nope2\n")
        code = main(["rank", "--input", str(path), "--candidates", str(cand),
                     "--output", str(tmp_path / "out.csv")])
        assert code == 1
        assert "absent" in capsys.readouterr().err

    def test_eval_cv_writes_report_files(self, tmp_path):
        path = write_fixture(tmp_path)
        base = tmp_path / "report"
        code = main(["eval-cv", "--input", str(path), "--output", str(base),
                     "--folds", "4", "--seed", "7", "--methods", "ra,random",
                     "--tasks", "chs", "--threads", "2"])
        assert code == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["methods"] == ["ra", "random"]
        assert (tmp_path / "report_folds.csv").exists()
        assert (tmp_path / "report_aggregate.csv").exists()

    def test_eval_temporal(self, tmp_path):
        path = write_fixture(tmp_path)
        rows = parse_edge_list(path)
        stamped = tmp_path / "stamped.txt"
        write_edge_list(stamped, [(labels, w, 2000 + i % 4) for i, (labels, w, _) in enumerate(rows)])
        base = tmp_path / "temporal"
        code = main(["eval-temporal", "--input", str(stamped), "--output", str(base),
                     "--train-years", "2000:2002", "--test-year", "2003",
                     "--tasks", "generative", "--seed", "5"])
        assert code == 0
        report = json.loads((tmp_path / "temporal.json").read_text())
        assert report["mode"] == "temporal"
        assert len(report["folds"]) == 1

    def test_config_file_supplies_defaults_and_flags_override(self, tmp_path, capsys):
        path = write_fixture(tmp_path)
        cfg = tmp_path / "run.cfg"
        cfg.write_text("count=5\nseed=11\nmethod=ra\n")
        out1 = tmp_path / "c1.txt"
        assert main(["predict", "--input", str(path), "--output", str(out1),
                     "--config", str(cfg)]) == 0
        assert load(out1).m == 5
        out2 = tmp_path / "c2.txt"
        assert main(["predict", "--input", str(path), "--output", str(out2),
                     "--config", str(cfg), "--count", "3"]) == 0
        assert load(out2).m == 3

    def test_unknown_config_key_is_an_error(self, tmp_path, capsys):
        path = write_fixture(tmp_path)
        cfg = tmp_path / "run.cfg"
        cfg.write_text("bogus=1\n")
        code = main(["predict", "--input", str(path), "--output",
                     str(tmp_path / "o.txt"), "--count", "2", "--config", str(cfg)])
        assert code == 1
        assert "bogus" in capsys.readouterr().err

    def test_missing_input_is_a_runtime_error(self, tmp_path, capsys):
        code = main(["load-info", "--input", str(tmp_path / "absent.txt")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_unknown_flag_is_a_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["load-info", "--frobnicate"])
        assert exc.value.code == 2

    def test_module_entry_point(self, tmp_path):
        path = write_fixture(tmp_path)
        proc = subprocess.run(
            [sys.executable, "-m", "hyperpred", "load-info", "--input", str(path)],
            capture_output=True, text=True, env={"PYTHONPATH": SRC, "PATH": "/usr/bin:/bin"})
        assert proc.returncode == 0
        assert proc.stdout.startswith("nodes=")
