"""CLI contract: subcommands, file formats, report schemas, exit codes."""

import csv
import io
import json

import numpy as np
import pytest

import svcc.cli
from svcc import labeling_from_parents
from svcc.cli import main

TWO_TRIANGLES_MM = ("%%MatrixMarket matrix coordinate pattern symmetric\n"
                    "6 6 6\n2 1\n3 2\n3 1\n5 4\n6 5\n6 4\n")


def run_cli(*argv):
    return main(list(argv))


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def gen(tmp_path, name, *flags):
    out = tmp_path / name
    assert run_cli("generate", "--output", str(out), *flags) == 0
    return str(out)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_generate_path3(tmp_path):
    p = gen(tmp_path, "p3.el", "--family", "path", "--n", "3")
    assert open(p).read() == "0 1\n1 2\n"


def test_generate_star3(tmp_path):
    p = gen(tmp_path, "s3.el", "--family", "star", "--n", "3")
    assert open(p).read() == "0 1\n0 2\n"


def test_generate_gnp_reproducible(tmp_path):
    flags = ("--family", "gnp", "--n", "60", "--p", "0.1", "--seed", "4")
    a = gen(tmp_path, "a.el", *flags)
    b = gen(tmp_path, "b.el", *flags)
    assert open(a).read() == open(b).read()


def test_generate_bad_spec_exits_1(tmp_path, capsys):
    assert run_cli("generate", "--family", "path", "--n", "0",
                   "--output", str(tmp_path / "x.el")) == 1
    assert "error:" in capsys.readouterr().err


def test_run_fastsv_la_two_triangles(tmp_path, capsys):
    src = write(tmp_path, "tt.mtx", TWO_TRIANGLES_MM)
    assert run_cli("run", "--algo", "fastsv-la", "--input", src) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["component_count"] == 2
    assert report["graph"] == {"n": 6, "m": 12, "source": src}
    assert report["algorithm"] == "fastsv-la"
    assert report["verified"] is None
    assert report["iterations"] == len(report["trace"]) >= 1
    row = report["trace"][0]
    assert set(row) == {"iteration", "gf_changed", "f_changed", "kernel",
                        "flops", "elapsed"}


def test_run_sv_with_verify(tmp_path, capsys):
    src = gen(tmp_path, "p8.el", "--family", "path", "--n", "8")
    assert run_cli("run", "--algo", "sv", "--input", src, "--verify") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verified"] is True
    assert report["iterations"] == 4
    assert report["config"] == {}


def test_run_sv_level_3_mapping(tmp_path, capsys):
    src = gen(tmp_path, "p8.el", "--family", "path", "--n", "8")
    assert run_cli("run", "--algo", "fastsv", "--sv-level", "3",
                   "--input", src) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["config"] == {"grandparent_hooking": True,
                                "stochastic_hooking": True,
                                "aggressive_hooking": False,
                                "early_termination": False}


def test_run_hook_flag_overrides_level(tmp_path, capsys):
    src = gen(tmp_path, "p8.el", "--family", "path", "--n", "8")
    assert run_cli("run", "--algo", "fastsv", "--sv-level", "3",
                   "--hook-aggressive", "--input", src) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["config"]["aggressive_hooking"] is True
    assert report["config"]["stochastic_hooking"] is True


def test_run_labels_out(tmp_path, capsys):
    src = gen(tmp_path, "p3.el", "--family", "path", "--n", "3")
    labels = tmp_path / "labels.txt"
    assert run_cli("run", "--input", src, "--labels-out", str(labels),
                   "--output", str(tmp_path / "report.json")) == 0
    assert labels.read_text() == "0 0\n1 0\n2 0\n"


def test_run_report_to_file_is_json(tmp_path):
    src = gen(tmp_path, "c5.el", "--family", "cycle", "--n", "5")
    out = tmp_path / "r.json"
    assert run_cli("run", "--input", src, "--algo", "fastsv-la",
                   "--threads", "2", "-o", str(out)) == 0
    report = json.loads(out.read_text())
    assert report["config"] == {"sparse_threshold": 0.1,
                                "force_kernel": "auto", "workers": 2}


def test_run_rejects_hook_flags_for_wrong_algo(tmp_path):
    src = gen(tmp_path, "p4.el", "--family", "path", "--n", "4")
    assert run_cli("run", "--algo", "sv", "--sv-level", "2",
                   "--input", src) == 1
    assert run_cli("run", "--algo", "fastsv-la", "--hook-grandparent",
                   "--input", src) == 1


def test_run_rejects_bad_threshold(tmp_path):
    src = gen(tmp_path, "p4.el", "--family", "path", "--n", "4")
    assert run_cli("run", "--algo", "fastsv-la", "--threshold", "1.5",
                   "--input", src) == 1


def test_missing_input_exits_1(tmp_path, capsys):
    assert run_cli("run", "--input", str(tmp_path / "nope.el")) == 1
    assert "error:" in capsys.readouterr().err


def test_malformed_matrix_market_exits_1(tmp_path):
    src = write(tmp_path, "bad.mtx",
                "%%MatrixMarket matrix coordinate pattern general\n3 3 1\n9 1\n")
    assert run_cli("run", "--input", src) == 1


def test_unknown_flag_exits_1(tmp_path):
    src = gen(tmp_path, "p4.el", "--family", "path", "--n", "4")
    assert run_cli("run", "--input", src, "--frobnicate") == 1


def test_verification_failure_exits_2(tmp_path, monkeypatch, capsys):
    src = gen(tmp_path, "p4.el", "--family", "path", "--n", "4")

    def wrong_oracle(n, edges):
        return labeling_from_parents(np.arange(n, dtype=np.int64))

    monkeypatch.setattr(svcc.cli, "union_find_labels", wrong_oracle)
    assert run_cli("run", "--input", src, "--verify") == 2
    assert "verification failed" in capsys.readouterr().err
    assert run_cli("ablation", "--input", src) == 2


def test_invariant_violation_exits_3(tmp_path, monkeypatch, capsys):
    src = gen(tmp_path, "p4.el", "--family", "path", "--n", "4")

    def broken(g, cfg=None, record_snapshots=False):
        raise svcc.InvariantError("algorithm terminated on non-star forest")

    monkeypatch.setattr(svcc.cli, "fastsv", broken)
    assert run_cli("run", "--algo", "fastsv", "--input", src) == 3
    assert "invariant violated" in capsys.readouterr().err


def test_ablation_path64(tmp_path):
    src = gen(tmp_path, "p64.el", "--family", "path", "--n", "64")
    out = tmp_path / "ablation.csv"
    assert run_cli("ablation", "--input", src, "-o", str(out)) == 0
    rows = read_csv(out)
    assert rows[0] == ["name", "iterations", "total_elapsed",
                       "reduction_vs_sv1"]
    assert [(r[0], int(r[1])) for r in rows[1:]] == [
        ("sv1", 7), ("sv2", 7), ("sv3", 8), ("sv4", 7), ("sv5", 7)]
    assert float(rows[1][3]) == 0.0
    assert float(rows[3][3]) == pytest.approx((7 - 8) / 7, abs=1e-4)


def test_ablation_edgeless(tmp_path):
    src = write(tmp_path, "iso.el", "# isolated vertices only\n3 3\n")
    out = tmp_path / "ablation.csv"
    assert run_cli("ablation", "--input", src, "-o", str(out)) == 0
    rows = read_csv(out)
    assert [int(r[1]) for r in rows[1:]] == [1, 1, 1, 1, 1]


def test_frontier_trace(tmp_path):
    src = gen(tmp_path, "mix.el", "--family", "component_mix", "--blocks",
              "10", "--block-n", "30", "--block-p", "0.1", "--seed", "110")
    out = tmp_path / "frontier.csv"
    assert run_cli("frontier", "--input", src, "-o", str(out)) == 0
    rows = read_csv(out)
    assert rows[0] == ["iteration", "gf_changed", "gf_changed_frac",
                       "kernel", "flops", "elapsed"]
    body = rows[1:]
    assert [int(r[0]) for r in body] == list(range(1, len(body) + 1))
    assert all(int(r[1]) > 0 for r in body[:-1])
    assert int(body[-1][1]) == 0
    assert all(0.0 <= float(r[2]) <= 1.0 for r in body)


def test_frontier_kernel_forced_dense(tmp_path):
    src = gen(tmp_path, "p64.el", "--family", "path", "--n", "64")
    out = tmp_path / "frontier.csv"
    assert run_cli("frontier", "--input", src, "--kernel", "dense-only",
                   "-o", str(out)) == 0
    assert all(r[3] == "dense" for r in read_csv(out)[1:])


def test_frontier_threshold_one_goes_sparse(tmp_path):
    src = gen(tmp_path, "p64.el", "--family", "path", "--n", "64")
    out = tmp_path / "frontier.csv"
    assert run_cli("frontier", "--input", src, "--threshold", "1.0",
                   "-o", str(out)) == 0
    rows = read_csv(out)[1:]
    assert rows[0][3] == "dense"
    assert all(r[3] == "sparse" for r in rows[1:])
