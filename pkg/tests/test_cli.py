import json
import subprocess
import sys

import pytest

from vcalp.cli import half_units, main
from vcalp.graph import mcgee, parse_edge_list, petersen

C5 = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"


@pytest.fixture
def c5(tmp_path):
    path = tmp_path / "c5.col"
    path.write_text(C5)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def report(capsys, *argv):
    code, out = run(capsys, "--json", *argv)
    return code, json.loads(out.out)


def test_half_units():
    assert [half_units(h) for h in (0, 1, 5, 10, -1, -4)] == ["0.0", "0.5", "2.5", "5.0", "-0.5", "-2.0"]


def test_solve_vc_yes(capsys, c5):
    code, rep = report(capsys, "solve-vc", c5, "-k", "3")
    assert code == 0 and rep["answer"] == "yes" and len(rep["witness"]) == 3
    g = parse_edge_list(C5)
    assert g.is_vertex_cover([w - 1 for w in rep["witness"]])
    assert rep["vc_star"] == "2.5" and rep["mu"] == "0.5"
    assert set(rep) == {"problem", "answer", "witness", "k", "vc_star", "mu", "stats", "wall_time_ms"}


def test_solve_vc_no(capsys, c5):
    code, out = run(capsys, "solve-vc", c5, "-k", "2", "--variant", "simple")
    assert code == 1 and out.out.startswith("no")


def test_solve_vc_minimum_stats(capsys, c5):
    code, out = run(capsys, "solve-vc", c5, "--minimum", "--stats")
    assert code == 0 and "nodes_visited" in out.out and "witness: " in out.out


def test_json_round_trip(capsys, c5):
    _, out = run(capsys, "--json", "solve-vc", c5, "--minimum")
    rep = json.loads(out.out)
    assert json.loads(json.dumps(rep, sort_keys=True)) == rep


def test_agvc(capsys, c5):
    code, rep = report(capsys, "solve-agvc", c5, "-l", "0")
    assert code == 1 and rep["matching_size"] == 2
    code, rep = report(capsys, "solve-agvc", c5, "-l", "1")
    assert code == 0 and len(rep["witness"]) == 3


def test_oct_svd(capsys, c5):
    code, rep = report(capsys, "solve-oct", c5, "-k", "1")
    assert code == 0 and len(rep["witness"]) == 1
    code, _ = run(capsys, "solve-oct", c5, "-k", "0")
    assert code == 1
    code, rep = report(capsys, "solve-svd", c5, "-k", "1")
    assert code == 0


def test_vc_param(capsys, c5):
    code, rep = report(capsys, "vc-param", c5, "--set", "1", "--kind", "oct", "-l", "3")
    assert code == 0 and len(rep["witness"]) == 3
    code, _ = run(capsys, "vc-param", c5, "--set", "", "--kind", "kvd", "-l", "3")
    assert code == 2
    code, _ = run(capsys, "vc-param", c5, "--set", "9", "--kind", "oct", "-l", "3")
    assert code == 2


def test_kernelize(capsys, c5, tmp_path):
    code, rep = report(capsys, "kernelize", c5, "-k", "3")
    assert code == 0 and rep["status"] == "solved-yes"
    code, rep = report(capsys, "kernelize", c5, "-k", "2")
    assert code == 1 and rep["status"] == "solved-no"
    big = tmp_path / "big.col"
    big.write_text(mcgee().to_dimacs())
    code, rep = report(capsys, "kernelize", str(big), "-k", "40", "-c", "1")
    assert code == 0
    if rep["status"] == "kernel":
        assert rep["kernel_n"] <= 80 - 2 * 6
        kernel = parse_edge_list(rep["kernel_dimacs"])
        assert kernel.n == rep["kernel_n"]


def test_oracle_command(capsys, c5):
    code, out = run(capsys, "oracle", "min-vc", c5)
    assert code == 0 and json.loads(out.out)["result"]["size"] == 3
    code, out = run(capsys, "oracle", "min-oct", c5)
    assert json.loads(out.out)["result"] == 1


def test_bench(capsys, tmp_path):
    (tmp_path / "a.col").write_text(C5)
    (tmp_path / "b.col").write_text(petersen().to_dimacs())
    code, out = run(capsys, "--json", "bench", str(tmp_path))
    rows = json.loads(out.out)
    assert code == 0 and [r["file"] for r in rows] == ["a.col", "b.col"]
    assert rows[1]["improved"]["vc"] == rows[1]["simple"]["vc"] == 6


def test_bench_parallel_same_order(capsys, tmp_path):
    for i in range(3):
        (tmp_path / f"g{i}.col").write_text(C5)
    code, out = run(capsys, "--json", "bench", str(tmp_path), "--jobs", "2")
    assert [r["file"] for r in json.loads(out.out)] == ["g0.col", "g1.col", "g2.col"]


def test_usage_and_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.col"
    bad.write_text("e 1 2\ne 3 3\n")
    code, out = run(capsys, "solve-vc", str(bad), "-k", "1")
    assert code == 2 and "line 2" in out.err
    code, _ = run(capsys, "solve-vc", str(tmp_path / "missing"), "-k", "1")
    assert code == 2
    code, _ = run(capsys, "no-such-command")
    assert code == 2
    code, _ = run(capsys, "solve-vc", str(bad))
    assert code == 2


def test_internal_error_exit_code(capsys, c5, monkeypatch):
    import vcalp.cli as cli

    def boom(*a, **k):
        raise AssertionError("broken invariant")

    monkeypatch.setattr(cli, "solve_decision", boom)
    code, out = run(capsys, "solve-vc", c5, "-k", "3")
    assert code == 3 and "broken invariant" in out.err


def test_module_entry_point(c5):
    proc = subprocess.run([sys.executable, "-m", "vcalp", "solve-vc", c5, "-k", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("yes")
