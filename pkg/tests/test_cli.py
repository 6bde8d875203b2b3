import json
import subprocess
import sys

import pytest

from graphzeta import bouquet_graph, complete_graph, cycle_graph, save_graph
from graphzeta.cli import run

from corpus import K4


@pytest.fixture()
def workdir(tmp_path):
    save_graph(complete_graph(4), tmp_path / "k4.json")
    save_graph(bouquet_graph(2), tmp_path / "b2.json")
    save_graph(cycle_graph(1), tmp_path / "loop.json")
    (tmp_path / "v2.json").write_text(
        json.dumps({"voltages": [[1, 0], [0, 1]], "rank": 2})
    )
    (tmp_path / "tower.json").write_text(
        json.dumps(
            {"base": "loop.json", "kind": "cyclic", "voltages": [1], "orders": [1, 2, 4, 8]}
        )
    )
    (tmp_path / "tower_h.json").write_text(
        json.dumps({"base": "b2.json", "kind": "homology", "p": 2, "depth": 2})
    )
    return tmp_path


def summary_of(capsys):
    out = capsys.readouterr().out.strip().splitlines()
    return json.loads(out[-1])


def test_zeta_compute(workdir, capsys):
    emit = workdir / "poly.json"
    code = run(
        [
            "zeta",
            "compute",
            "--graph",
            str(workdir / "k4.json"),
            "--eval",
            "0.1",
            "--emit",
            str(emit),
        ]
    )
    assert code == 0
    doc = summary_of(capsys)
    assert doc["q"] == 2 and doc["chi"] == -2
    assert json.loads(emit.read_text()) == [1, 0, 2, -8, -3, -16, 8, 0, 16]
    manifest = json.loads((workdir / "poly.json.manifest.json").read_text())
    assert manifest["command"] == "zeta compute"
    assert str(workdir / "k4.json") in manifest["inputs"]


def test_zeta_zeros_check(workdir, capsys):
    out = workdir / "zeros.csv"
    code = run(
        ["zeta", "zeros", "--graph", str(workdir / "k4.json"), "--out", str(out), "--check-c"]
    )
    assert code == 0
    doc = summary_of(capsys)
    assert doc["all_on_C"] is True
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "re,im,multiplicity,dist_to_C"
    assert len(lines) == 1 + doc["distinct_zeros"]


def test_zeta_euler_check(workdir, capsys):
    code = run(["zeta", "euler-check", "--graph", str(workdir / "k4.json"), "--terms", "8"])
    assert code == 0
    assert summary_of(capsys)["match"] is True


def test_zeta_functional_check(workdir, capsys):
    code = run(["zeta", "functional-check", "--graph", str(workdir / "k4.json"), "--points", "20"])
    assert code == 0
    doc = summary_of(capsys)
    assert doc["pass"] is True and doc["max_relative_residual"] < 1e-9


def test_cover_build(workdir, capsys):
    (workdir / "vc.json").write_text(json.dumps({"voltages": [1], "orders": [6]}))
    out = workdir / "cover.json"
    code = run(
        [
            "cover",
            "build",
            "--base",
            str(workdir / "loop.json"),
            "--voltages",
            str(workdir / "vc.json"),
            "--out",
            str(out),
        ]
    )
    assert code == 0
    doc = summary_of(capsys)
    assert doc["vertices"] == 6 and doc["connected"] is True
    assert json.loads(out.read_text())["vertices"] == 6


def test_tower_build_and_run(workdir, capsys):
    built = workdir / "built"
    assert run(["tower", "build", "--spec", str(workdir / "tower.json"), "--out", str(built)]) == 0
    doc = summary_of(capsys)
    assert doc["indices"] == [1, 2, 4, 8]
    assert (built / "tower.json").exists()
    assert (built / "level_01_N1.json").exists()

    outdir = workdir / "run"
    code = run(
        [
            "tower",
            "run",
            "--spec",
            str(workdir / "tower.json"),
            "--target",
            "constant:1",
            "--grid",
            "disk:0.5:9:0.02",
            "--out",
            str(outdir),
            "--jobs",
            "2",
        ]
    )
    assert code == 0
    doc = summary_of(capsys)
    sups = [lvl["sup_error"] for lvl in doc["levels"]]
    assert sups == sorted(sups, reverse=True)
    assert (outdir / "summary.json").exists()
    assert (outdir / "manifest.json").exists()

    # rerun lands byte-identical outputs
    before = {p.name: p.read_bytes() for p in outdir.iterdir()}
    assert run(
        [
            "tower",
            "run",
            "--spec",
            str(workdir / "tower.json"),
            "--target",
            "constant:1",
            "--grid",
            "disk:0.5:9:0.02",
            "--out",
            str(outdir),
            "--jobs",
            "2",
        ]
    ) == 0
    capsys.readouterr()
    after = {p.name: p.read_bytes() for p in outdir.iterdir()}
    assert before == after


def test_tower_run_torus_target(workdir, capsys):
    # unroll one loop of the bouquet: levels are cycles with a loop at
    # every vertex, the limit is the matching Z-cover
    (workdir / "vz1.json").write_text(json.dumps({"voltages": [1, 0], "rank": 1}))
    (workdir / "tower_l.json").write_text(
        json.dumps(
            {"base": "b2.json", "kind": "cyclic", "voltages": [1, 0], "orders": [1, 2, 4]}
        )
    )
    code = run(
        [
            "tower",
            "run",
            "--spec",
            str(workdir / "tower_l.json"),
            "--target",
            "torus:vz1.json",
            "--grid",
            "disk:0.15:5:0.02",
            "--out",
            str(workdir / "run_t"),
        ]
    )
    assert code == 0
    doc = summary_of(capsys)
    assert len(doc["levels"]) == 3
    sups = [lvl["sup_error"] for lvl in doc["levels"]]
    assert sups[-1] < sups[0]


def test_l2_torus_eval(workdir, capsys):
    code = run(
        [
            "l2",
            "torus",
            "--base",
            str(workdir / "b2.json"),
            "--voltages",
            str(workdir / "v2.json"),
            "--eval",
            "0.1",
        ]
    )
    assert code == 0
    doc = summary_of(capsys)
    assert doc["eval"]["value_re"] == pytest.approx(0.99979573, abs=1e-6)


def test_l2_cdf(workdir, capsys):
    outdir = workdir / "cdfs"
    code = run(["l2", "cdf", "--spec", str(workdir / "tower.json"), "--out", str(outdir)])
    assert code == 0
    doc = summary_of(capsys)
    assert doc["indices"] == [1, 2, 4, 8]
    assert (outdir / "cdf_N8.csv").read_text().startswith("lambda,F")


def test_deitmar_check(workdir, capsys):
    code = run(["deitmar", "check", "--graph", str(workdir / "k4.json")])
    assert code == 0
    doc = summary_of(capsys)
    assert doc["pass"] is True and doc["max_residual"] < 1e-10


def test_exit_codes(workdir, capsys):
    # missing file: input error
    assert run(["zeta", "compute", "--graph", str(workdir / "nope.json")]) == 1
    # malformed grid grammar
    assert (
        run(
            [
                "tower",
                "run",
                "--spec",
                str(workdir / "tower.json"),
                "--target",
                "constant:1",
                "--grid",
                "square:3",
                "--out",
                str(workdir / "x"),
            ]
        )
        == 1
    )
    # unknown subcommand
    assert run(["zeta", "frobnicate"]) == 1
    # resource exhaustion: exit 2
    assert (
        run(
            [
                "tower",
                "build",
                "--spec",
                str(workdir / "tower_h.json"),
                "--out",
                str(workdir / "th"),
                "--size-cap",
                "50",
            ]
        )
        == 2
    )
    capsys.readouterr()


def test_size_cap_env(workdir, capsys, monkeypatch):
    monkeypatch.setenv("ZETA_SIZE_CAP", "50")
    code = run(
        ["tower", "build", "--spec", str(workdir / "tower_h.json"), "--out", str(workdir / "th2")]
    )
    assert code == 2
    err = capsys.readouterr().err
    assert "128" in err and "50" in err


def test_console_script_runs(workdir):
    proc = subprocess.run(
        [sys.executable, "-m", "graphzeta.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "zeta" in proc.stdout


def test_help_exits_zero():
    assert run(["--help"]) == 0
    assert run(["zeta", "--help"]) == 0
