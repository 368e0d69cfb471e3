"""End-to-end command-line checks: files, exit codes, determinism."""

import csv
import json
import math
import os
import subprocess
import sys

import pytest

from maxgrad.cli import main
from maxgrad.errors import NumericalError
from maxgrad.graphs import build_graph, dump_graph_json

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path)])


def read_json(tmp_path, name):
    with open(tmp_path / name, "r", encoding="utf-8") as fh:
        return json.load(fh)


def read_rows(tmp_path, name):
    with open(tmp_path / name, "r", encoding="utf-8", newline="") as fh:
        return list(csv.reader(fh))


def snapshot_bytes(tmp_path):
    return {p.name: p.read_bytes() for p in tmp_path.iterdir()
            if p.is_file()}


# -- plumbing ----------------------------------------------------------------


def test_version_runs_as_module():
    proc = subprocess.run([sys.executable, "-m", "maxgrad.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("maxgrad ")


def test_subcommand_required():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_graph_sources_mutually_exclusive(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run(tmp_path, "graph-distance", "--path", "4", "--grid", "3", "3")
    assert exc.value.code == 2


def test_outdir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("MAXGRAD_OUTDIR", str(tmp_path))
    assert main(["graph-distance", "--path", "4"]) == 0
    assert (tmp_path / "distance.csv").exists()
    assert (tmp_path / "run.json").exists()


def test_numerical_error_exits_three(tmp_path, monkeypatch, capsys):
    def explode(graph):
        raise NumericalError("solver stalled")

    monkeypatch.setattr("maxgrad.cli.graph_distance", explode)
    assert run(tmp_path, "graph-distance", "--path", "4") == 3
    assert capsys.readouterr().err.startswith("error: solver stalled")


def test_missing_input_file_exits_two(tmp_path, capsys):
    code = run(tmp_path, "graph-distance", "--input",
               str(tmp_path / "nope.json"))
    assert code == 2
    assert capsys.readouterr().err.startswith("error:")


# -- graph-distance ------------------------------------------------------------


def test_graph_distance_path(tmp_path, capsys):
    assert run(tmp_path, "graph-distance", "--path", "4") == 0
    rows = read_rows(tmp_path, "distance.csv")
    assert rows[0] == ["vertex", "distance"]
    assert [r[1] for r in rows[1:]] == ["0", "1", "1", "0"]
    record = read_json(tmp_path, "run.json")
    assert record["command"] == "graph-distance"
    assert record["outputs"] == ["distance.csv", "graph.json"]
    assert record["graph"] == {"kind": "path", "n": 4}
    assert "max 1" in capsys.readouterr().out


def test_graph_distance_counts(tmp_path):
    assert run(tmp_path, "graph-distance", "--path", "5", "--counts") == 0
    rows = read_rows(tmp_path, "distance.csv")
    assert rows[0] == ["vertex", "distance", "geodesic_count"]
    assert [r[2] for r in rows[1:]] == ["0", "1", "2", "1", "0"]


def test_counts_need_unit_weights(tmp_path, capsys):
    graph = build_graph(3, [(0, 1, 1.0), (1, 2, 4.0)], [0, 2])
    source = tmp_path / "weighted.json"
    dump_graph_json(graph, str(source))
    code = run(tmp_path, "graph-distance", "--input", str(source), "--counts")
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_input_graph_is_not_redumped(tmp_path):
    graph = build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)], [0, 2])
    source = tmp_path / "given.json"
    dump_graph_json(graph, str(source))
    out = tmp_path / "out"
    assert main(["graph-distance", "--input", str(source),
                 "--out", str(out)]) == 0
    assert not (out / "graph.json").exists()
    assert read_json(out, "run.json")["graph"]["kind"] == "file"


def test_random_graph_seed_recorded(tmp_path):
    assert run(tmp_path, "graph-distance", "--random", "6", "3",
               "--seed", "11") == 0
    record = read_json(tmp_path, "run.json")
    assert record["graph"] == {"kind": "random", "n": 6, "extra": 3,
                               "seed": 11}
    assert (tmp_path / "graph.json").exists()


# -- flow ----------------------------------------------------------------------


def test_flow_from_distance(tmp_path, capsys):
    assert run(tmp_path, "flow", "--path", "5") == 0
    record = read_json(tmp_path, "run.json")
    # distance on the 5-path has squared norm 6, and flowing from a
    # ground state burns one unit of squared norm per unit time
    assert record["extinction_time"] == pytest.approx(6.0, rel=1e-9)
    assert record["profile_eigenvalue"] == pytest.approx(1.0 / 6.0, rel=1e-6)
    rows = read_rows(tmp_path, "trajectory.csv")
    assert rows[0] == ["t", "norm2", "energy"]
    assert len(rows) > 3
    profile = read_rows(tmp_path, "profile.csv")
    assert len(profile) == 6
    assert "flow finished: extinction at" in capsys.readouterr().out


def test_flow_from_csv_with_snapshots(tmp_path):
    initial = tmp_path / "start.csv"
    with open(initial, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", "value"])
        for i, v in enumerate([0.0, 2.0, 2.0, 0.0]):
            writer.writerow([i, v])
    assert run(tmp_path, "flow", "--path", "4", "--initial", str(initial),
               "--snapshots", "3") == 0
    record = read_json(tmp_path, "run.json")
    assert record["extinction_time"] == pytest.approx(4.0, rel=1e-9)
    rows = read_rows(tmp_path, "trajectory.csv")
    assert rows[0][:3] == ["t", "norm2", "energy"]
    assert rows[0][3:] == ["u0", "u1", "u2", "u3"]
    filled = [r for r in rows[1:] if r[3]]
    assert len(filled) >= 2
    assert float(filled[0][4]) == pytest.approx(2.0)


def test_flow_rejects_bad_step(tmp_path, capsys):
    assert run(tmp_path, "flow", "--path", "4", "--step", "-0.5") == 2
    assert "error:" in capsys.readouterr().err


def test_flow_rejects_incomplete_initial(tmp_path, capsys):
    initial = tmp_path / "short.csv"
    initial.write_text("vertex,value\n0,1.0\n", encoding="utf-8")
    assert run(tmp_path, "flow", "--path", "4",
               "--initial", str(initial)) == 2
    assert "no value for vertex" in capsys.readouterr().err


# -- certify ---------------------------------------------------------------------


def test_certify_distance_function(tmp_path, capsys):
    assert run(tmp_path, "certify", "--path", "4") == 0
    cert = read_json(tmp_path, "certificate.json")
    assert cert["lambda"] == pytest.approx(0.5, abs=1e-12)
    assert cert["residuals"]["balance_inf"] <= 1e-9
    assert read_json(tmp_path, "run.json")["feasible"] is True
    assert "certified" in capsys.readouterr().out


def test_certify_refutes_non_eigenfunction(tmp_path, capsys):
    candidate = tmp_path / "cand.csv"
    with open(candidate, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["vertex", "value"])
        for i, v in enumerate([0.0, 1.0, 2.0, 0.0]):
            writer.writerow([i, v])
    assert run(tmp_path, "certify", "--path", "4",
               "--function", str(candidate)) == 0
    cert = read_json(tmp_path, "certificate.json")
    assert cert["feasible"] is False
    assert cert["lambda"] == pytest.approx(0.4, abs=1e-12)
    assert "not an eigenfunction" in capsys.readouterr().out


def test_certify_rejects_out_of_range_vertex(tmp_path, capsys):
    candidate = tmp_path / "cand.csv"
    candidate.write_text("vertex,value\n7,1.0\n", encoding="utf-8")
    assert run(tmp_path, "certify", "--path", "4",
               "--function", str(candidate)) == 2
    assert "out of range" in capsys.readouterr().err


# -- continuum -------------------------------------------------------------------


def test_continuum_interval(tmp_path):
    assert run(tmp_path, "continuum", "--domain", "interval") == 0
    record = read_json(tmp_path, "run.json")
    assert record["t_star"] == pytest.approx(1.0 / 3.0, abs=1e-8)
    assert record["distance_norm_sq"] == pytest.approx(2.0 / 3.0, abs=1e-10)
    assert record["extinction_time"] == pytest.approx(1.0, abs=1e-8)
    rows = read_rows(tmp_path, "ramp.csv")
    assert rows[0] == ["t", "g"]
    moments = read_rows(tmp_path, "moments.csv")
    assert moments[0][:3] == ["g", "first_moment", "second_moment"]


def test_continuum_lshape_checks_bound(tmp_path):
    assert run(tmp_path, "continuum", "--domain", "lshape") == 0
    record = read_json(tmp_path, "run.json")
    assert record["perimeter_bound_ok"] is True
    assert record["inradius"] == pytest.approx(0.2)


def test_continuum_from_profile_csv(tmp_path):
    table = tmp_path / "disk.csv"
    with open(table, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tau", "perimeter"])
        for k in range(513):
            tau = k / 512.0
            writer.writerow([tau, 2.0 * math.pi * (1.0 - tau)])
    assert run(tmp_path, "continuum", "--profile-csv", str(table),
               "--dim", "2") == 0
    record = read_json(tmp_path, "run.json")
    assert record["t_star"] == pytest.approx(math.pi / 6.0, abs=1e-7)


def test_profile_csv_requires_dim(tmp_path, capsys):
    table = tmp_path / "p.csv"
    table.write_text("tau,perimeter\n0,2\n1,2\n", encoding="utf-8")
    assert run(tmp_path, "continuum", "--profile-csv", str(table)) == 2
    assert "--dim" in capsys.readouterr().err


# -- one-dimensional commands ------------------------------------------------


def test_basis_exact_output(tmp_path, capsys):
    assert run(tmp_path, "basis", "--kind", "even", "--n", "2") == 0
    record = read_json(tmp_path, "run.json")
    assert record["norm_sq"] == "2/27"
    assert record["rayleigh_quotient_sq"] == "27/2"
    rows = read_rows(tmp_path, "basis.csv")
    assert rows[0] == ["x", "value"]
    assert ["-2/3", "1/3"] in rows
    assert ["0", "-1/3"] in rows
    assert "2/27" in capsys.readouterr().out


def test_extreme_sawtooth(tmp_path, capsys):
    assert run(tmp_path, "extreme-1d", "--kind", "odd", "--n", "2") == 0
    record = read_json(tmp_path, "extreme.json")
    assert record["is_extreme"] is True
    assert not (tmp_path / "v_plus.csv").exists()
    assert "is extreme" in capsys.readouterr().out


def test_extreme_svc_distance(tmp_path, capsys):
    assert run(tmp_path, "extreme-1d", "--svc", "1") == 0
    record = read_json(tmp_path, "extreme.json")
    assert record["is_extreme"] is False
    assert record["split_point"] == "3/8"
    assert record["slack_measure"] == "3/4"
    assert (tmp_path / "v_plus.csv").exists()
    assert (tmp_path / "v_minus.csv").exists()
    assert "not extreme" in capsys.readouterr().out


def test_extreme_rejects_steep_input(tmp_path, capsys):
    steep = tmp_path / "steep.csv"
    steep.write_text("x,value\n0,0\n1/2,1\n1,0\n", encoding="utf-8")
    assert run(tmp_path, "extreme-1d", "--input", str(steep)) == 2
    assert "error:" in capsys.readouterr().err


def test_eigen_1d_ground_state(tmp_path, capsys):
    assert run(tmp_path, "eigen-1d", "--kind", "even", "--n", "1") == 0
    record = read_json(tmp_path, "eigen1d.json")
    assert record["feasible"] is True
    assert record["eigenvalue"] == "3/2"
    assert record["eigenvalue_float"] == pytest.approx(1.5)
    assert record["flux_start"] == "3/4"
    assert record["mass_gap"] == "0"
    assert "eigenvalue 3/2" in capsys.readouterr().out


def test_eigen_1d_refutes_trapezoid(tmp_path, capsys):
    trapezoid = tmp_path / "trap.csv"
    trapezoid.write_text("x,value\n0,0\n1,1\n2,1\n3,0\n", encoding="utf-8")
    assert run(tmp_path, "eigen-1d", "--input", str(trapezoid)) == 0
    record = read_json(tmp_path, "eigen1d.json")
    assert record["feasible"] is False
    assert "slack segment carries nonzero values" in record["reason"]
    assert "not an eigenfunction" in capsys.readouterr().out


def test_eigen_1d_exact_fraction_input(tmp_path):
    tent = tmp_path / "tent.csv"
    tent.write_text("x,value\n-1,0\n0,1\n1,0\n", encoding="utf-8")
    assert run(tmp_path, "eigen-1d", "--input", str(tent)) == 0
    assert read_json(tmp_path, "eigen1d.json")["eigenvalue"] == "3/2"


# -- report ----------------------------------------------------------------------


def test_report_graph_bundle(tmp_path):
    pytest.importorskip("matplotlib")
    assert run(tmp_path, "report", "--grid", "4", "4") == 0
    record = read_json(tmp_path, "run.json")
    for name in ("distance.csv", "trajectory.csv", "profile.csv",
                 "certificate.json", "flow.png", "distance.png",
                 "graph.json"):
        assert name in record["outputs"]
        assert (tmp_path / name).exists()
    for name in ("flow.png", "distance.png"):
        assert (tmp_path / name).read_bytes()[:8] == PNG_MAGIC


def test_report_continuum_bundle(tmp_path):
    pytest.importorskip("matplotlib")
    assert run(tmp_path, "report", "--domain", "interval") == 0
    record = read_json(tmp_path, "run.json")
    assert "ramp.png" in record["outputs"]
    assert (tmp_path / "ramp.png").read_bytes()[:8] == PNG_MAGIC


def test_report_no_figures(tmp_path):
    assert run(tmp_path, "report", "--domain", "disk", "--no-figures") == 0
    record = read_json(tmp_path, "run.json")
    assert all(not name.endswith(".png") for name in record["outputs"])
    assert not (tmp_path / "ramp.png").exists()
    assert (tmp_path / "ramp.csv").exists()
    assert (tmp_path / "moments.csv").exists()


# -- determinism -----------------------------------------------------------------


def test_continuum_rerun_is_byte_identical(tmp_path):
    assert run(tmp_path, "continuum", "--domain", "disk") == 0
    first = snapshot_bytes(tmp_path)
    assert run(tmp_path, "continuum", "--domain", "disk") == 0
    assert snapshot_bytes(tmp_path) == first


def test_flow_rerun_is_byte_identical(tmp_path):
    argv = ("flow", "--path", "6", "--snapshots", "4")
    assert run(tmp_path, *argv) == 0
    first = snapshot_bytes(tmp_path)
    assert run(tmp_path, *argv) == 0
    assert snapshot_bytes(tmp_path) == first
    assert set(first) == {"trajectory.csv", "profile.csv", "graph.json",
                          "run.json"}
