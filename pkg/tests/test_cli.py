from __future__ import annotations

import csv
import io
import json

import pytest

from linenet.cli import main


def rows(path):
    return list(csv.DictReader(io.StringIO(path.read_text(encoding="utf-8"))))


def run(tmp_path, *argv):
    return main(["--manifest", str(tmp_path / "run.manifest.json"), *argv])


def manifest(tmp_path):
    return json.loads((tmp_path / "run.manifest.json").read_text(encoding="utf-8"))


def test_jm_asymptotic_row(tmp_path):
    out = tmp_path / "jm.csv"
    assert run(tmp_path, "jm", "--m", "1e4", "--method", "asymptotic", "--seed", "1", "--out", str(out)) == 0
    r = rows(out)
    assert len(r) == 1 and r[0]["method"] == "asymptotic"
    assert float(r[0]["semi_excess"]) == pytest.approx(15.2723, abs=1e-4)
    assert out.read_bytes().startswith(b"m,method,J_m,semi_excess,std_error,abs_tol,replicates,seed\r\n")
    m = manifest(tmp_path)
    assert m["status"] == "ok" and m["outputs"] == [str(out)] and m["seeds"] == [1]


def test_jm_all_methods(tmp_path):
    out = tmp_path / "jm.csv"
    assert run(tmp_path, "jm", "--m", "100,1000", "--replicates", "50", "--seed", "3", "--out", str(out)) == 0
    r = rows(out)
    assert [x["method"] for x in r] == ["mc", "quad", "asymptotic"] * 2
    mc = [x for x in r if x["method"] == "mc"][0]
    assert float(mc["std_error"]) > 0 and int(mc["replicates"]) == 50


def test_jm_zero_replicates_is_usage_error(tmp_path):
    out = tmp_path / "jm.csv"
    assert run(tmp_path, "jm", "--m", "10", "--replicates", "0", "--method", "mc", "--seed", "1",
               "--out", str(out)) == 2
    assert not out.exists()
    m = manifest(tmp_path)
    assert m["status"] == "usage-error" and m["exit_code"] == 2


def test_missing_seed_fails_with_manifest(tmp_path):
    assert run(tmp_path, "jm", "--m", "10") != 0
    assert manifest(tmp_path)["exit_code"] != 0


def test_build_is_byte_identical_and_accounting(tmp_path):
    outs = []
    for k in range(2):
        j, a, s = tmp_path / f"net{k}.json", tmp_path / f"acc{k}.json", tmp_path / f"net{k}.svg"
        assert run(tmp_path, "build", "--uniform", "1000", "--intensity", "0.1", "--seed", "7",
                   "--out-json", str(j), "--out-svg", str(s), "--out-accounting", str(a)) == 0
        outs.append((j.read_bytes(), a.read_bytes(), s.read_bytes()))
    assert outs[0] == outs[1]
    acc = json.loads(outs[0][1])
    n, side, sgrid = acc["n"], acc["side"], acc["s"]
    assert acc["accounting"]["MediumGrid"] == pytest.approx(2 * (1 + side / sgrid) * side, rel=1e-9)
    assert acc["connected"] and n == 1000
    assert b'id="layer-poisson-line"' in outs[0][2]


def test_build_without_lines(tmp_path):
    a = tmp_path / "acc.json"
    assert run(tmp_path, "build", "--uniform", "200", "--intensity", "0", "--seed", "1",
               "--out-json", str(tmp_path / "n.json"), "--out-accounting", str(a)) == 0
    assert json.loads(a.read_text())["accounting"]["PoissonLine"] == 0


def _write_l_network(tmp_path):
    net = {"nodes": [[0, 0], [3, 0], [3, 4]], "edges": [[0, 1, 3.0, "Tree"], [1, 2, 4.0, "Tree"]]}
    (tmp_path / "l.json").write_text(json.dumps(net))
    (tmp_path / "l.csv").write_text("x,y\n0,0\n3,0\n3,4\n")


def test_stats_l_network(tmp_path):
    _write_l_network(tmp_path)
    out, pairs = tmp_path / "s.json", tmp_path / "p.csv"
    assert run(tmp_path, "stats", "--network", str(tmp_path / "l.json"), "--points", str(tmp_path / "l.csv"),
               "--pairs", "all", "--seed", "0", "--out", str(out), "--pairs-csv", str(pairs)) == 0
    rep = json.loads(out.read_text())
    assert rep["excess"] == pytest.approx(2 / 3)
    assert len(rows(pairs)) == 3
    assert str(pairs) in manifest(tmp_path)["outputs"]


def test_stats_node_mismatch(tmp_path):
    _write_l_network(tmp_path)
    (tmp_path / "bad.csv").write_text("x,y\n0,0\n1,1\n")
    code = run(tmp_path, "stats", "--network", str(tmp_path / "l.json"), "--points", str(tmp_path / "bad.csv"),
               "--seed", "0", "--out", str(tmp_path / "s.json"))
    assert code == 1
    assert "NodeMismatch" in manifest(tmp_path)["error"]


def test_build_then_stats_sampled_vs_all(tmp_path):
    j = tmp_path / "n.json"
    assert run(tmp_path, "build", "--uniform", "150", "--intensity", "0.5", "--seed", "2", "--out-json", str(j)) == 0
    doc = json.loads(j.read_text())
    # the uniform configuration is regenerated from the same seed
    from linenet.netbuild import Configuration
    cfg = Configuration.uniform(150, 2)
    pts = tmp_path / "pts.csv"
    pts.write_text("x,y\n" + "".join(f"{x!r},{y!r}\n" for x, y in cfg.xy.tolist()))
    assert len(doc["nodes"]) > 150
    full, samp = tmp_path / "a.json", tmp_path / "b.json"
    assert run(tmp_path, "stats", "--network", str(j), "--points", str(pts), "--pairs", "all",
               "--seed", "0", "--out", str(full)) == 0
    assert run(tmp_path, "stats", "--network", str(j), "--points", str(pts), "--pairs", "random",
               "--count", "600", "--seed", "4", "--out", str(samp)) == 0
    a, b = json.loads(full.read_text()), json.loads(samp.read_text())
    assert abs(a["excess"] - b["excess"]) < 3 * b["excess_std_error"]


def test_equidist_and_search_and_scaling(tmp_path):
    e = tmp_path / "e.json"
    assert run(tmp_path, "equidist", "--uniform", "100", "--L", "3", "--repeats", "2", "--seed", "0",
               "--out", str(e)) == 0
    doc = json.loads(e.read_text())
    assert 0 <= doc["cost"] <= 1 and len(doc["repeats"]) == 2
    s, net = tmp_path / "s.json", tmp_path / "acc_net.json"
    assert run(tmp_path, "search", "--uniform", "150", "--intensity", "0.5", "--pilot", "3", "--seed", "1",
               "--out", str(s), "--out-network", str(net)) == 0
    doc = json.loads(s.read_text())
    assert doc["accepted"] and doc["calibrated"] and net.exists()
    s0 = tmp_path / "s0.json"
    code = run(tmp_path, "search", "--uniform", "150", "--intensity", "0.5", "--length-threshold", "0",
               "--excess-threshold", "0", "--max-attempts", "2", "--seed", "1", "--out", str(s0))
    assert code == 1 and len(json.loads(s0.read_text())["attempts"]) == 2
    sc = tmp_path / "sc.csv"
    assert run(tmp_path, "scaling", "--n", "50,100", "--seeds", "2", "--seed", "0", "--out", str(sc)) == 0
    r = rows(sc)
    assert len(r) == 6 and [x["seed"] for x in r].count("mean") == 2


def test_cell_svg(tmp_path):
    out = tmp_path / "c.svg"
    assert run(tmp_path, "cell-svg", "--m", "5", "--seed", "2", "--out", str(out)) == 0
    text = out.read_text()
    assert 'id="cell"' in text and 'id="deleted-lines"' in text


def test_version_writes_no_manifest(tmp_path, capsys):
    assert main(["--manifest", str(tmp_path / "v.json"), "--version"]) == 0
    assert capsys.readouterr().out.strip() == "0.1.0"
    assert not (tmp_path / "v.json").exists()
