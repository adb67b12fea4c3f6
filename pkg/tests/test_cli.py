"""The batch command-line interface: parsing, outputs, determinism."""
import json

import pytest

from twoelem.cli import main, max_threads


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lattice_info(capsys):
    code, out, _ = run_cli(capsys, "lattice-info", "U+U+E8(2)")
    assert code == 0
    assert "rank r     12" in out
    assert "2-rank l   8" in out
    assert "delta      0" in out


def test_lattice_info_parse_error(capsys):
    code, _, err = run_cli(capsys, "lattice-info", "U+XYZ")
    assert code == 2
    assert "parse error" in err


def test_qseries_output(capsys):
    code, out, _ = run_cli(capsys, "qseries", "f0", "-k", "8", "--order", "3")
    assert code == 0
    assert "-1/1  1 0 0 0" in out       # principal part q^-1
    assert "0/1  24 0 0 0" in out       # constant term 8 + 2k


def test_qseries_unknown_name(capsys):
    code, _, err = run_cli(capsys, "qseries", "nope")
    assert code == 2
    assert "unknown series" in err


def test_borcherds_report(capsys):
    code, out, _ = run_cli(capsys, "borcherds", "report", "U+U+E8(2)",
                           "--order", "2")
    assert code == 0
    assert "weight (closed)  12" in out
    assert "weight (series)  12" in out
    assert "ledger" in out


def test_borcherds_report_rejects_wrong_signature(capsys):
    code, _, err = run_cli(capsys, "borcherds", "report", "A1")
    assert code == 2
    assert "signature" in err


def test_siegel_eval(capsys, tmp_path):
    mat = tmp_path / "sigma.json"
    mat.write_text(json.dumps([[[0.0, 1.0]]]))
    code, out, _ = run_cli(capsys, "siegel", "eval", "--sigma", str(mat),
                           "--prec", "64")
    assert code == 0
    assert "genus            1" in out
    assert "0.906767655" in out  # chi_1(i) = 2 eta(i)^3


def test_siegel_eval_bad_matrix(capsys, tmp_path):
    mat = tmp_path / "sigma.json"
    mat.write_text(json.dumps([[[0.0, 1.0], [0.5, 0.0]]]))
    code, _, err = run_cli(capsys, "siegel", "eval", "--sigma", str(mat))
    assert code == 2
    assert "error" in err


def test_verify_suite_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "weil", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert all(c["ok"] for c in data["checks"])


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "everything"])


def test_export_graph_deterministic(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["export-graph", "--format", "json", "--out", str(p1)]) == 0
    assert main(["export-graph", "--format", "json", "--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    data = json.loads(p1.read_text())
    assert len(data["table1"]) == 43
    assert len(data["vertices"]) >= 43


def test_export_graph_dot(capsys, tmp_path):
    p = tmp_path / "g.dot"
    assert main(["export-graph", "--format", "dot", "--out", str(p)]) == 0
    text = p.read_text()
    assert text.startswith("digraph")
    assert "->" in text


def test_thread_cap_env(monkeypatch):
    monkeypatch.setenv("TWOELEM_THREADS", "4")
    assert max_threads() == 4
    monkeypatch.setenv("TWOELEM_THREADS", "junk")
    assert max_threads() == 1
    monkeypatch.delenv("TWOELEM_THREADS")
    assert max_threads() == 1


def test_order_flag_validation(capsys):
    with pytest.raises(SystemExit):
        main(["qseries", "f0", "--order", "-2"])
    with pytest.raises(SystemExit):
        main(["siegel", "eval", "--sigma", "x.json", "--prec", "10"])
