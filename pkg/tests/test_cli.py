import json
import subprocess
import sys

from izeta.cli import main

from conftest import DATA, CHAIN


def test_analyze_chain_ideal(capsys):
    assert main(["analyze", "--ideal", CHAIN]) == 0
    out = capsys.readouterr().out
    for piece in ["E1 (4,2)", "E2 (5,3)", "E3 (6,4)", "poles: -2/3, -1/2", "(1-t^4)^3*(1-t^6)", "conjecture: VERIFIED"]:
        assert piece in out


def test_analyze_maximal_ideal(tmp_path):
    out = tmp_path / "r.json"
    assert main(["analyze", "--ideal", "x, y", "--json", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema_version"] == 1
    assert rep["zeta"]["text"] == "(2) / ((2 + s))"
    assert [p["value"] for p in rep["poles"]["from_zeta"]] == ["-2"]
    assert rep["conjecture"]["verdict"] == "VERIFIED"


def test_analyze_unit_ideal(capsys):
    assert main(["analyze", "--ideal", "1"]) == 1
    assert "ideal does not vanish at the origin" in capsys.readouterr().err


def test_analyze_parse_error(capsys):
    assert main(["analyze", "--ideal", "x^^2, y"]) == 1
    assert "position 2" in capsys.readouterr().err


def test_analyze_irrational_center(capsys):
    assert main(["analyze", "--ideal", "x^2+y^2, x^3"]) == 1
    assert "v^2 + 1" in capsys.readouterr().err


def test_analyze_writes_dot_and_skips_conjecture(tmp_path):
    dot, js = tmp_path / "g.dot", tmp_path / "r.json"
    assert main(["analyze", "--ideal", CHAIN, "--dot", str(dot), "--json", str(js), "--no-conjecture"]) == 0
    assert dot.read_text().startswith("graph")
    assert "conjecture" not in json.loads(js.read_text())


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("IZETA_SEED", "4")
    out = tmp_path / "r.json"
    main(["analyze", "--ideal", CHAIN, "--json", str(out)])
    assert json.loads(out.read_text())["input"]["seed"] == 4


def test_graph_branched_monodromy(capsys):
    assert main(["graph", "--in", str(DATA / "branched.graph.json"), "--monodromy"]) == 0
    assert "(1-t^2)*(1-t^3)/(1-t^6)" in capsys.readouterr().out


def test_graph_chain_zeta(capsys):
    assert main(["graph", "--in", str(DATA / "chain.graph.json"), "--zeta"]) == 0
    assert "poles: -2/3, -1/2" in capsys.readouterr().out


def test_graph_validation_failure(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert main(["graph", "--in", str(DATA / "bad_alpha.graph.json"), "--zeta", "--json", str(out)]) == 1
    assert "FAIL alpha sum relation [E3]" in capsys.readouterr().err
    assert json.loads(out.read_text())["validation"]["ok"] is False


def test_corpus_of_known_cases(capsys):
    assert main(["corpus", "--dir", str(DATA / "corpus")]) == 0
    out = capsys.readouterr().out
    assert "5/5 passed" in out


def test_corpus_in_parallel(capsys):
    assert main(["corpus", "--dir", str(DATA / "corpus"), "--jobs", "2"]) == 0
    assert "5/5 passed" in capsys.readouterr().out


def test_corpus_reports_bad_cases(tmp_path, capsys):
    (tmp_path / "broken.ideal").write_text("x^^2\n")
    (tmp_path / "ok.ideal").write_text("x, y\n")
    assert main(["corpus", "--dir", str(tmp_path)]) == 1
    out = capsys.readouterr().out
    assert "broken" in out and "1/2 passed" in out


def test_empty_corpus(tmp_path, capsys):
    assert main(["corpus", "--dir", str(tmp_path)]) == 1
    assert "no cases found" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "izeta", "analyze", "--ideal", "x^4, x*y^2, y^3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "exp(-5*pi*i/4)" in proc.stdout


def test_violation_exit_code(monkeypatch):
    import izeta.pipeline as pipeline
    from izeta.conjecture import ConjectureReport, PoleCertificate

    def fake(g, mono, z):
        return ConjectureReport([PoleCertificate(-1, "violation", diagnostics="forced")])

    monkeypatch.setattr(pipeline, "check_conjecture", fake)
    assert main(["analyze", "--ideal", "x, y"]) == 2
