from __future__ import annotations

import json
from pathlib import Path

import pytest

from biliaison.cli import main

CUBIC = "x*z-y^2; y*w-z^2; x*w-y*z"
PENCIL = "x*z-y^2; y*w-z^2"
FIXTURES = Path(__file__).resolve().parents[1] / "src" / "biliaison" / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_gb_report_shape(capsys):
    code, rep, _ = run(capsys, "gb", CUBIC, "--vars", "x,y,z,w")
    assert code == 0
    assert set(rep) == {"command", "inputs_digest", "seed", "outputs"}
    assert rep["outputs"]["groebner_basis"] == ["z^2 - y*w", "y*z - x*w", "y^2 - x*z"]


def test_timing_only_when_asked(capsys):
    _, rep, _ = run(capsys, "codim", CUBIC, "--vars", "x,y,z,w", "--timing")
    assert "timing" in rep


def test_parse_error_exit_code(capsys):
    code, rep, err = run(capsys, "gb", "x*(", "--vars", "x,y")
    assert code == 2 and rep is None
    assert json.loads(err)["error"] == "PolynomialParseError"


def test_output_is_deterministic(capsys):
    argv = ["gaeta", "run", "--matrix", str(FIXTURES / "tc" / "tc.mat"), "--seed", "3"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_field_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("BILIAISON_FIELD", "QQ")
    code, rep, _ = run(capsys, "gb", "x^2 - 1/2*y^2", "--vars", "x,y")
    assert code == 0 and rep["outputs"]["groebner_basis"] == ["x^2 - 1/2*y^2"]
    monkeypatch.setenv("BILIAISON_FIELD", "GF(7)")
    _, rep, _ = run(capsys, "gb", "x^2 - 1/2*y^2", "--vars", "x,y")
    assert rep["outputs"]["groebner_basis"] == ["x^2 + 3*y^2"]


def test_text_format(capsys):
    assert main(["codim", CUBIC, "--vars", "x,y,z,w", "--format", "text"]) == 0
    assert "codim" in capsys.readouterr().out


def test_link_and_replay(capsys, tmp_path):
    code, rep, _ = run(capsys, "link", "--vars", "x,y,z,w", "--Y", PENCIL, "--V1", CUBIC)
    assert code == 0 and rep["outputs"]["V2"] == "ideal { z; y }"
    path = tmp_path / "link.json"
    path.write_text(json.dumps(rep))
    code, rep2, _ = run(capsys, "verify-link", "--certificate", str(path))
    assert code == 0 and rep2["outputs"]["verified"]
    code, rep3, _ = run(capsys, "verify-biliaison", "--certificate", str(path))
    assert code == 0 and rep3["outputs"]["verified"]


def test_tampered_certificate_refuted(capsys, tmp_path):
    _, rep, _ = run(capsys, "link", "--vars", "x,y,z,w", "--Y", PENCIL, "--V1", CUBIC)
    rep["outputs"]["certificate"]["V2"] = "ideal { x; w }"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(rep))
    code, rep2, _ = run(capsys, "verify-link", "--certificate", str(path))
    assert code == 1 and not rep2["outputs"]["verified"]


def test_verify_link_refutes_non_link(capsys):
    code, rep, _ = run(capsys, "verify-link", "--vars", "x,y,z,w", "--Y", "x*y*z", "--V1", "x", "--V2", "y")
    assert code == 1 and not rep["outputs"]["verified"]


def test_strict_links_command(capsys, tmp_path):
    argv = ["strict-links", "--vars", "x,y,z,w", "--X", "x*w-y*z", "--V1", "x; z", "--V2", CUBIC, "--h", "1"]
    code, rep, _ = run(capsys, *argv)
    assert code == 0
    path = tmp_path / "sl.json"
    path.write_text(json.dumps(rep))
    code, rep2, _ = run(capsys, "verify-biliaison", "--certificate", str(path))
    assert code == 0 and len(rep2["outputs"]["checked"]) >= 2


def test_divisor_sections_fixture(capsys):
    code, rep, _ = run(capsys, "divisor", "sections", str(FIXTURES / "rmk2.9" / "point.div"), "--m", "1")
    assert code == 0
    assert rep["outputs"]["linear_system_dimension"] == 2
    assert rep["outputs"]["sections"]["sequence_exact"]


def test_lemma42_command(capsys):
    mat = "matrix rows=3 cols=3 { x, y, z ; y, z, x ; z, x, y+x }"
    code, rep, _ = run(capsys, "lemma42", mat, "0", "0", "1", "1", "--vars", "x,y,z")
    assert code == 0


def test_fixtures_check(capsys):
    code, rep, _ = run(capsys, "fixtures", "--check")
    assert code == 0
    assert all(v["match"] for v in rep["outputs"]["fixtures"].values())


def test_missing_file_is_inconclusive(capsys, tmp_path):
    code, _, err = run(capsys, "verify-biliaison", "--certificate", str(tmp_path / "nope.json"))
    assert code == 2 and err
