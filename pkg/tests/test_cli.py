import io
import json

import pytest

from quantale_lab.catalog import q2
from quantale_lab.cli import main
from quantale_lab.qnt import export_qnt


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def q2file(tmp_path):
    p = tmp_path / "q2.qnt"
    p.write_text(export_qnt(q2()), encoding="utf-8")
    return str(p)


def test_check_q2(capsys, q2file):
    code, out = run(capsys, "--format", "json", "check", q2file)
    data = json.loads(out)
    assert code == 0 and data["exit"] == 0
    for k in ("involutive", "semi-unital", "semi-integral", "pre-idempotent", "bisymmetric"):
        assert k in data["properties"]
    assert data["hermitian_spectrum"] == ["bot", "c"]


def test_check_broken_associativity(capsys, tmp_path):
    p = tmp_path / "bad.qnt"
    p.write_text(export_qnt(q2()).replace("mult: b: b b", "mult: b: al b"), encoding="utf-8")
    code, out = run(capsys, "--format", "json", "check", str(p))
    data = json.loads(out)
    assert code == 2 and data["error"] == "NotAssociative"
    assert len(data["witness"]) == 3


def test_two_chain_frame(capsys):
    code, out = run(capsys, "--format", "json", "check", "catalog:two")
    data = json.loads(out)
    assert code == 0 and "commutative" in data["properties"] and "unital" in data["properties"]


def test_catalog_pipes_into_check(capsys, monkeypatch):
    code, text = run(capsys, "catalog", "q2")
    assert code == 0 and text == export_qnt(q2())
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, out = run(capsys, "check", "-")
    assert code == 0 and "quantale: q2" in out


def test_output_is_deterministic(capsys, q2file):
    a = run(capsys, "--format", "json", "topologize", q2file, "--report", "base,separation,sober")
    b = run(capsys, "--format", "json", "topologize", q2file, "--report", "base,separation,sober")
    assert a == b


def test_topologize_base(capsys, q2file, tmp_path):
    out_file = tmp_path / "t.top"
    code, out = run(capsys, "--format", "json", "topologize", q2file, "--space", "sigma-L",
                    "--report", "base,separation,sober", "-o", str(out_file))
    data = json.loads(out)
    assert code == 0 and data["base_size"] == 9
    assert data["separation"]["T0"] and not data["separation"]["T1"]
    assert data["sober"]
    assert out_file.read_text().startswith("points: bot al\n")


def test_topologize_other_spaces(capsys):
    code, out = run(capsys, "--format", "json", "topologize", "catalog:q2", "--space", "sigma-s",
                    "--report", "separation")
    assert code == 0 and json.loads(out)["points"] == ["bot", "al", "ar", "c"]
    code, out = run(capsys, "--format", "json", "topologize", "catalog:q2", "--space", "sigma-h",
                    "--report", "sober")
    assert code == 0 and json.loads(out)["sober"]
    code, out = run(capsys, "topologize", "catalog:lq4", "--space", "sigma-s", "--report", "sober")
    assert code == 2


def test_enumerate_sq2(capsys):
    code, out = run(capsys, "enumerate-sq2")
    assert code == 0 and "6 isomorphism classes" in out


def test_spectrum_and_involutions(capsys):
    code, out = run(capsys, "--format", "json", "spectrum", "catalog:q2", "--hermitian")
    assert json.loads(out)["elements"] == ["bot", "c"]
    code, out = run(capsys, "--format", "json", "spectrum", "catalog:c3trivial", "--strong")
    assert code == 1 and json.loads(out)["count"] == 0
    code, out = run(capsys, "--format", "json", "involutions", "catalog:q2")
    assert code == 0 and json.loads(out)["involutions"] == [{"al": "ar", "ar": "al"}]
    code, out = run(capsys, "involutions", "catalog:c3l")
    assert code == 1


def test_tensor_command(capsys, tmp_path):
    out_file = tmp_path / "t.qnt"
    code, out = run(capsys, "--format", "json", "tensor", "catalog:c3l", "catalog:c3r", "-o", str(out_file))
    assert code == 0 and json.loads(out)["size"] == 6
    assert "# factorization:" in out_file.read_text()
    code, out = run(capsys, "--max-tensor", "3", "tensor", "catalog:q2", "catalog:q2")
    assert code == 2 and "SizeCapExceeded" in out


def test_quantic_frame_exit_codes(capsys, tmp_path):
    assert run(capsys, "quantic-frame", "catalog:q2")[0] == 0
    assert run(capsys, "quantic-frame", "catalog:c3trivial")[0] == 2


def test_coequalizer_command(capsys, tmp_path):
    spec = {"source": "catalog:two", "target": "catalog:q2",
            "f": {"bot": "bot", "top": "al"}, "g": {"bot": "bot", "top": "ar"}, "involutive": True}
    p = tmp_path / "coeq.json"
    p.write_text(json.dumps(spec))
    code, out = run(capsys, "--format", "json", "coequalizer", str(p))
    data = json.loads(out)
    assert code == 0 and data["pi"]["al"] == data["pi"]["ar"]
    p.write_text("{")
    assert run(capsys, "coequalizer", str(p))[0] == 2
    p.write_text(json.dumps({"source": "catalog:two"}))
    code, out = run(capsys, "coequalizer", str(p))
    assert code == 2 and "target" in out


def test_pushout_command(capsys, tmp_path):
    ident = {"bot": "bot", "a": "a", "top": "top"}
    spec = {"left": "catalog:c3l", "right": "catalog:c3r", "base": "catalog:two",
            "q_left": {"bot": "bot", "top": "top"}, "q_right": {"bot": "bot", "top": "top"},
            "theta_left": ident, "theta_right": ident}
    p = tmp_path / "po.json"
    p.write_text(json.dumps(spec))
    code, out = run(capsys, "--format", "json", "pushout-spectrum", str(p))
    data = json.loads(out)
    assert code == 0 and data["size"] == 6 and data["hermitian_spectrum"] == ["bot", "(a,top)|(top,a)"]


def test_errors(capsys, tmp_path):
    code, out = run(capsys, "check", str(tmp_path / "missing.qnt"))
    assert code == 2 and "cannot read" in out
    code, out = run(capsys, "catalog", "nope")
    assert code == 2 and "witness: nope" in out
    code, out = run(capsys, "catalog")
    assert code == 0 and "q2" in out
