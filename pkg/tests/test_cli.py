import io
import json
import subprocess
import sys

import pytest

from cliffhopf.cli import main


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setenv("CLIFFHOPF_CONFIG", str(tmp_path / "none.json"))
    monkeypatch.delenv("CLIFFHOPF_TOL", raising=False)


def cli(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_eval_text_and_json():
    code, out = cli("eval", "-e", "comm(P0, P1)")
    assert code == 0 and out.strip() == "0"
    code, out = cli("eval", "-e", "comm(P0, K0)", "--json")
    data = json.loads(out)
    assert data["value"]["multivector"]["gamma0^gamma1^gamma2^gamma3"] == [0.0, 1.0]


def test_eval_syntax_error_is_json(capsys):
    code, _ = cli("eval", "-e", "gamma0 +", "--json")
    assert code == 2
    err = json.loads(capsys.readouterr().err)
    assert err["type"] == "ExprSyntaxError" and "byte 8" in err["message"]


def test_unknown_flag_exit_code():
    code, _ = cli("eval", "-e", "x", "--bogus")
    assert code == 2


def test_verify_conformal_exit_zero():
    code, out = cli("verify", "conformal", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["pass"] == 456 and data["summary"]["fail"] == 0


def test_verify_nu_mu_exits_one():
    code, _ = cli("verify", "conformal", "--orientation", "nu_mu")
    assert code == 1


def test_verify_kappa_needs_kappa(capsys):
    code, _ = cli("verify", "kappa_algebra", "--json")
    assert code == 2
    assert json.loads(capsys.readouterr().err)["type"] == "MissingParameter"


def test_verify_unknown_suite():
    code, _ = cli("verify", "no_such_suite")
    assert code == 2


def test_verify_byte_identical():
    a = cli("verify", "kappa_coalgebra", "--kappa", "1", "--json")
    b = cli("verify", "kappa_coalgebra", "--kappa", "1", "--json")
    assert a == b and a[0] == 0


def test_verify_with_deformation_file(tmp_path):
    d = tmp_path / "A.json"
    d.write_text(json.dumps({"signature": [1, -1, -1, -1],
                             "A": [[0, 0.2, 0, 0], [-0.2, 0, 0, 0], [0, 0, 0, 0.1], [0, 0, -0.1, 0]]}))
    code, out = cli("verify", "conformal", "--deform", str(d), "--mode", "both", "--json")
    assert code == 0
    assert json.loads(out)["environment"]["deform_mode"] == "both"


def test_export_and_verify_file(tmp_path):
    path = tmp_path / "s.json"
    code, _ = cli("export-suite", "conformal_symmetry", "-o", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["name"] == "conformal_symmetry"
    code, out = cli("verify", str(path))
    assert code == 0


def test_hopf_check():
    code, out = cli("hopf-check", "--sig", "CL24", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert max(data["residuals"].values()) == 0


def test_conformal_commands():
    code, out = cli("conformal", "apply", "--map", '{"kind": "dilation", "rho": 4}', "-x", "1,0,0,0", "--json")
    assert code == 0 and json.loads(out) == {"x_prime": [4.0, 0.0, 0.0, 0.0], "delta": 0.25}
    code, out = cli("conformal", "conformality", "--map", '{"kind": "dilation", "rho": 2}',
                    "-x", "0.5,0.1,0,0", "--json")
    assert code == 0 and abs(json.loads(out)["lambda"] - 4) < 1e-4


def test_conformal_point_at_infinity(capsys):
    code, _ = cli("conformal", "apply", "--map", '{"kind": "inversion"}', "-x", "0,0,0,0", "--json")
    assert code == 2
    assert json.loads(capsys.readouterr().err)["type"] == "PointAtInfinity"


def test_fit_conformal():
    code, out = cli("fit", "conformal", "--json")
    data = json.loads(out)
    assert code == 0 and data["objective"] == 0 and data["iterations"] == 0


def test_tolerance_env(monkeypatch):
    monkeypatch.setenv("CLIFFHOPF_TOL", "1e-3")
    _, out = cli("verify", "conformal", "--json")
    assert json.loads(out)["environment"]["tolerance"] == 1e-3
    _, out = cli("verify", "conformal", "--json", "--tol", "1e-6")
    assert json.loads(out)["environment"]["tolerance"] == 1e-6


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cliffhopf.cli", "eval", "-e", "2*D"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and "gamma0^gamma1^gamma2^gamma3" in proc.stdout
