import io
import json
import subprocess
import sys

import pytest

from g24star.cli import main
from g24star.export import order_from_json
from g24star.recurrence import recurrence_T_table


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_coeff_n1_text():
    code, out = run("coeff", "--n", "1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 16 and all("[h]*g[" in l for l in lines)


def test_coeff_json_roundtrip():
    code, out = run("coeff", "--n", "2", "--format", "json")
    assert code == 0
    back = order_from_json(json.loads(out))
    rec = recurrence_T_table(2)
    assert all(back.get_T(*k) == rec.get_T(*k) for k in rec if k[0] == 2)


def test_coeff_csv_header():
    code, out = run("coeff", "--n", "1", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "n,alpha,beta,mono,num,den"


def test_verify_recurrence_passes():
    code, out = run("verify", "--suite", "recurrence", "--n", "3")
    assert code == 0 and "FAIL" not in out and out.count("PASS") >= 10


def test_verify_json():
    code, out = run("verify", "--suite", "i-independence,fock", "--n", "2", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["pass"] and len(obj["results"]) == 6


def test_verify_failure_exit_code(monkeypatch):
    from g24star import verify
    monkeypatch.setattr(verify, "run_suite", lambda *a, **k: [("forced", False)])
    code, out = run("verify", "--suite", "fock")
    assert code == 1 and "FAIL" in out


def test_eval_unit_law(tmp_path):
    pt = tmp_path / "origin.json"
    pt.write_text(json.dumps({"z[1,1]": ["0", "0"]}))
    code, out = run("eval", "--f", "z[1,1]", "--g", "1", "--order", "2", "--hbar", "1/10",
                    "--point", str(pt), "--format", "json")
    assert code == 0
    assert json.loads(out)["value"] == ["0", "0"]
    pt.write_text(json.dumps({"z[1,1]": ["0.5", "-1/4"]}))
    code, out = run("eval", "--f", "z[1,1]", "--g", "1", "--order", "2", "--hbar", "1/10",
                    "--point", str(pt), "--format", "json")
    assert json.loads(out)["value"] == ["1/2", "-1/4"]


def test_eval_first_order_at_origin():
    # zbar * z at Z = 0 is hbar g^{11'} = hbar
    code, out = run("eval", "--f", "zb[1,1]", "--g", "z[1,1]", "--order", "1", "--hbar", "1/3",
                    "--format", "json")
    assert code == 0 and json.loads(out)["value"] == ["1/3", "0"]


def test_eval_triple():
    code, out = run("eval", "--f", "z[1,1]", "--g", "zb[1,2]", "--h", "z[2,1]*zb[2,1]", "--order", "2",
                    "--format", "csv")
    assert code == 0 and out.startswith("k,re,im")


@pytest.mark.parametrize("argv", [
    ("coeff", "--n", "7"),
    ("coeff", "--n", "2", "--pq", "2,3"),
    ("verify", "--suite", "nope"),
    ("eval", "--f", "z[1,", "--g", "1"),
    ("eval", "--f", "z[1,1]", "--g", "1", "--order", "4"),
    ("eval", "--f", "z[1,1]", "--g", "1", "--point", "/nonexistent.json"),
    ("eval", "--f", "z[1,1]", "--g", "1", "--hbar", "abc"),
    ("coeff", "--format", "xml"),
    ("frobnicate",),
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "g24star", "coeff", "--n", "0"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "T^0" in out.stdout
