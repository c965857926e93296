import io
import json
import shutil
import subprocess
import sys

import pytest

from quotcusp import cli
from quotcusp.abelian_covers import uac_cycle
from quotcusp.unimodular import QcClass


def call(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), out=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_uac():
    code, out = call_json("uac", "--qc", "2,1,1,1")
    assert code == 0
    assert out["degree"] == 16 and out["cycle"] == [4, 2, 4, 2]
    assert out["equations"] == ["x*y = u^4 + v^4", "u*v = x^2 + y^2"]


def test_factor_and_ci():
    assert call_json("factor", "--matrix", "2,1,1,1")[1]["e"] == [2, 3]
    assert call_json("is-ci", "--cycle", "2,4,2,2,5")[1] == {"ci": False, "sum": 5}


def test_keys_sorted_and_stable():
    _, text = call("uac", "--qc", "2,1,3,2")
    data = json.loads(text)
    assert json.dumps(data, sort_keys=True) == text.strip()


def test_thin_adapter_matches_library():
    r = uac_cycle(QcClass(3, 2, 4, 3))
    _, out = call_json("uac", "--qc", "3,2,4,3")
    assert out["cycle"] == list(r.cycle.weights) and out["degree"] == r.degree
    assert out["z_matrix"] == r.z_matrix.tolist()


def test_big_integers_as_strings():
    assert cli.jsonable(2**53 - 1) == 2**53 - 1
    assert cli.jsonable(2**53) == str(2**53)
    assert cli.jsonable(-(2**60)) == str(-(2**60))
    # a cycle whose monodromy has entries beyond the safe range
    _, out = call_json("monodromy", "--cycle", ",".join(["30"] * 12))
    assert isinstance(out["trace"], str) and int(out["trace"]) > 2**53


def test_negative_matrix_entries():
    code, out = call_json("complement", "--matrix", "-1,-2,4,7", "--lattice", "2,0,0,1")
    assert code == 0 and out["subgroup_order"] == 2 and out["complement_order"] == 2
    code, out = call_json("duality-check", "--matrix", "-1,-2,4,7", "--lattice", "2,0,0,1")
    assert code == 0 and out["passed"]
    code, out = call_json("discriminant", "--matrix", "-1,-2,4,7")
    assert out["group"]["invariant_factors"] == [2, 2]


@pytest.mark.parametrize(
    "argv, key",
    [
        (("build", "--e", "2,3"), "matrix"),
        (("monodromy", "--cycle", "2,4"), "trace"),
        (("dual", "--cycle", "2,4,2,2,5"), "dual"),
        (("reduce", "--matrix", "3,4,2,3"), "cycle"),
        (("double-cover", "--qc", "2,1,1,1"), "cycle"),
        (("covers2", "--e", "2,3"), "v_cover"),
        (("discriminant", "--cycle", "2,4,2,2,5"), "order"),
        (("discriminant", "--qc", "2,1,1,1"), "order"),
        (("hypersurface", "--matrix", "0,-1,1,5"), "cycle"),
        (("group", "--qc", "2,1,1,1"), "census"),
        (("group", "--qc", "2,1,3,2", "--exponents", "1,3,1,3"), "character_check"),
    ],
)
def test_subcommands_succeed(argv, key):
    code, out = call_json(*argv)
    assert code == 0 and key in out


def test_verify_passes():
    for qc in ("2,1,1,1", "2,1,3,2", "3,2,4,3"):
        code, out = call_json("verify", "--qc", qc)
        assert code == 0 and out["passed"], out
        assert len(out["checks"]) == 7


def test_verify_records_failures(monkeypatch):
    def boom(qc):
        raise RuntimeError("forced")

    monkeypatch.setattr(cli.ac, "uac_cycle", boom)
    code, out = call_json("verify", "--qc", "2,1,1,1")
    assert not out["passed"]
    failed = [c["name"] for c in out["checks"] if not c["passed"]]
    assert failed == ["trace oracle", "complete intersection sum"]


def test_validation_errors():
    code, out = call_json("verify", "--qc", "2,1,1,2")
    assert code == 2 and out["error"]["code"] == "not_unimodular"
    code, out = call_json("factor", "--matrix", "1,x,1,1")
    assert code == 2 and out["error"]["code"] == "invalid_input"
    code, out = call_json("is-ci", "--cycle", "2,2")
    assert code == 2 and out["error"]["code"] == "invalid_sequence"
    code, out = call_json("group", "--qc", "2,1,1,1", "--exponents", "2,2,1,1")
    assert code == 2 and out["error"]["code"] == "invalid_exponents"


def test_usage_errors():
    assert call("frobnicate")[0] == 64
    assert call()[0] == 64
    assert call("uac")[0] == 64


def test_emit_dot():
    code, text = call("emit-dot", "--cycle", "2,4,2,2,5")
    assert code == 0 and text.startswith("graph cusp {") and "circo" in text
    code, text = call("emit-dot", "--qc", "2,1,1,1")
    assert code == 0 and text.count("--") == 5


def test_console_script():
    exe = shutil.which("cuspcli")
    cmd = [exe] if exe else [sys.executable, "-c", "from quotcusp.cli import main; main()"]
    p = subprocess.run(cmd + ["is-ci", "--cycle", "3"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout) == {"ci": True, "sum": 1}
    p = subprocess.run(cmd + ["nope"], capture_output=True, text=True)
    assert p.returncode == 64
