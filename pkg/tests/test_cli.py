import json
import subprocess
import sys

import pytest

from chaingroup.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chain_d8(capsys):
    code, out, _ = run(capsys, "chain", "D:8")
    assert code == 0
    assert out.splitlines()[0] == "classes: 2; group: Z2; eta: OK"


def test_lie_su2(capsys):
    code, out, _ = run(capsys, "lie", "SU2", "--lmax", "10")
    assert code == 0
    assert out.splitlines()[0] == "2 classes (integer / half-integer); Z2"


def test_lab_parseval(capsys):
    code, out, _ = run(capsys, "lab", "parseval", "regular:S3", "--samples", "100", "--json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["max_residual"] < 1e-9 and res["samples"] == 100


def test_lab_minimality_swap(capsys):
    code, out, _ = run(capsys, "lab", "minimality", "swap-blocks:2", "--json")
    res = json.loads(out)["result"]
    assert code == 0 and res["minimal"] is False and res["biconditional"] is True


def test_lab_intertwiners(capsys):
    code, out, _ = run(capsys, "lab", "intertwiners", "regular:Z3", "--json")
    dims = json.loads(out)["result"]["dims"]
    assert code == 0
    assert all((v == 0) == (a != b) for k, v in dims.items() for a, b in [k.split(",")])


def test_chartable_json_shape(capsys):
    code, out, _ = run(capsys, "chartable", "S:3", "--json")
    res = json.loads(out)["result"]
    assert sorted(res["dims"]) == [1, 1, 2]
    assert len(res["values"]) == 3 and len(res["values"][0][0]) == 2


def test_fusion_pair(capsys):
    code, out, _ = run(capsys, "fusion", "S:3", "--pair", "2", "2")
    assert code == 0 and out.strip() == "2a x 2a = 1a + 1b + 2a"


def test_center_action(capsys):
    code, out, _ = run(capsys, "center-action", "D:8", "--gamma", "2", "--hom", "1:(1 2)",
                       "--lambda", "0:1,4:1", "--json")
    res = json.loads(out)["result"]["action"]
    assert code == 0
    assert sorted(t["weight"] for t in res["terms"]) == [1, 2] and not res["central"]


def test_group(capsys):
    code, out, _ = run(capsys, "group", "perm:(1 2),(1 2 3)")
    assert code == 0 and "order 6" in out


def test_envelope(capsys):
    _, out, _ = run(capsys, "chain", "Q:8", "--json", "--seed", "3")
    env = json.loads(out)
    assert env["schema"] == "1" and env["command"] == "chain" and env["seed"] == 3
    assert env["input"]["group"] == "Q:8" and env["summary"]["ok"] is True


@pytest.mark.parametrize("argv,code", [
    (["chain", "X:3"], 2),
    (["chain"], 2),
    (["lie", "SU2", "--lmax", "1"], 4),
    (["chain", "perm:(1 2 3 4 5 6 7),(1 2)", "--cap", "50"], 5),
    (["center-action", "D:8", "--gamma", "2", "--lambda", "9:1"], 6),
    (["center-action", "D:8", "--gamma", "3", "--hom", "1:(1 2 3)", "--lambda", "0:1"], 6),
    (["lab", "intertwiners", "regular:S3"], 6),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code


def test_help_lists_exit_codes(capsys):
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--help"])
    out = capsys.readouterr().out
    for k in range(7):
        assert f"  {k}  " in out


def test_verify_all_subset(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "lie", "--json")
    rows = json.loads(out)["result"]
    assert code == 0 and len(rows) == 4 and all(r["passed"] for r in rows)


@pytest.mark.parametrize("argv", [
    ["chain", "D:12", "--json"],
    ["lab", "projections", "swap-blocks:2", "--json", "--samples", "20"],
    ["verify-all", "--only", "Q12", "--json"],
])
def test_json_byte_identical_across_processes(argv):
    cmd = [sys.executable, "-m", "chaingroup.cli", *argv, "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
