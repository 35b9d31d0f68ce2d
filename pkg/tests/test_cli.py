import json

import pytest

from legtors.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_tset_example(capsys):
    code, js = run_json(capsys, "tset", "--alpha", "3", "--beta", "-3", "--max-order", "8")
    assert code == 0 and js["schema"] == 1
    assert [m["lambda"] for m in js["members"]] == ["-3", "9"]


def test_census_table(capsys):
    code, out, _ = run(capsys, "census", "--max-bidegree", "2", "--format", "table")
    assert code == 0
    for row in ("(1,1)     3", "(1,2)     3", "(2,1)     3", "(2,2)     18"):
        assert row in out


def test_census_json(capsys):
    code, js = run_json(capsys, "census", "--max-bidegree", "2")
    rows = {tuple(r["bidegree"]): r["count"] for r in js["rows"]}
    assert rows[(2, 2)] == 18


@pytest.mark.parametrize("argv", [["nonsense"], [], ["psi"], ["psi", "--n", "3", "--bogus"],
                                  ["verify", "--suite", "unknown"], ["order", "--lambda", "1/0", "--x", "2",
                                                                     "--max", "4"],
                                  ["order", "--lambda", "1", "--x", "2", "--max", "4"],
                                  ["psi", "--n", "3", "--eval", "lambda=2"]])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_order_and_certificate(capsys):
    code, js = run_json(capsys, "order", "--lambda", "9", "--x", "3", "--max", "12")
    assert (js["tag"], js["n"]) == ("order", 4)
    code, js = run_json(capsys, "certify-nontorsion", "--lambda", "5", "--x", "2", "--primes", "3,7,11,13")
    assert js["status"] == "certified"


def test_order_in_field(capsys):
    code, js = run_json(capsys, "order", "--field", "t^2+1;i=t", "--lambda", "-1", "--x", "i", "--max", "8")
    assert js["n"] == 4
    code, js = run_json(capsys, "order", "--field", "t^2+1;i=t", "--lambda", "i", "--x=-i", "--max", "4")
    assert js["tag"] == "exceeds_bound"


def test_tset_over_field(capsys):
    code, js = run_json(capsys, "tset", "--field", "t^4-4*t^2+2;s2=t^2-2;r=t^3-3*t;alpha=1+s2;beta=-1+s2",
                        "--max-order", "12")
    assert code == 0 and js["complete"]
    assert sorted(tuple(m["orders"]) for m in js["members"]) == [(4, 4), (5, 10), (5, 10)]


def test_psi_commands(capsys):
    code, js = run_json(capsys, "psi", "--family", "weierstrass", "--n", "3")
    assert js["poly"] == "3*x^4 + 6*A*x^2 + 12*B*x - A^2"
    code, js = run_json(capsys, "psi", "--n", "3", "--eval", "lambda=9,x=3")
    assert js["value"] == "-432"
    code, js = run_json(capsys, "psi", "--n", "12", "--check", "congruence")
    assert code == 0 and js["pass"] is True
    code, js = run_json(capsys, "psi", "--family", "weierstrass", "--n", "3", "--eval", "A=-7,B=6,x=3")
    assert js["value"] == str(3 * 81 + 6 * -7 * 9 + 12 * 6 * 3 - 49)


def test_screen_and_friends(capsys):
    code, js = run_json(capsys, "screen", "--alpha", "2", "--beta", "4", "--decide", "--max", "12")
    assert js["decision"]["members"] == ["4"]
    code, js = run_json(capsys, "roots-of-unity", "--order", "12", "--verify")
    assert code == 0 and js["verified"] and len(js["members"]) == 3
    code, js = run_json(capsys, "weierstrass-screen", "--x1", "1", "--x2", "2", "--x3", "3", "--max", "8")
    assert [(r["A"], r["B"]) for r in js["rows"]] == [("-7", "6"), ("-13", "12"), ("-19", "30")]


def test_resultant_and_table(capsys):
    code, js = run_json(capsys, "resultant", "--m", "3", "--check-squarefree")
    assert code == 0 and js["bidegree"] == [6, 6] and js["squarefree"]
    assert main(["resultant", "--m", "9"]) == 2


def test_verify_table1_failure_exit(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("[1,1]\na + 2*b + 7\n")
    code, js = run_json(capsys, "verify-table1", "--corpus", str(bad))
    assert code == 1 and not js["ok"]


def test_json_is_deterministic(capsys):
    argv = ["tset", "--alpha", "3/8", "--beta", "-9/16", "--max-order", "8", "--format", "json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}.{k}" if prefix else k))
        return out
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = {}
        for i, v in enumerate(obj):
            out.update(_flatten(v, f"{prefix}[{i}]"))
        return out
    return {prefix: obj}


@pytest.mark.parametrize("argv", [["tset", "--alpha", "3", "--beta", "-3", "--max-order", "8"],
                                  ["order", "--lambda", "9", "--x", "3", "--max", "12"],
                                  ["screen", "--alpha", "3", "--beta", "-3", "--decide"],
                                  ["census", "--max-bidegree", "2"]])
def test_text_and_json_agree(capsys, argv):
    main(argv + ["--format", "json"])
    js = json.loads(capsys.readouterr().out)
    main(argv + ["--format", "text"])
    text = capsys.readouterr().out.strip().splitlines()
    parsed = {}
    for line in text:
        k, _, v = line.partition(": ")
        parsed[k] = json.loads(v)
    assert parsed == _flatten(js)


def test_verify_fast_suite(capsys):
    code, js = run_json(capsys, "verify", "--suite", "fast")
    assert code == 0 and js["ok"]
    assert all(c["pass"] for c in js["checks"])
