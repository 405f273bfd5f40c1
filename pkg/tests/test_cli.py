"""CLI surface: subcommands, exit codes, JSON mode."""

import json

import pytest

from starpos import cli

L5_TEXT = "Y^2*X^2*Y^2 + (-Y)*(X^4 - 5*X^2)*Y"

GOOD_CERT = {
    "algebra": "weyl-xy",
    "target": L5_TEXT + " + 7/5",
    "conjugator": "1 + X^2",
    "blocks": [
        {"monomials": ["X^3*Y", "X^2*Y^2"],
         "matrix": [["253/100", "121/100"], ["121/100", "29/50"]]},
        {"monomials": ["X", "X^3", "X^2*Y", "X*Y^2", "X^4*Y + X^3*Y^2"],
         "matrix": [["251/25", "1491/100", "911/50", "27/10", "1537/500"],
                    ["1491/100", "4657/200", "1357/50", "3711/1000", "951/200"],
                    ["911/50", "1357/50", "1681/50", "26/5", "549/100"],
                    ["27/10", "3711/1000", "26/5", "1", "71/100"],
                    ["1537/500", "951/200", "549/100", "71/100", "1"]]},
    ],
}


def run(args):
    return cli.main(args)


def test_verify_gram_good(tmp_path, capsys):
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(GOOD_CERT))
    assert run(["verify-gram", str(path)]) == 0
    assert "verified" in capsys.readouterr().out


def test_verify_gram_refuted(tmp_path, capsys):
    cert = json.loads(json.dumps(GOOD_CERT))
    cert["blocks"][0]["matrix"][0][0] = "1"
    cert["blocks"][0]["matrix"][1][1] = "1"
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(cert))
    assert run(["verify-gram", str(path)]) == 1
    out = capsys.readouterr().out
    assert "MISMATCH" in out or "refuted" in out


def test_verify_gram_malformed(tmp_path):
    path = tmp_path / "cert.json"
    path.write_text("{\"algebra\": \"weyl-xy\"}")
    assert run(["verify-gram", str(path)]) == 2
    path.write_text("not json")
    assert run(["verify-gram", str(path)]) == 2


def test_verify_gram_forbid_decimals(tmp_path):
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(GOOD_CERT))
    # target carries 7/5 so strict mode passes; a decimal variant must fail
    assert run(["verify-gram", str(path), "--forbid-decimals"]) == 0
    cert = json.loads(json.dumps(GOOD_CERT))
    cert["target"] = L5_TEXT + " + 1.4"
    path.write_text(json.dumps(cert))
    assert run(["verify-gram", str(path), "--forbid-decimals"]) == 2
    assert run(["verify-gram", str(path)]) == 0


def test_posn0(capsys):
    assert run(["posn0", "--poly", "(N-1)*(N-2)"]) == 0
    assert capsys.readouterr().out.strip() == "yes"
    assert run(["posn0", "--poly", "N-1"]) == 1
    assert run(["posn0", "--poly", "i*N"]) == 2


def test_fock_table(capsys):
    assert run(["fock", "--element", L5_TEXT + " + 7/5", "--max-level", "6"]) == 0
    out = capsys.readouterr().out
    assert out.count("PSD") >= 7
    assert run(["fock", "--element", "X^2 - Y^2 - 1 - 2", "--max-level", "3"]) == 1
    assert run(["fock", "--element", "Y", "--max-level", "2"]) == 2  # not hermitian


def test_hermite(capsys):
    assert run(["hermite", "--minpoly", "x^2+1"]) == 0
    assert "r=0, s=2, inducible: no" in capsys.readouterr().out
    assert run(["hermite", "--minpoly", "x^2-2", "--q", "3-x"]) == 0
    assert run(["hermite", "--minpoly", "x^2-2", "--q", "x"]) == 1
    assert run(["hermite", "--minpoly", "x^2+2*x+1"]) == 2  # not squarefree


def test_member_and_act(capsys):
    assert run(["member", "--qm", "posn0", "--poly", "(N-1)*(N-2)"]) == 0
    assert run(["member", "--qm", "ninf", "--poly", "0-N"]) == 1
    assert run(["member", "--qm", "npoint:3", "--poly", "N-5"]) == 1
    assert run(["member", "--qm", "bogus", "--poly", "N"]) == 2
    assert run(["act", "--k", "2", "--qm", "npoint:5"]) == 0
    assert "N_3" in capsys.readouterr().out
    assert run(["act", "--k", "3", "--qm", "npoint:2"]) == 1
    assert run(["act", "--k", "-4", "--qm", "ninf"]) == 0


def test_ind_modes():
    assert run(["ind", "--element", "(X^2 - Y^2 - 1)*1/2", "--witness", "1",
                "--fock", "--max-level", "6"]) == 0  # N is induced-positive
    assert run(["ind", "--element", "(X^2 - Y^2 - 1)*1/2 - 1", "--witness", "1"]) == 1
    assert run(["ind", "--minpoly", "x^2-2", "--q", "3-x"]) == 0
    assert run(["ind", "--minpoly", "x^2-2", "--q", "x"]) == 1
    assert run(["ind", "--minpoly", "x^2+1", "--q", "1"]) == 2  # not inducible


def test_ce_check(capsys):
    assert run(["ce-check", "--projection", "weyl-grading", "--samples", "4"]) == 0
    assert run(["ce-check", "--projection", "parity-tower", "--ce5"]) == 1
    out = capsys.readouterr().out
    assert "CE5: fail" in out
    assert run(["ce-check", "--projection", "nonsense"]) == 2


def test_matpsd(tmp_path, capsys):
    path = tmp_path / "mat.json"
    path.write_text(json.dumps({"vars": ["x"],
                                "entries": [["1", "x"], ["x", "1"]]}))
    assert run(["matpsd", "--file", str(path), "--box", "0:2", "--grid", "4"]) == 1
    out = capsys.readouterr().out
    assert "refuted at point" in out
    assert run(["matpsd", "--file", str(path), "--box", "0:1", "--grid", "4"]) == 0
    assert run(["matpsd", "--file", str(path), "--points", "1/2"]) == 0
    assert run(["matpsd", "--file", str(path), "--points", "2"]) == 1
    # constraints exclude the bad region
    assert run(["matpsd", "--file", str(path), "--constraints", "1 - x",
                "--box", "0:2", "--grid", "4"]) == 0


def test_json_mode(capsys):
    assert run(["--json", "member", "--qm", "posn0", "--poly", "(N-1)*(N-2)"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True and payload["status"] == "yes"
    run(["--json", "act", "--k", "3", "--qm", "npoint:2"])
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"] == "undefined"


def test_reproduce_subset(capsys):
    assert run(["reproduce-paper", "--only", "cone-separation",
                "ordering-data"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "2/2" in out


def test_reproduce_json_subset(capsys):
    assert run(["--json", "reproduce-paper", "--only", "rank-one-identity"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    assert payload["results"][0]["id"] == "rank-one-identity"
