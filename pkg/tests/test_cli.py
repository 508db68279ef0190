import json

import pytest

from modk3.cli import build_parser, run


def records(capsys):
    out = capsys.readouterr().out
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_groups_verify(capsys):
    assert run(["groups", "verify"]) == 0
    recs = records(capsys)
    assert len(recs) == 9
    assert all(r["ok"] for r in recs)
    assert {r["group"] for r in recs} == set(range(1, 10))


def test_forms_check_single(capsys):
    assert run(["forms", "check", "--form", "h8", "--prec", "100"]) == 0
    recs = records(capsys)
    assert recs == [{"suite": "forms", "target": "h8", "n": 100,
                     "mismatches": [], "ok": True}]


def test_forms_qexp(capsys):
    assert run(["forms", "qexp", "--form", "h3", "--prec", "8"]) == 0
    recs = records(capsys)
    assert recs[0]["coefficients"] == [1, -3, 0, 5, 0, 0, -7, -3]


def test_forms_ap(capsys):
    assert run(["forms", "ap", "--form", "h7", "--p", "7"]) == 0
    assert records(capsys) == [{"form": "h7", "p": 7, "ap": 2}]


def test_surface_scan_alias(capsys):
    assert run(["surface", "scan", "--family", "g4", "--p", "13"]) == 0
    recs = records(capsys)
    assert recs[0]["target"] == "g4_legendre"
    assert sorted(recs[0]["config"]) == ["I4"] * 6
    assert recs[0]["euler_total"] == 24


def test_surface_count(capsys):
    assert run(["surface", "count", "--family", "g62",
                "--pmin", "5", "--pmax", "13"]) == 0
    recs = records(capsys)
    assert [r["p"] for r in recs] == [5, 7, 11, 13]
    assert all(r["ok"] for r in recs)
    assert all(r["total"] == 1 + r["p"] ** 2 + r["p"] * r["ns_trace_used"]
               + r["B"] for r in recs)


def test_surface_count_ceiling(capsys):
    assert run(["surface", "count", "--family", "g62",
                "--pmin", "500", "--pmax", "521"]) == 2


def test_surface_verify(capsys):
    assert run(["surface", "verify", "--family", "g82", "--pmax", "30"]) == 0
    rec = records(capsys)[0]
    assert rec["ok"] and rec["first_failure"] is None
    assert rec["form"] == "h8" and rec["twist_disc"] == 1


def test_l3fold_euler(capsys):
    assert run(["l3fold", "euler", "--family", "g62",
                "--curve", "0,0,0,-1,0", "--p", "13"]) == 0
    rec = records(capsys)[0]
    assert rec["trace"] == 336
    assert rec["coefficients"][1] == -336


def test_l3fold_series(capsys):
    assert run(["l3fold", "series", "--family", "g62",
                "--curve", "0,0,0,-1,0", "--n", "20"]) == 0
    rec = records(capsys)[0]
    assert rec["coefficients"][12] == 336
    assert rec["betti"]["b2_threefold"] == 31


def test_pretty_and_csv_modes(capsys):
    assert run(["forms", "ap", "--form", "h8", "--p", "5", "--pretty"]) == 0
    out = capsys.readouterr().out
    assert "ap=-6" in out
    assert run(["forms", "ap", "--form", "h8", "--p", "5", "--csv"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "ap,form,p"


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["surface", "scan", "--family", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["bogus"])
    assert exc.value.code == 2


def test_internal_errors_exit_1(capsys):
    # scanning at a bad prime is a domain error, not a usage error
    assert run(["surface", "scan", "--family", "g62", "--p", "3"]) == 1


def test_verify_all_smoke(capsys):
    # pmax must supply enough split primes for every family's twist fit
    assert run(["verify", "all", "--pmax", "60"]) == 0
    recs = records(capsys)
    assert len(recs) > 20
    assert all(r.get("ok", True) for r in recs)
    suites = {r.get("suite") for r in recs}
    assert {"groups", "forms", "scan", "surface", "eigenspace", "betti"} <= suites
