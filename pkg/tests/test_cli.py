"""Command line interface: exit codes, output shape, determinism."""

import io
import json
import os
from contextlib import redirect_stderr, redirect_stdout

import pytest

from skewcodes.cli import main

HERE = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
W = os.path.join(HERE, "workspaces")


def ws(name):
    return os.path.join(W, name + ".json")


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            rc = main(argv)
        except SystemExit as stop:
            rc = stop.code if isinstance(stop.code, int) else 2
    return rc, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,series,laurent", [
    ("m2f4_e12", "series: yes", "laurent: yes"),
    ("f4c5", "series: yes", "laurent: yes"),
    ("m2f4_diag", "series: no", "laurent: no"),
    ("fyz_quotient", "series: yes", "laurent: no"),
])
def test_verify_verdicts(name, series, laurent):
    rc, out, err = run(["verify", "-w", ws(name)])
    assert rc == 0, err
    assert series in out and laurent in out
    assert "polynomials: yes" in out


def test_mul_poly_commutation():
    rc, out, err = run(["mul", "-w", ws("m2f4_e12"), "-r", "poly",
                        "x", "e21"])
    assert rc == 0, err
    assert out.strip() == "(E11 + E22) + E21*X"


def test_mul_series_identity():
    rc, out, _ = run(["mul", "-w", ws("m2f4_e12"), "-r", "series",
                      "one", "s1"])
    assert rc == 0
    assert "O(X^" in out


def test_mul_laurent_exact_inverse():
    rc, out, err = run(["mul", "-w", ws("m2f4_e12"), "-r", "laurent",
                        "xinv", "x"])
    assert rc == 0, err
    assert out.strip() == "(E11 + E22)"


def test_series_refused_on_non_nilpotent_delta():
    rc, out, err = run(["mul", "-w", ws("m2f4_diag"), "-r", "series",
                        "one", "one"])
    assert rc == 1
    assert "check failed:" in err and "nilpotent" in err


def test_laurent_refused_without_delta_prime_nilpotency():
    rc, out, err = run(["mul", "-w", ws("fyz_quotient"), "-r", "laurent",
                        "one", "one"])
    assert rc == 1
    assert "check failed:" in err


def test_nop_table():
    rc, out, err = run(["nop", "-w", ws("f4c5"), "-i", "1", "-n", "3"])
    assert rc == 0, err
    lines = out.strip().splitlines()
    assert lines[0] == "N_1^3 on basis elements:"
    assert lines[1] == "  1 -> 0"
    assert len(lines) == 6


def test_ore_witness():
    rc, out, err = run(["ore", "-w", ws("f4c5"), "-f", "f1"])
    assert rc == 0, err
    assert "verified: yes" in out
    assert "X^4 f = g X^1 with" in out


@pytest.mark.parametrize("name", ["m2f4_e12", "f4c5"])
def test_code_closure_roundtrip_encode(name):
    rc, out, err = run(["code", "closure", "-w", ws(name)])
    assert rc == 0, err
    assert "pure (direct summand): yes" in out
    assert "stable (A-action): yes" in out
    rc, out, err = run(["code", "roundtrip", "-w", ws(name)])
    assert rc == 0, (err, out)
    assert "FAIL" not in out
    rc, out, err = run(["code", "encode", "-w", ws(name), "-m", "m0"])
    assert rc == 0, err
    assert "decode returns the message: yes" in out


def test_code_check_verdict_drives_exit_code():
    rc, out, _ = run(["code", "check", "-w", ws("f4c5")])
    assert rc == 0
    assert "stable (A-action): yes" in out
    rc, out, _ = run(["code", "check", "-w", ws("m2f4_e12")])
    assert rc == 1, "plain span of e1 is not an A-submodule"
    assert "stable (A-action): no" in out


def test_inline_generator_payload():
    rc, out, _ = run(["code", "check", "-w", ws("m2f4_e12"),
                      "-g", "[[1, 0, 0, 0]]"])
    assert rc == 1
    assert "rate: 1/4" in out
    rc, out, _ = run(["code", "closure", "-w", ws("m2f4_e12"),
                      "-g", "[[1, 0, 0, 0]]"])
    assert rc == 0
    assert "rate: 4/4" in out, "closure in a simple module is full rate"


@pytest.mark.parametrize("name", ["m2f4-inner", "f4c5-group", "m2f4-diag",
                                  "fyz-quotient"])
def test_example_bundles(name):
    rc, out, err = run(["example", name])
    assert rc == 0, (out, err)
    assert "FAIL" not in out
    assert "ok" in out


def test_unknown_example_is_input_error():
    rc, _, err = run(["example", "no-such-context"])
    assert rc == 2


def test_missing_workspace_is_input_error():
    rc, _, err = run(["verify", "-w", ws("does_not_exist")])
    assert rc == 2
    assert "input error:" in err


def test_unknown_name_is_input_error():
    rc, _, err = run(["mul", "-w", ws("f4c5"), "-r", "poly", "nope", "x"])
    assert rc == 2


def test_wrong_width_inline_payload_is_input_error():
    rc, _, err = run(["mul", "-w", ws("f4c5"), "-r", "poly",
                      "[[0, 1]]", "x"])
    assert rc == 2
    assert "input error:" in err


def test_malformed_json_is_input_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc, _, err = run(["verify", "-w", str(bad)])
    assert rc == 2


def test_schema_violation_is_input_error(tmp_path):
    doc = json.loads(open(ws("f4c5")).read())
    doc["field"]["p"] = "two"
    bad = tmp_path / "schema.json"
    bad.write_text(json.dumps(doc))
    rc, _, err = run(["verify", "-w", str(bad)])
    assert rc == 2
    assert "input error:" in err


def test_prec_override():
    """--prec sets operand precision; the product window is prec // m."""
    rc, out, _ = run(["mul", "-w", ws("m2f4_e12"), "-r", "series",
                      "one", "s1"])
    assert rc == 0 and "O(X^4)" in out
    rc, out, _ = run(["mul", "-w", ws("m2f4_e12"), "-r", "series",
                      "one", "s1", "--prec", "4"])
    assert rc == 0 and "O(X^2)" in out


def test_double_runs_byte_identical():
    for argv in (["verify", "-w", ws("m2f4_e12")],
                 ["code", "roundtrip", "-w", ws("f4c5")],
                 ["code", "closure", "-w", ws("m2f4_e12"),
                  "-g", "[[1, 0, 0, 0]]"],
                 ["example", "f4c5-group"],
                 ["nop", "-w", ws("f4c5"), "-i", "2", "-n", "4"]):
        first = run(argv)
        second = run(argv)
        assert first == second, argv
