import io as _io
import json
from pathlib import Path

import pytest

from vglab import cli

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = cli.main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def s(name):
    return SAMPLES / name


def test_check_vgroup_text_and_json():
    code, out, _ = run("check", s("z3_pplus.json"))
    assert code == 0 and "valid, non-symmetric" in out
    code, out, _ = run("check", s("z3_pplus.json"), "--format", "json")
    doc = json.loads(out)
    assert doc["valid"] and not doc["symmetric"] and doc["kind"] == "vgroup"
    assert doc["witness"] == {"x": 1, "delta(x)": "1", "delta(-x)": "2"}
    assert doc["value"]["delta"] == ["0", "1", "2"]


def test_check_invalid_and_parse_errors():
    code, out, _ = run("check", s("bad_unit.json"))
    assert code == 1 and "invalid" in out and '"law": "unit"' in out
    code, _, err = run("check", s("bad_rational.json"))
    assert code == 2 and "$.delta[1]" in err
    code, _, err = run("check", "/nonexistent.json")
    assert code == 2


def test_check_other_kinds(tmp_path):
    assert "non-symmetric" in run("check", s("chain_category.json"))[1]
    code, out, _ = run("check", s("quotient_hom.json"))
    assert code == 0 and "regular_epi" in out
    code, out, _ = run("check", s("lex_indiscrete.json"))
    assert code == 0 and "lex structure invalid" in out
    q = tmp_path / "q.json"
    q.write_text('"lukasiewicz_chain:3"')
    code, out, _ = run("check", q, "--format", "json")
    assert code == 0 and json.loads(out)["valid"]
    bad = tmp_path / "bad.json"
    bad.write_text('{"quantale": "chain:3", "carrier": ["a", "b"], '
                   '"matrix": [["1", "1"], ["0", "1/2"]]}')
    code, out, _ = run("check", bad)
    assert code == 1


def test_check_several_files_reports_worst_exit():
    code, out, _ = run("check", s("z3_pplus.json"), s("bad_unit.json"))
    assert code == 1 and out.count("\n") >= 2


def test_enumerate():
    code, out, _ = run("enumerate", "--group", "Z2", "--quantale", "chain:3")
    assert code == 0 and "3 profiles" in out
    code, out, _ = run("enumerate", "--group", "Z3", "--quantale", "pplus")
    assert code == 2
    code, out, _ = run("enumerate", "--group", "Z2", "--quantale", "chain:3",
                       "--quantale", "two")
    assert code == 2
    code, out, _ = run("enumerate", "--group", "S3", "--quantale", "two", "--format", "json")
    rows = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and rows
    code, out, _ = run("enumerate", "--group", "Z6", "--quantale", "chain:4", "--bound", "5")
    assert code == 2


def test_enumerate_symmetric_filter():
    def listed(mode):
        code, out, _ = run("enumerate", "--group", "Z3", "--quantale", "lukasiewicz_chain:3",
                           "--symmetric", mode)
        assert code == 0 and "5 profiles, 3 symmetric, 2 asymmetric" in out
        return len(out.splitlines()) - 1

    assert (listed("any"), listed("only"), listed("none")) == (5, 3, 2)


def test_semidirect():
    code, out, _ = run("semidirect", s("klein_luk3.json"))
    assert code == 0 and "2 split-extension structure" in out
    code, out, _ = run("semidirect", s("lex_indiscrete.json"), "--mode", "lex")
    assert code == 1 and '"rhs": "1/2"' in out
    code, out, _ = run("semidirect", s("s3_action.json"), "--format", "json", "--mode", "tensor")
    assert code == 0 and json.loads(out.splitlines()[0])


def test_verify_list_and_unknown():
    code, out, _ = run("verify", "--list")
    assert code == 0 and out.startswith("unital_iff_frame:")
    assert len(out.splitlines()) == 13
    code, _, err = run("verify", "nope")
    assert code == 2 and "unknown suite" in err


def test_verify_runs_suite():
    code, out, _ = run("verify", "adjunction_chain", "--quantale", "chain:3")
    assert code == 0 and out.startswith("PASS adjunction_chain")
    code, out, _ = run("verify", "lex_validity", "--quantale", "chain:3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["suite"] == "lex_validity"


def test_verify_failure_exit(monkeypatch):
    from vglab import laws

    def bad(cfg, rep, quantales):
        rep.record(False, {"law": "always"})

    laws.register("zz_cli_negative", "false on purpose", bad, ("two",))
    try:
        code, out, _ = run("verify", "zz_cli_negative")
        assert code == 1 and out.startswith("FAIL") and "always" in out
    finally:
        laws.unregister("zz_cli_negative")


def test_usage_errors():
    assert run()[0] == 2
    assert run("frob")[0] == 2
    assert run("check")[0] == 2
    assert run("enumerate", "--quantale", "two")[0] == 2


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("VGLAB_SEED", "x")
    assert run("verify", "adjunction_chain", "--quantale", "two")[0] == 2
    monkeypatch.setenv("VGLAB_SEED", "5")
    assert run("verify", "adjunction_chain", "--quantale", "two")[0] == 0
