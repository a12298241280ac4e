import json

import pytest

from vglab import laws
from vglab.laws import LawConfig, UnknownSuite

IDS = ["unital_iff_frame", "proto_iff_symmetric", "sandwich", "tensor_validity", "lex_validity",
       "finite_frame_symmetric", "open_iff_proper", "regepi_open_proper", "normality",
       "monoidal_closure", "regularity_lemma", "adjunction_chain", "strongly_unital_necessary"]

# small instance families so every suite finishes in a couple of seconds
SMALL = LawConfig(groups=("Z2", "Z3", "K4"), max_semidirect_order=4, max_carrier=2,
                  samples=100, random_instances=10, point_kernel_order=2,
                  point_pullback_order=2)
SMALL_Q = {"proto_iff_symmetric": ("chain:3",), "monoidal_closure": ("chain:3",),
           "unital_iff_frame": ("chain:3", "lukasiewicz_chain:3", "pplus")}


def test_registry_ids_and_claims():
    assert laws.suite_ids() == IDS
    for s in laws.REGISTRY.values():
        assert s.claim.strip() and len(s.claim) > 20


@pytest.mark.parametrize("sid", IDS)
def test_suite_passes_on_small_family(sid):
    cfg = SMALL
    if sid in SMALL_Q:
        cfg = LawConfig(**{**SMALL.__dict__, "quantales": SMALL_Q[sid]})
    rep = laws.run_suite(sid, cfg)
    assert rep.ok, rep.witness
    assert rep.attempted > 0 and rep.passed == rep.attempted
    assert rep.evidence["quantales"]


def test_determinism():
    a = [r.to_json(timing=False) for r in laws.run_all(SMALL, ["sandwich", "normality"])]
    b = [r.to_json(timing=False) for r in laws.run_all(SMALL, ["sandwich", "normality"])]
    assert a == b
    json.loads(a[0])


def test_unknown_and_empty():
    with pytest.raises(UnknownSuite) as exc:
        laws.run_suite("nope")
    assert "sandwich" in str(exc.value)
    with pytest.raises(UnknownSuite):
        laws.run_all(ids=["sandwich", "nope"])
    assert laws.run_all(ids=[]) == []


def test_failing_suite_is_reported_and_fail_fast_stops():
    def bad(cfg, rep, quantales):
        rep.record(True)
        rep.record(False, {"law": "always", "quantale": quantales[0].name})

    laws.register("zz_negative", "a claim that is false on purpose", bad, ("two",))
    try:
        rep = laws.run_suite("zz_negative")
        assert not rep.ok and rep.attempted == 2 and rep.passed == 1
        assert rep.witness == {"law": "always", "quantale": "two"}
        assert rep.failed_laws() == {"always"}
        out = laws.run_all(SMALL, ["zz_negative", "adjunction_chain"], fail_fast=True)
        assert [r.suite for r in out] == ["zz_negative"]
    finally:
        laws.unregister("zz_negative")
    assert "zz_negative" not in laws.suite_ids()


def test_finite_frame_counts():
    cfg = LawConfig(quantales=("chain:3",), groups=("Z2", "Z3"))
    rep = laws.run_suite("finite_frame_symmetric", cfg)
    assert rep.evidence["structures"]["chain(3)/Z2"] == 3


def test_scope_violation_is_a_failure():
    rep = laws.run_suite("finite_frame_symmetric", LawConfig(quantales=("lukasiewicz_chain:3",)))
    assert not rep.ok and rep.witness["law"] == "scope"


def test_unital_lukasiewicz_witness():
    rep = laws.run_suite("unital_iff_frame", LawConfig(quantales=("lukasiewicz_chain:3",)))
    assert rep.ok
    (ce,) = rep.evidence["counterexamples"]
    assert ce["u"] == ce["v"] == "1/2"
    assert ce["generated"] == "0" and ce["product"] == "1/2"


def test_sandwich_evidence_lukasiewicz():
    rep = laws.run_suite("sandwich", LawConfig(quantales=("lukasiewicz_chain:3",)))
    e = rep.evidence
    assert rep.ok and e["instances"] > 0 and e["structures"] >= e["instances"] // 2
    assert e["tensor_attained"] > 0 and e["lex_attained"] > 0


def test_jobs_match_serial():
    ids = ["lex_validity", "normality", "adjunction_chain"]
    cfg2 = LawConfig(**{**SMALL.__dict__, "jobs": 2})
    a = [r.to_json(timing=False) for r in laws.run_all(SMALL, ids)]
    b = [r.to_json(timing=False) for r in laws.run_all(cfg2, ids)]
    assert a == b
