import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from vglab.errors import QuantaleError
from vglab.quantale import (INF, TWO, DeltaGrid, GridDistribution, LaxHom, check_adjunction,
                            check_lax_hom, check_quantale_laws, compose_homs, convolve,
                            identity_hom, iota_map, make_quantale, neg_log2_hom, one_minus_hom,
                            optimist_map, parse_quantale_spec, pessimist_map, sample_elements,
                            tau_map)

FINITE = ["two"] + [f"chain:{n}" for n in (3, 4, 5)] + [f"lukasiewicz_chain:{n}" for n in (2, 3, 4, 5)]
INFINITE = ["pplus", "pmax", "unit_interval:min", "unit_interval:product",
            "unit_interval:lukasiewicz"]

DIAMOND = {"kind": "table", "elements": ["0", "a", "b", "1"],
           "leq": [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]],
           "tensor": [["0", "0", "0", "0"], ["0", "a", "0", "a"],
                      ["0", "0", "b", "b"], ["0", "a", "b", "1"]],
           "unit": "1"}
# three-element chain 0 < h < 1 with h (x) h = 0: a non-frame table quantale
NILPOTENT = {"kind": "table", "elements": ["0", "h", "1"],
             "leq": [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
             "tensor": [["0", "0", "0"], ["0", "0", "h"], ["0", "h", "1"]],
             "unit": "1"}


@pytest.mark.parametrize("spec", FINITE + [DIAMOND, NILPOTENT])
def test_finite_quantale_laws_exhaustive(spec):
    V = make_quantale(spec)
    rep = check_quantale_laws(V)
    assert rep.ok, rep.witness
    assert rep.attempted > len(V.elements) ** 3


def test_chain_flags():
    assert make_quantale("chain:3").is_frame
    luk = make_quantale("lukasiewicz_chain:3")
    assert not luk.is_frame and not luk.is_optimistic
    assert check_quantale_laws(luk).evidence["non_frame_witness"] == ["1/2", "1/2"]
    assert make_quantale(NILPOTENT).is_frame is False
    assert make_quantale(DIAMOND).is_frame is True


@pytest.mark.parametrize("spec", INFINITE)
def test_sampled_laws(spec):
    V = make_quantale(spec)
    rng = random.Random(7)
    pts = sample_elements(V, 1000, 3)
    assert len(pts) == 1000
    triples = [tuple(rng.choice(pts) for _ in range(3)) for _ in range(3000)]
    rep = check_quantale_laws(V, triples=triples)
    assert rep.ok, rep.witness


def test_non_associative_table_rejected_with_triple():
    # chain 0 < a < b < 1: (a (x) b) (x) b = a but a (x) (b (x) b) = 0
    bad = {"kind": "table", "elements": ["0", "a", "b", "1"],
           "leq": [[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]],
           "tensor": [["0", "0", "0", "0"], ["0", "0", "a", "a"],
                      ["0", "a", "a", "b"], ["0", "a", "b", "1"]],
           "unit": "1"}
    with pytest.raises(QuantaleError):
        make_quantale(bad)
    rep = check_quantale_laws(make_quantale(bad, validate=False))
    bad_laws = {f["law"] for f in rep.failures}
    assert "associativity" in bad_laws
    assoc = next(f for f in rep.failures if f["law"] == "associativity")
    assert len(assoc["elements"]) == 3


def test_unvalidated_table_reports_witness():
    bad = dict(NILPOTENT, tensor=[["0", "0", "0"], ["0", "1", "h"], ["0", "h", "1"]])
    V = make_quantale(bad, validate=False)
    rep = check_quantale_laws(V)
    assert not rep.ok
    assert len(rep.witness["elements"]) >= 1


@pytest.mark.parametrize("spec", FINITE + [DIAMOND, NILPOTENT])
def test_integral_tensor_below_meet(spec):
    V = make_quantale(spec)
    for u, v in itertools.product(V.elements, repeat=2):
        assert V.leq(V.tensor(u, v), V.meet2(u, v))


@pytest.mark.parametrize("spec", FINITE + [DIAMOND, NILPOTENT])
def test_is_frame_matches_exhaustive(spec):
    V = make_quantale(spec)
    frame = all(V.tensor(u, v) == V.meet2(u, v) for u, v in itertools.product(V.elements, repeat=2))
    assert V.is_frame == frame


@pytest.mark.parametrize("spec", FINITE + [DIAMOND, NILPOTENT])
def test_hom_is_largest_residual(spec):
    V = make_quantale(spec)
    for u, w in itertools.product(V.elements, repeat=2):
        assert V.hom(u, w) == V.join(v for v in V.elements if V.leq(V.tensor(v, u), w))


def test_reversed_order_on_half_line():
    P = make_quantale("pplus")
    assert P.bottom is INF and P.top == 0 == P.unit
    assert P.leq(F(5), F(2)) and not P.leq(F(2), F(5))
    assert P.join2(F(1), F(3)) == 1 and P.meet2(F(1), F(3)) == 3
    assert P.tensor(F(1), F(2)) == 3
    assert P.hom(F(1), F(3)) == 2 and P.hom(F(3), F(1)) == 0
    M = make_quantale("pmax")
    assert M.tensor(F(1), F(2)) == 2 and M.is_frame


def test_pplus_is_optimistic_on_samples():
    P = make_quantale("pplus")
    pts = sample_elements(P, 200, 1)
    for u, v in itertools.product(pts, repeat=2):
        if P.tensor(u, v) == P.bottom:
            assert P.bottom in (u, v)


@given(st.fractions(min_value=0, max_value=50), st.fractions(min_value=0, max_value=50),
       st.fractions(min_value=0, max_value=50))
@settings(max_examples=300, deadline=None)
def test_pplus_residuation_property(u, v, w):
    P = make_quantale("pplus")
    assert P.leq(P.tensor(v, u), w) == P.leq(v, P.hom(u, w))


@given(st.fractions(min_value=0, max_value=1), st.fractions(min_value=0, max_value=1),
       st.fractions(min_value=0, max_value=1), st.sampled_from(["min", "product", "lukasiewicz"]))
@settings(max_examples=300, deadline=None)
def test_unit_interval_residuation_property(u, v, w, t):
    V = make_quantale(f"unit_interval:{t}")
    assert V.leq(V.tensor(v, u), w) == V.leq(v, V.hom(u, w))
    assert V.tensor(u, V.join2(v, w)) == V.join2(V.tensor(u, v), V.tensor(u, w))


def test_spec_parsing():
    assert make_quantale("chain:3") == make_quantale("chain(3)") == make_quantale({"kind": "chain", "n": 3})
    assert parse_quantale_spec("lukasiewicz_chain(4)") == {"kind": "lukasiewicz_chain", "n": 4}
    assert make_quantale("chain:2") == TWO
    for bad in ["nope", "chain", "chain:x", "chain:1", "unit_interval:sum", {"n": 3}]:
        with pytest.raises(QuantaleError):
            make_quantale(bad)


def test_element_literals():
    V = make_quantale("chain:3")
    assert V.element("1/2") == F(1, 2)
    assert not V.contains(0) and V.contains(F(0))
    with pytest.raises(QuantaleError):
        V.element("1/3")
    P = make_quantale("pplus")
    assert P.element("inf") is INF and P.element("5/2") == F(5, 2)
    with pytest.raises(QuantaleError):
        P.element("1/x")
    with pytest.raises(QuantaleError):
        P.element("-1")


def test_grid_convolution_matches_double_loop():
    G = DeltaGrid("1/2", 4, "conv")
    rng = random.Random(3)
    sat = G.size - 1
    for _ in range(200):
        u, v = G.sample(rng, 2)
        expect = []
        for i in range(G.size):
            best = F(0)
            for j in range(G.size):
                for k in range(G.size):
                    if min(j + k, sat) <= i or i == sat:
                        best = max(best, u.values[j] * v.values[k])
            expect.append(best)
        assert convolve(u.values, v.values) == tuple(expect)


@pytest.mark.parametrize("t", ["min", "conv"])
def test_grid_laws_sampled(t):
    G = make_quantale(f"delta_grid:1/2:3:{t}")
    pts = sample_elements(G, 15, 0)
    rep = check_quantale_laws(G, pts)
    assert rep.ok, rep.witness
    assert G.is_frame == (t == "min")
    with pytest.raises(QuantaleError):
        GridDistribution(F(1, 2), (F(1), F(0)))


@pytest.mark.parametrize("spec", FINITE)
def test_builtin_maps_are_lax(spec):
    V = make_quantale(spec)
    for f in (iota_map(V), tau_map(V), pessimist_map(V)):
        assert check_lax_hom(f).ok, f
    if V.is_optimistic:
        assert check_lax_hom(optimist_map(V)).ok
    else:
        with pytest.raises(QuantaleError):
            optimist_map(V)


def test_neg_log2_is_a_strict_hom_on_dyadics():
    f = neg_log2_hom()
    pts = [F(1), F(1, 2), F(1, 4), F(1, 8), F(0)]
    rep = check_lax_hom(f, pts)
    assert rep.ok and rep.evidence["strict_tensor"]
    assert f(F(1, 4)) == 2 and f(F(0)) is INF
    with pytest.raises(QuantaleError):
        f(F(1, 3))


def test_one_minus_is_lax():
    f = one_minus_hom()
    pts = sample_elements(f.source, 300, 2)
    rep = check_lax_hom(f, pts)
    assert rep.ok, rep.witness


def test_constant_bottom_fails_unit():
    V = make_quantale("chain:3")
    f = LaxHom(V, V, lambda u: V.bottom, "const")
    rep = check_lax_hom(f)
    assert not rep.ok and rep.witness["law"] == "unit"


def test_compose_and_identity():
    V = make_quantale("chain:3")
    g = compose_homs(pessimist_map(V), iota_map(V))
    assert all(g(w) == w for w in TWO.elements)
    assert check_lax_hom(compose_homs(identity_hom(V), identity_hom(V))).ok
    with pytest.raises(QuantaleError):
        compose_homs(iota_map(V), iota_map(V))


def test_adjunctions_over_pplus():
    P = make_quantale("pplus")
    assert check_adjunction(iota_map(P), pessimist_map(P), None, [F(0), F(1), INF]).ok
    pts = sample_elements(P, 1000, 0)
    assert check_adjunction(iota_map(P), pessimist_map(P), None, pts).ok
    assert check_adjunction(optimist_map(P), tau_map(P), pts, None).ok


def test_mismatched_adjunction_fails_with_witness():
    V = make_quantale("chain:3")
    rep = check_adjunction(iota_map(V), optimist_map(V))
    assert not rep.ok
    assert rep.witness["elements"] == ["1", "1/2"]
    with pytest.raises(QuantaleError):
        check_adjunction(iota_map(V), tau_map(V))
