import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from vglab import group as grp
from vglab import io
from vglab import vgroup as vg
from vglab.errors import ParseError, VGroupError
from vglab.quantale import make_quantale

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def roundtrip(value):
    text = json.dumps(io.emit(value))
    return io.parse_document(io.loads(text))


@pytest.mark.parametrize("spec", ["two", "chain:4", "lukasiewicz_chain:3", "pplus", "pmax",
                                  "unit_interval:product", "delta_grid:1/2:3:conv"])
def test_quantale_round_trip(spec):
    V = make_quantale(spec)
    kind, W = roundtrip(V)
    assert kind == "quantale" and W == V


def test_group_and_action_round_trip():
    for G in (grp.cyclic(5), grp.klein(), grp.symmetric(3),
              grp.direct_product(grp.cyclic(2), grp.cyclic(3))):
        kind, H = roundtrip(G)
        assert kind == "group" and H.table == G.table and H.labels == G.labels
    act = grp.enumerate_actions(grp.cyclic(2), grp.klein())[1]
    kind, back = roundtrip(act)
    assert kind == "action" and back.phi == act.phi


def test_vgroup_family_round_trip():
    V = make_quantale("lukasiewicz_chain:3")
    K = grp.klein()
    X = vg.vgroup_from_delta(K, V, ["1", "1/2", "1/2", "0"])
    assert roundtrip(X) == ("vgroup", X)
    kind, A = roundtrip(X.category)
    assert kind == "vcategory" and A.matrix == X.category.matrix
    P = make_quantale("pplus")
    Y = vg.vgroup_from_delta(grp.cyclic(4), P, ["0", "inf", "5/2", "inf"])
    assert roundtrip(Y)[1].delta == (0, P.bottom, F(5, 2), P.bottom)
    Z4, Z2 = grp.cyclic(4), grp.cyclic(2)
    C = make_quantale("chain:3")
    f = vg.vgroup_hom(vg.discrete_vgroup(Z4, C), vg.discrete_vgroup(Z2, C), [0, 1, 0, 1])
    kind, g = roundtrip(f)
    assert kind == "vgroup_hom" and g.images == f.images
    act = grp.trivial_action(Z2, Z2)
    spec = (act, vg.discrete_vgroup(Z2, C), vg.indiscrete_vgroup(Z2, C))
    kind, back = roundtrip(spec)
    assert kind == "split" and back[1] == spec[1] and back[2] == spec[2]


def test_samples_parse():
    kinds = {}
    for p in sorted(SAMPLES.glob("*.json")):
        try:
            kinds[p.stem] = io.load_file(str(p))[0]
        except (ParseError, VGroupError) as exc:
            kinds[p.stem] = type(exc).__name__
    assert kinds == {"bad_rational": "ParseError", "bad_unit": "VGroupError",
                     "chain_category": "vcategory", "klein_luk3": "split",
                     "lex_indiscrete": "split", "quotient_hom": "vgroup_hom",
                     "s3_action": "split", "z3_pplus": "vgroup"}


def test_parse_error_positions():
    with pytest.raises(ParseError) as exc:
        io.load_file(str(SAMPLES / "bad_rational.json"))
    assert exc.value.position == "$.delta[1]"
    cases = [
        ({"group": "Z2", "quantale": "chain:3", "delta": ["1"]}, "$.delta"),
        ({"group": "Q9", "quantale": "chain:3", "delta": []}, "$.group"),
        ({"group": "Z2", "delta": ["1", "1"]}, "$"),
        ({"group": {"kind": "blob"}, "quantale": "two", "delta": []}, "$.group.kind"),
        ({"quantale": "chain:3", "carrier": ["a", "b"], "matrix": [["1", "0"], ["0", "1/3"]]},
         "$.matrix[1][1]"),
        ({"quantale": "chain:3", "carrier": ["a"], "matrix": [["1", "0"]]}, "$.matrix[0]"),
        ({"on": "Z3", "by": "Z2", "phi": [[0, 1, 2], [0, 2, 7]]}, "$.phi[1][2]"),
        ({"on": "Z3", "by": "Z2", "phi": [[0, 1, 2], [1, 0, 2]]}, "$.phi"),
        ({"quantale": "two", "source": {"group": "Z4", "delta": ["1", "0", "0", "0"]},
          "target": {"group": "Z2", "delta": ["1", "0"]}, "map": [0, 1]}, "$.map"),
        ({"quantale": "nope", "group": "Z2", "delta": ["1", "0"]}, "$.quantale"),
    ]
    for doc, pos in cases:
        with pytest.raises(ParseError) as exc:
            io.parse_document(doc)
        assert exc.value.position == pos, doc


def test_invalid_json_reports_line_and_column():
    with pytest.raises(ParseError) as exc:
        io.loads('{"group": "Z2",\n  "delta": [1, }')
    assert "line 2" in exc.value.position and "column" in exc.value.position
    with pytest.raises(ParseError):
        io.detect_kind([1, 2])
    with pytest.raises(ParseError):
        io.detect_kind({"x": 1})
    with pytest.raises(ParseError):
        io.load_file("/nonexistent/file.json")


def test_delta_as_mapping_and_tuple_labels():
    doc = {"group": "K4", "quantale": "chain:3",
           "delta": {"[0, 0]": "1", "[0, 1]": "1/2", "[1, 0]": "1/2", "[1, 1]": "1/2"}}
    X = io.parse_vgroup(doc)
    assert X.delta == (1, F(1, 2), F(1, 2), F(1, 2))
    hom = {"quantale": "chain:3", "source": {"group": "K4", "delta": ["1", "0", "0", "0"]},
           "target": {"group": "Z2", "delta": ["1", "0"]}, "map": [0, 1, 0, 1]}
    f = io.parse_vgroup_hom(hom)
    assert f.images == (0, 1, 0, 1)


def test_emit_rejects_unknown():
    with pytest.raises(TypeError):
        io.emit(object())
