"""JSON readers and writers for quantales, groups, actions, V-categories, V-groups,
V-group homomorphisms and split-extension specs.

Rationals are strings ``"p/q"``, infinity is ``"inf"``.  Labels that are tuples
are written as JSON lists and read back as tuples.  Every reader raises
:class:`ParseError` carrying a JSON path to the offending value.
"""

from __future__ import annotations

import json
from typing import Any

from . import group as grp
from .errors import ParseError, VglabError
from .group import FiniteGroup, GroupAction, GroupHom
from .quantale import DeltaGrid, GridDistribution, Quantale, make_quantale
from .vgroup import VGroup, VGroupHom
from .vrel import VCategory


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


def _listify(x):
    if isinstance(x, tuple):
        return [_listify(v) for v in x]
    return x


def _need(obj: Any, key: str, path: str):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path)
    if key not in obj:
        raise ParseError(f"missing key {key!r}", path)
    return obj[key]


def _list(obj: Any, path: str) -> list:
    if not isinstance(obj, list):
        raise ParseError("expected a list", path)
    return obj


# -- quantale ------------------------------------------------------------------------

def parse_quantale(obj: Any, path: str = "$") -> Quantale:
    try:
        return make_quantale(obj)
    except VglabError as exc:
        raise ParseError(str(exc), path) from None


def emit_quantale(V: Quantale) -> dict:
    return dict(V.descriptor)


def emit_element(V: Quantale, v) -> Any:
    if isinstance(v, GridDistribution):
        return [str(x) for x in v.values]
    return V.format(v)


def parse_element(V: Quantale, obj: Any, path: str):
    try:
        if isinstance(V, DeltaGrid) and isinstance(obj, list):
            return V.make(obj)
        return V.element(obj)
    except (VglabError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad element for {V.name}: {exc}", path) from None


# -- groups ----------------------------------------------------------------------------

def parse_group(obj: Any, path: str = "$") -> FiniteGroup:
    """``"Z4"``, ``{"kind": "cyclic", "n": 4}``, ``{"kind": "table", ...}``, products, ..."""
    try:
        if isinstance(obj, str):
            return grp.group_by_name(obj)
        kind = _need(obj, "kind", path)
        if kind == "cyclic":
            return grp.cyclic(int(_need(obj, "n", path)))
        if kind == "symmetric":
            return grp.symmetric(int(_need(obj, "n", path)))
        if kind == "dihedral":
            return grp.dihedral(int(_need(obj, "n", path)))
        if kind == "klein":
            return grp.klein()
        if kind == "trivial":
            return grp.trivial()
        if kind == "named":
            return grp.group_by_name(str(_need(obj, "name", path)))
        if kind == "product":
            fs = _list(_need(obj, "factors", path), path + ".factors")
            if not fs:
                raise ParseError("empty product", path + ".factors")
            G = parse_group(fs[0], path + ".factors[0]")
            for i, f in enumerate(fs[1:], 1):
                G = grp.direct_product(G, parse_group(f, f"{path}.factors[{i}]"))
            return G
        if kind == "table":
            labels = [_tuplify(l) for l in _list(_need(obj, "labels", path), path + ".labels")]
            rows = _list(_need(obj, "add", path), path + ".add")
            add = [[_tuplify(v) for v in _list(r, f"{path}.add[{i}]")] for i, r in enumerate(rows)]
            return grp.from_table(labels, add, str(obj.get("name", "")))
        raise ParseError(f"unknown group kind {kind!r}", path + ".kind")
    except ParseError:
        raise
    except (VglabError, ValueError, TypeError) as exc:
        raise ParseError(str(exc), path) from None


def emit_group(G: FiniteGroup) -> dict:
    labels = [_listify(l) for l in G.labels]
    return {"kind": "table", "name": G.name, "labels": labels,
            "add": [[labels[v] for v in row] for row in G.table]}


def _positions(G: FiniteGroup, labels, path: str, length: int | None = None) -> tuple:
    labels = _list(labels, path)
    length = len(G) if length is None else length
    if len(labels) != length:
        raise ParseError(f"expected {length} entries", path)
    out = []
    for i, l in enumerate(labels):
        l = _tuplify(l)
        if l not in G.labels:
            raise ParseError(f"{l!r} is not an element of {G.name}", f"{path}[{i}]")
        out.append(G.labels.index(l))
    return tuple(out)


def parse_action(obj: Any, path: str = "$") -> GroupAction:
    """``{"on": X, "by": Y, "phi": [[images of X's elements under y], ...] | "trivial"}``."""
    X = parse_group(_need(obj, "on", path), path + ".on")
    Y = parse_group(_need(obj, "by", path), path + ".by")
    phi = _need(obj, "phi", path)
    if phi == "trivial":
        return grp.trivial_action(Y, X)
    rows = _list(phi, path + ".phi")
    if len(rows) != len(Y):
        raise ParseError(f"need one automorphism per element of {Y.name}", path + ".phi")
    perms = tuple(_positions(X, r, f"{path}.phi[{i}]") for i, r in enumerate(rows))
    try:
        return GroupAction(Y, X, perms)
    except VglabError as exc:
        raise ParseError(str(exc), path + ".phi") from None


def emit_action(act: GroupAction) -> dict:
    X = act.acted
    return {"on": emit_group(X), "by": emit_group(act.acting),
            "phi": [[_listify(X.labels[v]) for v in p] for p in act.phi]}


# -- V-categories and V-groups -----------------------------------------------------------

def parse_vcategory(obj: Any, path: str = "$", quantale: Quantale | None = None) -> VCategory:
    V = parse_quantale(obj["quantale"], path + ".quantale") if isinstance(obj, dict) \
        and "quantale" in obj else quantale
    if V is None:
        raise ParseError("missing key 'quantale'", path)
    carrier = tuple(_tuplify(c) for c in _list(_need(obj, "carrier", path), path + ".carrier"))
    rows = _list(_need(obj, "matrix", path), path + ".matrix")
    if len(rows) != len(carrier):
        raise ParseError(f"expected {len(carrier)} rows", path + ".matrix")
    m = []
    for i, r in enumerate(rows):
        r = _list(r, f"{path}.matrix[{i}]")
        if len(r) != len(carrier):
            raise ParseError(f"expected {len(carrier)} entries", f"{path}.matrix[{i}]")
        m.append(tuple(parse_element(V, v, f"{path}.matrix[{i}][{j}]") for j, v in enumerate(r)))
    return VCategory(V, carrier, tuple(m))


def emit_vcategory(A: VCategory) -> dict:
    V = A.quantale
    return {"quantale": emit_quantale(V), "carrier": [_listify(c) for c in A.carrier],
            "matrix": [[emit_element(V, v) for v in r] for r in A.matrix]}


def parse_vgroup(obj: Any, path: str = "$", quantale: Quantale | None = None) -> VGroup:
    G = parse_group(_need(obj, "group", path), path + ".group")
    V = parse_quantale(obj["quantale"], path + ".quantale") if "quantale" in obj else quantale
    if V is None:
        raise ParseError("missing key 'quantale'", path)
    raw = _need(obj, "delta", path)
    if isinstance(raw, dict):
        raw = [raw.get(json.dumps(_listify(l)) if not isinstance(l, str) else l,
                       raw.get(str(l))) for l in G.labels]
    raw = _list(raw, path + ".delta")
    if len(raw) != len(G):
        raise ParseError(f"expected {len(G)} profile entries", path + ".delta")
    delta = tuple(parse_element(V, v, f"{path}.delta[{i}]") for i, v in enumerate(raw))
    return VGroup(G, V, delta)


def emit_vgroup(X: VGroup) -> dict:
    V = X.quantale
    return {"group": emit_group(X.group), "quantale": emit_quantale(V),
            "delta": [emit_element(V, v) for v in X.delta]}


def parse_vgroup_hom(obj: Any, path: str = "$") -> VGroupHom:
    V = parse_quantale(obj["quantale"], path + ".quantale") if "quantale" in obj else None
    X = parse_vgroup(_need(obj, "source", path), path + ".source", V)
    Y = parse_vgroup(_need(obj, "target", path), path + ".target", V)
    images = _positions(Y.group, _need(obj, "map", path), path + ".map", len(X.group))
    return VGroupHom(X, Y, GroupHom(X.group, Y.group, images))


def emit_vgroup_hom(f: VGroupHom) -> dict:
    return {"source": emit_vgroup(f.source), "target": emit_vgroup(f.target),
            "map": [_listify(f.target.group.labels[y]) for y in f.images]}


def parse_split_spec(obj: Any, path: str = "$") -> tuple:
    """``{"quantale": ..., "action": ..., "kernel": {...}, "quotient": {...}}``.

    The kernel and quotient may omit their groups; they are taken from the action.
    """
    V = parse_quantale(obj["quantale"], path + ".quantale") if "quantale" in obj else None
    act = parse_action(_need(obj, "action", path), path + ".action")
    parts = []
    for key, G in (("kernel", act.acted), ("quotient", act.acting)):
        sub = dict(_need(obj, key, path))
        sub.setdefault("group", emit_group(G))
        X = parse_vgroup(sub, f"{path}.{key}", V)
        if X.group != G:
            raise ParseError(f"{key} group differs from the action's", f"{path}.{key}.group")
        parts.append(X)
    return act, parts[0], parts[1]


def emit_split_spec(act: GroupAction, X: VGroup, Y: VGroup) -> dict:
    return {"quantale": emit_quantale(X.quantale), "action": emit_action(act),
            "kernel": emit_vgroup(X), "quotient": emit_vgroup(Y)}


# -- dispatch --------------------------------------------------------------------------

_QUANTALE_KINDS = {"two", "chain", "lukasiewicz_chain", "pplus", "pmax", "unit_interval",
                   "table", "delta_grid"}


def detect_kind(obj: Any) -> str:
    if isinstance(obj, str):
        return "quantale"
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object or a quantale spec string")
    if obj.get("kind") == "table" and "add" in obj:
        return "group"
    if obj.get("kind") in _QUANTALE_KINDS and "carrier" not in obj and "group" not in obj:
        return "quantale"
    if "action" in obj:
        return "split"
    if "source" in obj and "target" in obj:
        return "vgroup_hom"
    if "delta" in obj:
        return "vgroup"
    if "matrix" in obj:
        return "vcategory"
    if "on" in obj and "by" in obj:
        return "action"
    if "kind" in obj:
        return "group"
    raise ParseError("cannot tell what this document describes")


_PARSERS = {"quantale": parse_quantale, "group": parse_group, "action": parse_action,
            "vcategory": parse_vcategory, "vgroup": parse_vgroup,
            "vgroup_hom": parse_vgroup_hom, "split": parse_split_spec}


def parse_document(obj: Any) -> tuple:
    kind = detect_kind(obj)
    return kind, _PARSERS[kind](obj)


def emit(value) -> Any:
    if isinstance(value, Quantale):
        return emit_quantale(value)
    if isinstance(value, FiniteGroup):
        return emit_group(value)
    if isinstance(value, GroupAction):
        return emit_action(value)
    if isinstance(value, VCategory):
        return emit_vcategory(value)
    if isinstance(value, VGroup):
        return emit_vgroup(value)
    if isinstance(value, VGroupHom):
        return emit_vgroup_hom(value)
    if isinstance(value, tuple) and len(value) == 3 and isinstance(value[0], GroupAction):
        return emit_split_spec(*value)
    raise TypeError(f"cannot serialise {type(value).__name__}")


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"$ (line {exc.lineno}, column {exc.colno})") from None


def load_file(path: str) -> tuple:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(loads(text))
