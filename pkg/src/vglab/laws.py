"""Registry of verification suites.

Each suite states one mathematical claim, generates a family of finite
instances from a :class:`LawConfig`, and records every checked instance in a
:class:`~vglab.report.LawReport`.  Reports are deterministic for a fixed
config (durations aside).
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

from . import group as grp
from . import vgroup as vg
from . import vrel
from .errors import ActionError, VglabError
from .quantale import (TWO, Quantale, check_adjunction, iota_map, make_quantale,
                       optimist_map, pessimist_map, sample_elements, tau_map)
from .report import LawReport


class UnknownSuite(VglabError):
    pass


@dataclass(frozen=True)
class LawConfig:
    """Instance-family parameters shared by all suites.

    ``quantales=None`` lets each suite use its own default list.
    """

    quantales: tuple | None = None
    groups: tuple = ("Z2", "Z3", "Z4", "K4", "S3")
    max_order: int = 6
    unital_max_order: int = 4
    max_semidirect_order: int = 8
    max_carrier: int = 3
    samples: int = 1000
    random_instances: int = 100
    seed: int = 0
    structure_bound: int = 10**5
    split_bound: int = 10**5
    point_kernel_order: int = 3
    point_pullback_order: int = 3
    jobs: int = 1

    def quantale_list(self, default: tuple) -> list:
        return [make_quantale(q) for q in (self.quantales or default)]

    def group_list(self) -> list:
        return [grp.group_by_name(g) for g in self.groups]


@dataclass(frozen=True)
class Suite:
    id: str
    claim: str
    run: Callable
    quantales: tuple = field(default=())


REGISTRY: dict = {}


def register(id: str, claim: str, fn: Callable, quantales: tuple = ()) -> Suite:
    """Add a suite; ``fn(config, report, quantales)`` records into ``report``."""
    REGISTRY[id] = Suite(id, claim, fn, quantales)
    return REGISTRY[id]


def unregister(id: str) -> None:
    REGISTRY.pop(id, None)


def suite(id: str, claim: str, quantales: tuple = ()):
    def deco(fn):
        register(id, claim, fn, quantales)
        return fn
    return deco


def _structures(V: Quantale, groups, cfg: LawConfig):
    for G in groups:
        yield from vg.enumerate_vgroup_structures(G, V, cfg.structure_bound)


def _random_vgroup(V: Quantale, G: grp.FiniteGroup, rng: random.Random) -> vg.VGroup:
    seed = [rng.choice([V.bottom, *V.sample(rng, 3)]) for _ in G.elements]
    return vg.generated_structure(G, V, seed)


def _fmt(V: Quantale, v):
    return V.format(v)


# -- unital ----------------------------------------------------------------------------

@suite("unital_iff_frame",
       "Product injections X -> X x Y <- Y are jointly strongly epimorphic for all "
       "V-groups iff V is a frame (tensor = meet)",
       ("two", "chain:3", "chain:4", "lukasiewicz_chain:3", "lukasiewicz_chain:4",
        "unit_interval:min", "unit_interval:product", "unit_interval:lukasiewicz",
        "pplus", "pmax"))
def _unital(cfg: LawConfig, rep: LawReport, quantales):
    rng = random.Random(cfg.seed)
    for V in quantales:
        if V.is_frame:
            if V.is_finite:
                groups = [G for G in cfg.group_list() if len(G) <= cfg.unital_max_order]
                xs = list(_structures(V, groups, cfg))
            else:
                xs = [_random_vgroup(V, G, rng) for G in (grp.cyclic(2), grp.cyclic(3))
                      for _ in range(max(1, cfg.random_instances // 10))]
            for X, Y in itertools.product(xs, repeat=2):
                P = vg.product_vgroup(X, Y)
                i, j = vg.product_injections(X, Y, P)
                v = vg.is_jointly_strongly_epi(i, j)
                rep.record(v.ok, None if v.ok else {
                    "law": "frame_unital", "quantale": V.name, "X": (X.group.name, X.delta),
                    "Y": (Y.group.name, Y.delta), "why": v.witness})
            continue
        pts = V.elements if V.is_finite else sample_elements(V, 12, cfg.seed)
        pair = next(((u, w) for u, w in itertools.product(pts, repeat=2)
                     if V.lt(V.tensor(u, w), V.meet2(u, w))), None)
        if pair is None:
            rep.record(False, {"law": "non_frame_witness", "quantale": V.name,
                               "detail": "no u, v with u (x) v < u meet v among the samples"})
            continue
        u, w = pair
        Z2 = grp.cyclic(2)
        X = vg.VGroup(Z2, V, (V.top, u))
        Y = vg.VGroup(Z2, V, (V.top, w))
        P = vg.product_vgroup(X, Y)
        i, j = vg.product_injections(X, Y, P)
        v = vg.is_jointly_strongly_epi(i, j)
        rep.record(not v.ok, None if not v.ok else {
            "law": "non_frame_counterexample", "quantale": V.name, "u": _fmt(V, u), "v": _fmt(V, w)})
        if not v.ok:
            rep.evidence.setdefault("counterexamples", []).append({
                "quantale": V.name, "u": _fmt(V, u), "v": _fmt(V, w),
                "entry": v.witness.get("entry"),
                "generated": _fmt(V, v.witness["generated"]) if "generated" in v.witness else None,
                "product": _fmt(V, v.witness["target"]) if "target" in v.witness else None})


# -- protomodular objects --------------------------------------------------------------

def _proto_one(args):
    Y, bounds = args
    r = vg.protomodular_object_check(Y, bounds)
    e = r.point_search.evidence
    return r.symmetric, r.point_search.ok and e["agrees"], e["points"], \
        {"group": Y.group.name, "delta": Y.delta, "evidence": e,
         "witness": r.point_search.witness}


@suite("proto_iff_symmetric",
       "Over a frame, a V-group is a protomodular object (every point over it is "
       "stably strong) iff it is symmetric",
       ("chain:3", "chain:4"))
def _proto(cfg: LawConfig, rep: LawReport, quantales):
    bounds = vg.PointSearchBounds(cfg.point_kernel_order, cfg.point_pullback_order,
                                  cfg.point_kernel_order * cfg.max_order, cfg.split_bound)
    items = [(Y, bounds) for V in quantales for Y in _structures(V, cfg.group_list(), cfg)]
    sym = points = 0
    for ok_sym, ok, pts, info in _pmap(_proto_one, items, cfg.jobs):
        sym += ok_sym
        points += pts
        rep.record(ok, None if ok else {"law": "agreement", **info})
    rep.evidence.update({"vgroups": len(items), "symmetric": sym, "points_tested": points})


# -- semidirect products ---------------------------------------------------------------

def _semidirect_instances(V: Quantale, cfg: LawConfig):
    half = max(2, cfg.max_semidirect_order // 2)
    groups = [G for G in grp.small_groups(min(half, 8)) if len(G) >= 2]
    cache = {}

    def structs(G):
        if G not in cache:
            cache[G] = vg.enumerate_vgroup_structures(G, V, cfg.structure_bound)
        return cache[G]

    for Y in groups:
        for X in groups:
            if len(X) * len(Y) > cfg.max_semidirect_order:
                continue
            for act in grp.enumerate_actions(Y, X):
                for a in structs(X):
                    for b in structs(Y):
                        yield act, a, b


@suite("sandwich",
       "Every split-extension structure c on X x| Y satisfies a (x) b <= c <= lex",
       ("lukasiewicz_chain:3", "chain:3"))
def _sandwich(cfg: LawConfig, rep: LawReport, quantales):
    inst = structs = t_hit = l_hit = lemma = 0
    for V in quantales:
        for act, a, b in _semidirect_instances(V, cfg):
            try:
                cs = vg.enumerate_split_structures(act, a, b, cfg.split_bound)
            except ActionError:
                lemma += 1
                continue
            inst += 1
            lo, hi = vg.tensor_profile(a, b), vg.lex_profile(a, b)
            for c in cs:
                structs += 1
                t_hit += c.is_tensor
                l_hit += c.is_lex
                bad = next((p for p in range(len(c.delta))
                            if not (V.leq(lo[p], c.delta[p]) and V.leq(c.delta[p], hi[p]))), None)
                rep.record(bad is None, None if bad is None else {
                    "law": "sandwich", "quantale": V.name, "X": a.group.name, "Y": b.group.name,
                    "phi": act.phi, "delta": c.delta, "position": bad})
    rep.evidence.update({"instances": inst, "structures": structs, "tensor_attained": t_hit,
                         "lex_attained": l_hit, "lemma_excluded": lemma})


def _validity(cfg: LawConfig, rep: LawReport, quantales, build, name):
    inst = valid = lemma = 0
    for V in quantales:
        for act, a, b in _semidirect_instances(V, cfg):
            try:
                r = build(act, a, b)
            except ActionError:
                lemma += 1
                continue
            inst += 1
            valid += r.valid
            rep.record(r.agree, None if r.agree else {
                "law": name, "quantale": V.name, "X": (a.group.name, a.delta),
                "Y": (b.group.name, b.delta), "phi": act.phi, "flag": r.valid,
                "direct": r.direct.valid, "witness": r.witness or r.direct.witness})
    rep.evidence.update({"instances": inst, "valid": valid, "lemma_excluded": lemma})


@suite("tensor_validity",
       "(X x| Y, a (x) b) is a V-group iff (x, y) -> (phi_y x, y) is a V-functor on it",
       ("chain:3", "lukasiewicz_chain:3"))
def _tensor_validity(cfg, rep, quantales):
    _validity(cfg, rep, quantales, vg.semidirect_tensor, "tensor_validity")


@suite("lex_validity",
       "(X x| Y, lex) is a V-group iff b(y,0) (x) b(0,y) <= a(x,0) for all x and y != 0",
       ("chain:3", "lukasiewicz_chain:3"))
def _lex_validity(cfg, rep, quantales):
    _validity(cfg, rep, quantales, vg.semidirect_lex, "lex_validity")


# -- symmetry of finite groups over frames ---------------------------------------------

@suite("finite_frame_symmetric",
       "When tensor = meet, every V-group structure on a finite group is symmetric",
       ("two", "chain:3", "chain:4"))
def _finite_frame(cfg: LawConfig, rep: LawReport, quantales):
    counts = {}
    for V in quantales:
        if not V.is_frame or not V.is_finite:
            rep.record(False, {"law": "scope", "quantale": V.name,
                               "detail": "suite needs a finite frame"})
            continue
        for G in cfg.group_list():
            xs = vg.enumerate_vgroup_structures(G, V, cfg.structure_bound)
            counts[f"{V.name}/{G.name}"] = len(xs)
            for X in xs:
                s = vg.is_symmetric_vgroup(X)
                rep.record(s.ok, None if s.ok else {"law": "symmetric", "quantale": V.name,
                                                    "group": G.name, "delta": X.delta,
                                                    "at": s.witness})
    rep.evidence["structures"] = counts


# -- proper, open, regular epis ------------------------------------------------------------

def _hom_family(cfg: LawConfig, quantales, rng):
    """All V-group homs between enumerated structures (finite V), plus random
    homs between cyclic groups (infinite V)."""
    for V in quantales:
        if V.is_finite:
            xs = list(_structures(V, grp.small_groups(cfg.max_order), cfg))
            for X, Y in itertools.product(xs, repeat=2):
                yield from vg.enumerate_vhoms(X, Y)
        else:
            for _ in range(cfg.random_instances):
                G = grp.cyclic(rng.randint(1, cfg.max_order))
                H = grp.cyclic(rng.randint(1, cfg.max_order))
                f = rng.choice(grp.enumerate_homs(G, H))
                X = _random_vgroup(V, G, rng)
                seed = [rng.choice([V.bottom, *V.sample(rng, 2)]) for _ in H.elements]
                for x in G.elements:
                    seed[f(x)] = V.join2(seed[f(x)], X.delta[x])
                yield vg.VGroupHom(X, vg.generated_structure(H, V, seed), f)


@suite("open_iff_proper",
       "A V-group homomorphism is open iff it is proper",
       ("chain:3", "pplus"))
def _open_proper(cfg: LawConfig, rep: LawReport, quantales):
    rng = random.Random(cfg.seed)
    proper = 0
    for f in _hom_family(cfg, quantales, rng):
        r = vg.epi_mono_report(f)
        proper += r.proper
        rep.record(r.proper == r.open, None if r.proper == r.open else {
            "law": "open_iff_proper", "quantale": f.source.quantale.name,
            "source": (f.source.group.name, f.source.delta),
            "target": (f.target.group.name, f.target.delta), "map": f.images,
            "proper": r.proper, "open": r.open})
    rep.evidence["proper"] = proper


def _quotients(cfg: LawConfig, quantales, rng):
    for V in quantales:
        if V.is_finite:
            xs = list(_structures(V, grp.small_groups(cfg.max_order), cfg))
        else:
            xs = [_random_vgroup(V, grp.cyclic(rng.randint(1, cfg.max_order)), rng)
                  for _ in range(cfg.random_instances)]
        for X in xs:
            for N in grp.normal_subgroups(X.group):
                yield X, N, vg.quotient_vgroup(X, N)[1]


@suite("regepi_open_proper",
       "Every regular epimorphism of V-groups (a quotient map) is both open and proper",
       ("chain:3", "lukasiewicz_chain:3", "pplus"))
def _regepi(cfg: LawConfig, rep: LawReport, quantales):
    rng = random.Random(cfg.seed)
    for X, N, q in _quotients(cfg, quantales, rng):
        r = vg.epi_mono_report(q)
        ok = r.regular_epi and r.proper and r.open
        rep.record(ok, None if ok else {"law": "regepi", "quantale": X.quantale.name,
                                        "group": X.group.name, "delta": X.delta, "N": N,
                                        "report": r.witnesses})


@suite("normality",
       "Every regular epimorphism of V-groups is the cokernel of its kernel",
       ("chain:3", "lukasiewicz_chain:3", "pplus"))
def _normality(cfg: LawConfig, rep: LawReport, quantales):
    rng = random.Random(cfg.seed)
    for X, N, q in _quotients(cfg, quantales, rng):
        v = vg.is_cokernel_of_kernel(q)
        rep.record(v.ok, None if v.ok else {"law": "cokernel", "group": X.group.name,
                                            "delta": X.delta, "N": N, "at": v.witness})
    regular = 0
    for f in _hom_family(replace(cfg, max_order=min(cfg.max_order, 4)),
                         [V for V in quantales if V.is_finite], rng):
        r = vg.epi_mono_report(f)
        if r.regular_epi:
            regular += 1
            v = vg.is_cokernel_of_kernel(f)
            rep.record(v.ok, None if v.ok else {"law": "cokernel", "map": f.images,
                                                "source": f.source.delta, "at": v.witness})
    rep.evidence["regular_epis_among_homs"] = regular


# -- monoidal closure -------------------------------------------------------------------

def all_categories(V: Quantale, max_carrier: int) -> list:
    """Every V-category structure on {0..n-1}, n = 1..max_carrier (finite V)."""
    if not V.is_finite:
        raise VglabError(f"{V.name} is infinite")
    out = []
    for n in range(1, max_carrier + 1):
        off = [(i, j) for i in range(n) for j in range(n) if i != j]
        for vals in itertools.product(V.elements, repeat=len(off)):
            m = [[V.top] * n for _ in range(n)]
            for (i, j), v in zip(off, vals):
                m[i][j] = v
            A = vrel.VCategory(V, tuple(range(n)), tuple(map(tuple, m)))
            if vrel.is_vcategory(A).ok:
                out.append(A)
    return out


def iso_representatives(cats: list) -> list:
    """First category of each isomorphism class (relabelling of points)."""
    seen = {}
    for A in cats:
        n = len(A.carrier)
        key = (n, min(tuple(A.matrix[p[i]][p[j]] for i in range(n) for j in range(n))
                      for p in itertools.permutations(range(n))))
        seen.setdefault(key, A)
    return list(seen.values())


@suite("monoidal_closure",
       "|VCat(A (x) B, C)| = |VCat(A, [B, C])| for all finite V-categories A, B, C",
       ("chain:3",))
def _monoidal(cfg: LawConfig, rep: LawReport, quantales):
    for V in quantales:
        cats = all_categories(V, cfg.max_carrier)
        reps = iso_representatives(cats)
        rep.evidence[V.name] = {"categories": len(cats), "iso_classes": len(reps)}
        try:
            vrel._chain_levels(V)
            bulk = True
        except VglabError:
            bulk = False
        codes = [vrel.matrix_code(A) for A in reps] if bulk else None
        sizes = range(1, cfg.max_carrier + 1)
        for B in reps:
            if bulk:
                left = {m: [vrel.functor_counts_from(vrel.tensor_cat(A, B), m) for A in reps]
                        for m in sizes}
            for ci, C in enumerate(reps):
                H = vrel.internal_hom(B, C)
                if bulk:
                    right = {n: vrel.functor_counts_into(H, n) for n in sizes}
                for ai, A in enumerate(reps):
                    if bulk:
                        l = int(left[len(C)][ai][codes[ci]])
                        r = int(right[len(A)][codes[ai]])
                    else:
                        l = vrel.count_vfunctors(vrel.tensor_cat(A, B), C)
                        r = vrel.count_vfunctors(A, H)
                    rep.record(l == r, None if l == r else {
                        "law": "currying", "quantale": V.name, "A": A.matrix, "B": B.matrix,
                        "C": C.matrix, "left": l, "right": r})


# -- regularity lemma ---------------------------------------------------------------------

@suite("regularity_lemma",
       "For a V-category a: symmetric, a.a° <= a, a.a°.a <= a, and a = b°.b for some b "
       "are equivalent",
       ("two", "chain:3", "lukasiewicz_chain:3", "pplus"))
def _regularity(cfg: LawConfig, rep: LawReport, quantales):
    rng = random.Random(cfg.seed)
    sym = 0
    for V in quantales:
        if V.is_finite:
            cats = all_categories(V, cfg.max_carrier)
        else:
            cats = []
            for _ in range(cfg.random_instances):
                n = rng.randint(1, 4)
                m = [[V.unit if i == j else rng.choice([V.bottom, *V.sample(rng, 2)])
                      for j in range(n)] for i in range(n)]
                if rng.random() < 0.3:
                    m = [[m[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
                cats.append(vrel.transitive_closure(vrel.VCategory(V, tuple(range(n)),
                                                                   tuple(map(tuple, m)))))
        for A in cats:
            r = vrel.regularity_report(A)
            sym += r.symmetric
            rep.record(r.agree, None if r.agree else {
                "law": "regularity", "quantale": V.name, "matrix": A.matrix,
                "flags": [r.symmetric, r.regular, r.difunctional, r.positive]})
    rep.evidence["symmetric"] = sym


# -- adjunctions ----------------------------------------------------------------------------

@suite("adjunction_chain",
       "iota -| pessimist, and optimist -| tau when V is optimistic; "
       "changing base along iota then pessimist is the identity on preordered groups",
       ("two", "chain:3", "chain:4", "chain:5", "lukasiewicz_chain:3", "lukasiewicz_chain:5",
        "pplus", "pmax", "unit_interval:min", "unit_interval:product",
        "unit_interval:lukasiewicz"))
def _adjunctions(cfg: LawConfig, rep: LawReport, quantales):
    pre = list(_structures(TWO, grp.small_groups(cfg.max_order), cfg))
    for V in quantales:
        vs = None if V.is_finite else sample_elements(V, cfg.samples, cfg.seed)
        for left, right in [(iota_map(V), pessimist_map(V))] + \
                ([(optimist_map(V), tau_map(V))] if V.is_optimistic else []):
            if left.source == TWO:
                r = check_adjunction(left, right, TWO.elements, vs)
            else:
                r = check_adjunction(left, right, vs, TWO.elements)
            for f in r.failures:
                f["quantale"] = V.name
            rep.merge(r)
        if not V.is_integral:
            continue
        i, p = iota_map(V), pessimist_map(V)
        for X in pre:
            back = vg.change_of_base_vgroup(p, vg.change_of_base_vgroup(i, X))
            rep.record(back == X, None if back == X else {
                "law": "p_after_iota", "quantale": V.name, "group": X.group.name,
                "delta": X.delta, "got": back.delta})
    rep.evidence["preordered_groups"] = len(pre)


# -- strongly unital necessary condition ---------------------------------------------------

@suite("strongly_unital_necessary",
       "If V-groups over V form a strongly unital category then b(0,y) = b(y,0) (x) b(0,y); "
       "where this fails at x, the point (Y x <x>, section z -> (z, z)) is not strong",
       ("pplus", "chain:3", "lukasiewicz_chain:3"))
def _strongly_unital(cfg: LawConfig, rep: LawReport, quantales):
    rng = random.Random(cfg.seed)
    failing = 0
    for V in quantales:
        if V.is_finite:
            ys = list(_structures(V, cfg.group_list(), cfg))
        else:
            ys = [vg.vgroup_from_delta(grp.cyclic(3), V, ["0", "1", "2"])] if V.name == "pplus" \
                else []
            ys += [_random_vgroup(V, grp.cyclic(rng.randint(2, cfg.max_order)), rng)
                   for _ in range(cfg.random_instances)]
        for Y in ys:
            r = vg.strongly_unital_check(Y)
            if r.necessary_condition:
                rep.record(True)
                continue
            failing += 1
            if V.is_frame:
                rep.record(False, {"law": "frame_condition", "quantale": V.name,
                                   "group": Y.group.name, "delta": Y.delta})
                continue
            ce = r.counterexample
            ok = (ce["c_value"] == ce["formula_value"] and ce["c_value"] != ce["d_value"]
                  and ce["dual_route_agrees"] and not ce["strong"])
            rep.record(ok, None if ok else {"law": "counterexample", "quantale": V.name,
                                            "group": Y.group.name, "delta": Y.delta,
                                            "report": ce})
            if "example" not in rep.evidence:
                rep.evidence["example"] = {
                    "quantale": V.name, "group": Y.group.name,
                    "delta": [V.format(v) for v in Y.delta], "y": r.failing,
                    "b(0,y)": V.format(r.values["b(0,y)"]),
                    "b(y,0)*b(0,y)": V.format(r.values["b(y,0)*b(0,y)"]),
                    "c": V.format(ce["c_value"]), "d": V.format(ce["d_value"])}
    rep.evidence["failing_condition"] = failing


# -- running ---------------------------------------------------------------------------------

def _pmap(fn, items, jobs: int):
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def suite_ids() -> list:
    return list(REGISTRY)


def run_suite(id: str, config: LawConfig | None = None) -> LawReport:
    if id not in REGISTRY:
        raise UnknownSuite(f"unknown suite {id!r}; known: {', '.join(REGISTRY)}", list(REGISTRY))
    cfg = config or LawConfig()
    s = REGISTRY[id]
    rep = LawReport(id, claim=s.claim)
    quantales = cfg.quantale_list(s.quantales)
    rep.evidence["quantales"] = [V.name for V in quantales]
    t = time.perf_counter()
    s.run(cfg, rep, quantales)
    rep.duration = time.perf_counter() - t
    return rep


def _run_one(args):
    id, cfg = args
    return run_suite(id, replace(cfg, jobs=1))


def run_all(config: LawConfig | None = None, ids: list | None = None,
            fail_fast: bool = False) -> list:
    """Run suites in registry order (or the order of ``ids``)."""
    cfg = config or LawConfig()
    ids = list(REGISTRY) if ids is None else list(ids)
    for i in ids:
        if i not in REGISTRY:
            raise UnknownSuite(f"unknown suite {i!r}; known: {', '.join(REGISTRY)}", list(REGISTRY))
    if fail_fast or cfg.jobs <= 1:
        out = []
        for i in ids:
            out.append(run_suite(i, cfg))
            if fail_fast and not out[-1].ok:
                break
        return out
    return _pmap(_run_one, [(i, cfg) for i in ids], cfg.jobs)
