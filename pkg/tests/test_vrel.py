import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from vglab import vrel
from vglab.errors import CarrierMismatch, PreconditionError
from vglab.laws import all_categories
from vglab.quantale import INF, TWO, identity_hom, iota_map, make_quantale, pessimist_map
from vglab.vrel import VCategory, VRel

from oracles import floyd_warshall, path_join, random_graph, random_pplus_graph

C3 = make_quantale("chain:3")
C4 = make_quantale("chain:4")
L3 = make_quantale("lukasiewicz_chain:3")
P = make_quantale("pplus")
H = F(1, 2)


def pplus_example():
    return vrel.category_from_rows(P, "xyz", [["0", "1", "5"], ["inf", "0", "1"], ["inf", "inf", "0"]])


# -- relation algebra ----------------------------------------------------------------

def test_compose_example():
    r = VRel(C3, ("x",), ("a", "b"), ((H, F(1)),))
    s = VRel(C3, ("a", "b"), ("z",), ((F(1),), (F(0),)))
    assert vrel.compose(r, s).matrix == ((H,),)
    with pytest.raises(CarrierMismatch):
        vrel.compose(s, s)


def _rand_rel(V, src, tgt, rng):
    return VRel(V, src, tgt, tuple(tuple(rng.choice(V.elements) for _ in tgt) for _ in src))


@pytest.mark.parametrize("V", [C3, L3, TWO])
def test_compose_associative_and_unital(V):
    rng = random.Random(1)
    for _ in range(60):
        a, b, c, d = (tuple(range(rng.randint(1, 3))) for _ in range(4))
        r, s, t = _rand_rel(V, a, b, rng), _rand_rel(V, b, c, rng), _rand_rel(V, c, d, rng)
        assert vrel.compose(vrel.compose(r, s), t) == vrel.compose(r, vrel.compose(s, t))
        assert vrel.compose(vrel.identity_rel(V, a), r) == r
        assert vrel.compose(r, vrel.identity_rel(V, b)) == r


def test_opposite_and_pointwise():
    A = pplus_example()
    assert vrel.opposite(vrel.opposite(A)) == A
    S = vrel.pointwise("meet", A, vrel.opposite(A))
    assert vrel.opposite(S) == S


# -- V-category predicates -------------------------------------------------------------

def test_is_vcategory_examples():
    assert vrel.is_vcategory(vrel.discrete(C3, "abc")).ok
    assert vrel.is_vcategory(vrel.indiscrete(L3, "abc")).ok
    bad = vrel.is_vcategory(pplus_example())
    assert bad.reflexive and not bad.transitive
    assert bad.transitive_witness == ("x", "y", "z")
    g = VCategory(C3, ("a",), ((H,),))
    assert vrel.is_vcategory(g).reflexive_witness == "a"


def test_vfunctor_examples():
    A = pplus_example()
    assert vrel.is_vfunctor({c: c for c in "xyz"}, A, A).ok
    assert vrel.is_vfunctor(lambda c: "*", A, vrel.unit_category(P)).ok
    B = vrel.indiscrete(C3, "pq")
    D = vrel.discrete(C3, "pq")
    assert all(vrel.is_vfunctor(f, D, B).ok for f in itertools.product("pq", repeat=2))
    v = vrel.is_vfunctor(["p", "q"], B, D)
    assert not v.ok and v.witness == ("p", "q")


def _lemma_forms(f, A, B):
    """The three relational reformulations of being a V-functor."""
    V = A.quantale
    fr = vrel.map_rel(V, f, A.carrier, B.carrier)
    fo = vrel.opposite(fr)
    one = bool(vrel.rel_leq(A.rel, vrel.product(fo, B.rel, fr)))
    two = bool(vrel.rel_leq(vrel.product(fr, A.rel, fo), B.rel))
    three = bool(vrel.rel_leq(vrel.product(fr, vrel.opposite(A.rel)),
                              vrel.product(vrel.opposite(B.rel), fr)))
    return one, two, three


@pytest.mark.parametrize("V", [TWO, C3, L3])
def test_vfunctor_equivalent_forms(V):
    cats = all_categories(V, 2)
    for A, B in itertools.product(cats, repeat=2):
        for f in itertools.product(B.carrier, repeat=len(A)):
            direct = vrel.is_vfunctor(f, A, B).ok
            assert _lemma_forms(f, A, B) == (direct, direct, direct)


# -- closure ------------------------------------------------------------------------------

def test_closure_examples():
    A = pplus_example()
    C = vrel.transitive_closure(A)
    assert C.value("x", "z") == 2
    assert vrel.transitive_closure(C) == C
    cyc = VCategory(C3, "xyz", ((F(1), H, F(0)), (F(0), F(1), H), (H, F(0), F(1))))
    out = vrel.transitive_closure(cyc)
    assert all(out.matrix[i][j] == H for i in range(3) for j in range(3) if i != j)


def test_closure_matches_path_join_chain4():
    rng = random.Random(11)
    for _ in range(200):
        g = random_graph(C4, rng.randint(1, 5), rng)
        C = vrel.transitive_closure(g)
        assert C.matrix == path_join(g)
        assert vrel.is_vcategory(C).ok


def test_closure_matches_floyd_warshall_pplus():
    rng = random.Random(12)
    for _ in range(200):
        g = random_pplus_graph(rng.randint(1, 6), rng)
        assert vrel.transitive_closure(g).matrix == floyd_warshall(g)


def test_closure_needs_reflexive_graph():
    with pytest.raises(PreconditionError):
        vrel.transitive_closure(VCategory(C3, ("a",), ((H,),)))


# -- symmetrisation -----------------------------------------------------------------------

def test_symmetrize_examples():
    A = vrel.category_from_rows(P, "xy", [["0", "1"], ["3", "0"]])
    assert vrel.symmetrize(A, "coreflect").matrix == ((0, 3), (3, 0))
    assert vrel.symmetrize(A, "reflect").matrix == ((0, 1), (1, 0))
    pre = vrel.category_from_rows(TWO, "xy", [["1", "1"], ["0", "1"]])
    assert vrel.symmetrize(pre, "reflect") == vrel.indiscrete(TWO, "xy")
    assert vrel.symmetrize(pre, "coreflect") == vrel.discrete(TWO, "xy")
    S = vrel.discrete(C3, "ab")
    assert vrel.symmetrize(S, "reflect") == S == vrel.symmetrize(S, "coreflect")
    with pytest.raises(ValueError):
        vrel.symmetrize(S, "sideways")


@pytest.mark.parametrize("V", [TWO, C3, L3])
def test_symmetrize_extremal(V):
    by_size = {}
    for A in all_categories(V, 3):
        by_size.setdefault(len(A), []).append(A)
    for n, cats in by_size.items():
        syms = [S for S in cats if vrel.is_symmetric(S)]
        for A in cats:
            co, re = vrel.symmetrize(A, "coreflect"), vrel.symmetrize(A, "reflect")
            below = [S for S in syms if vrel.rel_leq(S, A)]
            above = [S for S in syms if vrel.rel_leq(A, S)]
            assert co in below and all(vrel.rel_leq(S, co) for S in below)
            assert re in above and all(vrel.rel_leq(re, S) for S in above)


# -- initial / final ----------------------------------------------------------------------

def test_initial_structure():
    A = pplus_example()
    assert vrel.initial_structure(A.carrier, [(lambda c: c, A)]) == A
    sub = vrel.initial_structure("xz", [(lambda c: c, A)])
    assert sub.matrix == ((0, 5), (INF, 0))
    X = vrel.category_from_rows(C3, "ab", [["1", "1/2"], ["0", "1"]])
    Y = vrel.category_from_rows(C3, "uv", [["1", "0"], ["1", "1"]])
    T = vrel.cartesian_cat(X, Y)
    I = vrel.initial_structure(T.carrier, [(lambda p: p[0], X), (lambda p: p[1], Y)])
    assert I == T


def test_final_structure():
    A = vrel.category_from_rows(C3, "abc", [["1", "1/2", "0"], ["0", "1", "0"], ["0", "0", "1"]])
    same = vrel.final_structure_surjection({"a": "p", "b": "q", "c": "r"}, A, "pqr")
    assert same.category.matrix == A.matrix
    one = vrel.final_structure_surjection(lambda c: "*", A, "*")
    assert one.category.matrix == ((F(1),),) and one.transitive
    with pytest.raises(PreconditionError):
        vrel.final_structure_surjection(lambda c: "p", A, "pq")


# -- monoidal structure -------------------------------------------------------------------

def test_tensor_and_cartesian():
    X = vrel.category_from_rows(L3, "ab", [["1", "1/2"], ["1/2", "1"]])
    T, Cc = vrel.tensor_cat(X, X), vrel.cartesian_cat(X, X)
    assert T.value(("a", "a"), ("b", "b")) == 0
    assert Cc.value(("a", "a"), ("b", "b")) == H
    I = vrel.unit_category(L3)
    assert vrel.tensor_cat(X, I).matrix == X.matrix


def brute_count(A, B):
    return sum(vrel.is_vfunctor(f, A, B).ok for f in itertools.product(B.carrier, repeat=len(A)))


@pytest.mark.parametrize("V", [TWO, C3, L3])
def test_functor_count_matches_brute_force(V):
    cats = all_categories(V, 3)
    rng = random.Random(5)
    for _ in range(150):
        A, B = rng.choice(cats), rng.choice(cats)
        assert vrel.count_vfunctors(A, B) == brute_count(A, B)
        assert len(list(vrel.iter_vfunctors(A, B))) == brute_count(A, B)


def test_bulk_counts_match_backtracking():
    cats = all_categories(C3, 3)
    rng = random.Random(9)
    codes = {vrel.matrix_code(C): C for C in cats}
    assert len(codes) == len(cats)
    for _ in range(60):
        A, B = rng.choice(cats), rng.choice(cats)
        D = vrel.tensor_cat(A, B)
        m = rng.randint(1, 3)
        arr = vrel.functor_counts_from(D, m)
        for code, C in codes.items():
            if len(C) == m:
                assert arr[code] == vrel.count_vfunctors(D, C)
        Hm = vrel.internal_hom(B, A)
        arr = vrel.functor_counts_into(Hm, m)
        for code, C in codes.items():
            if len(C) == m:
                assert arr[code] == vrel.count_vfunctors(C, Hm)


def test_bulk_counting_rejects_non_chains():
    with pytest.raises(PreconditionError):
        vrel.functor_counts_from(vrel.discrete(P, "ab"), 2)


def test_internal_hom_from_unit():
    B = vrel.category_from_rows(C3, "ab", [["1", "1/2"], ["0", "1"]])
    Hm = vrel.internal_hom(vrel.unit_category(C3), B)
    assert Hm.carrier == (("a",), ("b",)) and Hm.matrix == B.matrix
    assert vrel.is_vcategory(Hm).ok


def test_currying_small_exhaustive():
    cats = all_categories(L3, 2)
    for A, B, C in itertools.product(cats, repeat=3):
        assert brute_count(vrel.tensor_cat(A, B), C) == brute_count(A, vrel.internal_hom(B, C))


# -- proper / open / regularity ----------------------------------------------------------

def test_proper_open_examples():
    A = pplus_example()
    po = vrel.proper_open_report(lambda c: c, A, A)
    assert po.proper and po.open
    iso = vrel.VCategory(C3, ("p",), ((F(1),),))
    ind = vrel.indiscrete(C3, "pq")
    po = vrel.proper_open_report(["p"], iso, ind)
    assert not po.proper and not po.open


@pytest.mark.parametrize("V", [TWO, C3, L3])
def test_proper_iff_open_between_duals(V):
    cats = all_categories(V, 2)
    for A, B in itertools.product(cats, repeat=2):
        for f in vrel.iter_vfunctors(A, B):
            po = vrel.proper_open_idx(f, A, B)
            dual = vrel.proper_open_idx(f, vrel.opposite(A), vrel.opposite(B))
            assert po.proper == dual.open and po.open == dual.proper


def test_regularity_examples():
    r = vrel.regularity_report(vrel.discrete(C3, "abc"))
    assert r.symmetric and r.regular and r.difunctional and r.positive
    pre = vrel.category_from_rows(TWO, "xy", [["1", "1"], ["0", "1"]])
    r = vrel.regularity_report(pre)
    assert not (r.symmetric or r.regular or r.difunctional or r.positive)


@pytest.mark.parametrize("V", [TWO, C3, L3])
def test_regularity_agreement_and_coreflection(V):
    for A in all_categories(V, 3):
        assert vrel.regularity_report(A).agree
        assert vrel.regularity_report(vrel.symmetrize(A, "coreflect")).symmetric


# -- change of base ----------------------------------------------------------------------

def test_change_of_base():
    A = pplus_example()
    C = vrel.transitive_closure(A)
    assert vrel.change_of_base_cat(identity_hom(P), C) == C
    pd = vrel.change_of_base_cat(pessimist_map(P), C)
    assert pd == vrel.discrete(TWO, "xyz")
    pre = vrel.category_from_rows(TWO, "xy", [["1", "1"], ["0", "1"]])
    up = vrel.change_of_base_cat(iota_map(C3), pre)
    assert {v for row in up.matrix for v in row} <= {C3.unit, C3.bottom}


@given(st.lists(st.lists(st.sampled_from(["0", "1/2", "1"]), min_size=3, max_size=3),
                min_size=3, max_size=3))
@settings(max_examples=150, deadline=None)
def test_closure_is_least_above(rows):
    rows = [[("1" if i == j else v) for j, v in enumerate(r)] for i, r in enumerate(rows)]
    g = vrel.category_from_rows(C3, "abc", rows)
    C = vrel.transitive_closure(g)
    assert vrel.rel_leq(g, C)
    for D in all_categories_c3_3():
        if vrel.rel_leq(g, D.relabel("abc")):
            assert vrel.rel_leq(C, D.relabel("abc"))


_CATS = {}


def all_categories_c3_3():
    if not _CATS:
        _CATS["c"] = [A for A in all_categories(C3, 3) if len(A) == 3]
    return _CATS["c"]
