"""V-groups on finite carriers.

A compatible structure on a group G is stored as its profile
``delta[x] = a(0, x)``; the full matrix is ``a(x, y) = delta[y - x]``.
A profile is valid when

* ``delta[0]`` is top,
* ``delta[u] (x) delta[v] <= delta[u + v]``,
* ``delta[g + u - g] == delta[u]``.

The last condition is what makes left and right shifts agree.  Without it a
right-invariant V-category on a non-abelian group can fail to make ``+`` a
V-functor (S3 over ``two`` with the cone ``{e, (1 2)}`` is the smallest case).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Iterable, Mapping, Sequence

from . import group as grp
from .errors import (ActionError, BoundExceeded, CarrierMismatch, NonTermination,
                     PreconditionError, QuantaleError, VGroupError)
from .group import FiniteGroup, GroupAction, GroupHom
from .quantale import LaxHom, Quantale, check_lax_hom
from .report import OK, LawReport, Verdict
from .vrel import (VCategory, is_vcategory, proper_open_idx, tensor_cat, vfunctor_verdict)


# -- profiles ----------------------------------------------------------------------

def profile_violation(G: FiniteGroup, V: Quantale, delta: Sequence) -> dict | None:
    """First failing profile law, or None."""
    lab = G.labels
    if delta[0] != V.top:
        return {"law": "unit", "detail": "delta(0) must be top (k = top is assumed)",
                "value": V.format(delta[0])}
    leq, tensor, bot = V.leq, V.tensor, V.bottom
    for u in G.elements:
        du = delta[u]
        if du == bot:
            continue
        row = G.table[u]
        for v in G.elements:
            if not leq(tensor(du, delta[v]), delta[row[v]]):
                return {"law": "superadditive", "u": lab[u], "v": lab[v]}
    for g in G.elements:
        for u in G.elements:
            if delta[G.conj(g, u)] != delta[u]:
                return {"law": "conjugation", "g": lab[g], "u": lab[u]}
    return None


@dataclass(frozen=True)
class VGroup:
    group: FiniteGroup
    quantale: Quantale
    delta: tuple
    checked: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(self.delta))
        if len(self.delta) != len(self.group):
            raise CarrierMismatch("profile length differs from group order")
        if self.checked:
            for v in self.delta:
                if not self.quantale.contains(v):
                    raise QuantaleError(f"{v!r} is not in {self.quantale.name}")
            w = profile_violation(self.group, self.quantale, self.delta)
            if w is not None:
                raise VGroupError(f"invalid V-group profile ({w['law']})", w)

    def __len__(self):
        return len(self.group)

    def a(self, x: int, y: int):
        return self.delta[self.group.sub(y, x)]

    @cached_property
    def category(self) -> VCategory:
        n = len(self.group)
        return VCategory(self.quantale, self.group.labels,
                         tuple(tuple(self.a(i, j) for j in range(n)) for i in range(n)))

    def value(self, label):
        return self.delta[self.group.index(label)]


def vgroup_from_delta(G: FiniteGroup, V: Quantale, delta) -> VGroup:
    """Profile given as a sequence in element order or a mapping label -> value.

    Literals (strings such as ``"1/2"``, ``"inf"``, ``"top"``) are coerced.
    """
    if isinstance(delta, Mapping):
        try:
            delta = [delta[l] for l in G.labels]
        except KeyError as exc:
            raise CarrierMismatch(f"profile misses element {exc.args[0]!r}") from None
    delta = list(delta)
    if len(delta) != len(G):
        raise CarrierMismatch(f"profile has {len(delta)} entries, group has {len(G)}")
    return VGroup(G, V, tuple(v if V.contains(v) else V.element(v) for v in delta))


def discrete_vgroup(G: FiniteGroup, V: Quantale) -> VGroup:
    return VGroup(G, V, (V.top,) + (V.bottom,) * (len(G) - 1))


def indiscrete_vgroup(G: FiniteGroup, V: Quantale) -> VGroup:
    return VGroup(G, V, (V.top,) * len(G))


# -- matrix validation -------------------------------------------------------------

@dataclass(frozen=True)
class MatrixValidation:
    valid: bool
    delta: tuple | None
    functor_condition: bool
    shift_condition: bool
    right_shift_only: bool
    functor_witness: Any = None
    shift_witness: Any = None

    @property
    def witness(self):
        return self.shift_witness if self.shift_witness is not None else self.functor_witness


def vgroup_validate_matrix(G: FiniteGroup, A: VCategory) -> MatrixValidation:
    """Check a full matrix two ways and insist they agree.

    functor: V-category and ``+ : (X,a) (x) (X,a) -> (X,a)`` a V-functor.
    shift:   V-category and a(x', x'') = a(x'+x, x''+x) = a(x+x', x+x'').
    ``right_shift_only`` reports the weaker one-sided condition separately.
    """
    n = len(G)
    if len(A.carrier) != n:
        raise CarrierMismatch("matrix size differs from group order")
    V, m, t, lab = A.quantale, A.matrix, G.table, G.labels
    cat = is_vcategory(A)
    base = cat.ok and m[0][0] == V.top
    base_w = None
    if not cat.reflexive:
        base_w = {"law": "reflexive", "x": cat.reflexive_witness}
    elif not cat.transitive:
        base_w = {"law": "transitive", "triple": cat.transitive_witness}
    elif m[0][0] != V.top:
        base_w = {"law": "unit", "detail": "a(0,0) must be top (k = top is assumed)"}

    right = True
    shift_w = None
    for x, p, q in itertools.product(range(n), repeat=3):
        r = m[t[p][x]][t[q][x]] == m[p][q]
        if not r:
            right = False
        if shift_w is None and not (r and m[t[x][p]][t[x][q]] == m[p][q]):
            shift_w = {"law": "shift", "pair": (lab[p], lab[q]), "by": lab[x],
                       "side": "right" if not r else "left"}
    functor_w = None
    leq, tensor = V.leq, V.tensor
    for x, x2 in itertools.product(range(n), repeat=2):
        axx = m[x][x2]
        for y, y2 in itertools.product(range(n), repeat=2):
            if not leq(tensor(axx, m[y][y2]), m[t[x][y]][t[x2][y2]]):
                functor_w = {"law": "addition_functor",
                             "pairs": ((lab[x], lab[x2]), (lab[y], lab[y2]))}
                break
        if functor_w is not None:
            break
    functor_ok = base and functor_w is None
    shift_ok = base and shift_w is None
    if functor_ok != shift_ok:
        raise AssertionError(f"matrix conditions disagree on {G.name}: "
                             f"functor={functor_ok}, shift={shift_ok}")
    return MatrixValidation(
        functor_ok, tuple(m[0]) if functor_ok else None, functor_ok, shift_ok,
        base and right,
        base_w if not base else functor_w, base_w if not base else shift_w)


# -- homomorphisms ---------------------------------------------------------------------

@dataclass(frozen=True)
class VGroupHom:
    source: VGroup
    target: VGroup
    hom: GroupHom

    def __post_init__(self):
        if self.hom.source != self.source.group or self.hom.target != self.target.group:
            raise CarrierMismatch("hom does not run between the given groups")
        if self.source.quantale != self.target.quantale:
            raise CarrierMismatch("V-groups over different quantales")
        w = vhom_violation(self.source, self.target, self.hom.images)
        if w is not None:
            raise VGroupError("not a V-functor", w)

    @property
    def images(self) -> tuple:
        return self.hom.images

    def __call__(self, x: int) -> int:
        return self.hom.images[x]


def vhom_violation(X: VGroup, Y: VGroup, f: Sequence[int]):
    """One-point criterion delta_X(x) <= delta_Y(f x); the failing label or None."""
    leq = X.quantale.leq
    for x in X.group.elements:
        if not leq(X.delta[x], Y.delta[f[x]]):
            return X.group.labels[x]
    return None


def vgroup_hom(X: VGroup, Y: VGroup, images: Sequence[int]) -> VGroupHom:
    return VGroupHom(X, Y, GroupHom(X.group, Y.group, tuple(images)))


def enumerate_vhoms(X: VGroup, Y: VGroup, bound: int = 10**6) -> list:
    return [VGroupHom(X, Y, h) for h in grp.enumerate_homs(X.group, Y.group, bound)
            if vhom_violation(X, Y, h.images) is None]


# -- symmetry ---------------------------------------------------------------------

def is_symmetric_vgroup(X: VGroup) -> Verdict:
    """delta(x) = delta(-x); cross-checked against inversion being a V-functor."""
    G = X.group
    bad = next((x for x in G.elements if X.delta[x] != X.delta[G.neg(x)]), None)
    inv = vfunctor_verdict(G.inverse, X.category, X.category)
    if (bad is None) != inv.ok:
        raise AssertionError("profile symmetry and inversion functoriality disagree")
    return OK if bad is None else Verdict(False, G.labels[bad])


def symmetrize_vgroup(X: VGroup, mode: str = "coreflect") -> VGroup:
    G, V, d = X.group, X.quantale, X.delta
    if mode == "coreflect":
        return VGroup(G, V, tuple(V.meet2(d[x], d[G.neg(x)]) for x in G.elements))
    if mode == "reflect":
        return generated_structure(G, V, [V.join2(d[x], d[G.neg(x)]) for x in G.elements])
    raise ValueError(f"mode must be 'coreflect' or 'reflect', not {mode!r}")


# -- generated structures ---------------------------------------------------------

def _generation_bound(V: Quantale, n: int) -> int:
    if V.is_integral:
        # words of length < |G| suffice, and each round doubles the length covered
        return math.ceil(math.log2(max(n, 2))) + 2
    if V.is_finite:
        return len(V.elements) * n + 1
    raise PreconditionError(f"generated structures over {V.name} need an integral or finite quantale")


def generated_structure(G: FiniteGroup, V: Quantale, seed: Sequence) -> VGroup:
    """Least valid profile above ``seed`` (and above top at 0)."""
    if len(seed) != len(G):
        raise CarrierMismatch("seed length differs from group order")
    d = list(seed)
    d[0] = V.top
    classes = [c for c in G.conjugacy_classes() if len(c) > 1]
    bound = _generation_bound(V, len(G))
    join2, tensor, bot = V.join2, V.tensor, V.bottom
    for _ in range(bound + 1):
        new = list(d)
        for u in G.elements:
            du = d[u]
            if du == bot:
                continue
            row = G.table[u]
            for v in G.elements:
                w = row[v]
                new[w] = join2(new[w], tensor(du, d[v]))
        for cls in classes:
            j = V.join(new[c] for c in cls)
            for c in cls:
                new[c] = j
        if new == d:
            return VGroup(G, V, tuple(d))
        d = new
    raise NonTermination(f"generated structure on {G.name} over {V.name} did not stabilise "
                         f"within {bound} rounds")


def enumerate_vgroup_structures(G: FiniteGroup, V: Quantale, bound: int = 10**5) -> list:
    """All valid profiles, one value per non-trivial conjugacy class, in carrier order."""
    if not V.is_finite:
        raise PreconditionError(f"{V.name} is infinite; structures cannot be enumerated")
    classes = [c for c in G.conjugacy_classes() if c != (0,)]
    total = len(V.elements) ** len(classes)
    if total > bound:
        raise BoundExceeded(f"{total} candidate profiles exceed the bound {bound}")
    out = []
    for choice in itertools.product(V.elements, repeat=len(classes)):
        d = [V.top] * len(G)
        for cls, v in zip(classes, choice):
            for c in cls:
                d[c] = v
        if profile_violation(G, V, d) is None:
            out.append(VGroup(G, V, tuple(d), checked=False))
    return out


# -- limits and colimits ----------------------------------------------------------

def product_vgroup(X: VGroup, Y: VGroup) -> VGroup:
    """Direct product with delta(x, y) = delta_X(x) meet delta_Y(y)."""
    V = X.quantale
    P = grp.direct_product(X.group, Y.group)
    return VGroup(P, V, tuple(V.meet2(dx, dy) for dx in X.delta for dy in Y.delta))


def product_projections(X: VGroup, Y: VGroup, P: VGroup | None = None) -> tuple:
    P = P or product_vgroup(X, Y)
    ny = len(Y.group)
    return (vgroup_hom(P, X, [p // ny for p in P.group.elements]),
            vgroup_hom(P, Y, [p % ny for p in P.group.elements]))


def product_injections(X: VGroup, Y: VGroup, P: VGroup | None = None) -> tuple:
    P = P or product_vgroup(X, Y)
    ny = len(Y.group)
    return (vgroup_hom(X, P, [x * ny for x in X.group.elements]),
            vgroup_hom(Y, P, list(Y.group.elements)))


def restrict_vgroup(X: VGroup, H: Sequence[int], name: str = "") -> tuple:
    """Subgroup H with the initial (restricted) structure, and its inclusion."""
    S, inc = grp.subgroup_group(X.group, H, name)
    sub = VGroup(S, X.quantale, tuple(X.delta[h] for h in inc.images))
    return sub, VGroupHom(sub, X, inc)


def kernel_vgroup(f: VGroupHom) -> tuple:
    return restrict_vgroup(f.source, grp.hom_kernel_image(f.hom).kernel, "ker")


def equalizer_vgroup(f: VGroupHom, g: VGroupHom) -> tuple:
    if f.source != g.source or f.target != g.target:
        raise CarrierMismatch("equalizer needs parallel homs")
    H = [x for x in f.source.group.elements if f(x) == g(x)]
    return restrict_vgroup(f.source, H, "eq")


def quotient_vgroup(X: VGroup, N: Sequence[int]) -> tuple:
    """(X/N, q) with the fibre-join profile; validity is re-checked on construction."""
    Q, q = grp.quotient_group(X.group, N)
    V = X.quantale
    d = [V.bottom] * len(Q)
    for x in X.group.elements:
        d[q(x)] = V.join2(d[q(x)], X.delta[x])
    try:
        QV = VGroup(Q, V, tuple(d))
    except VGroupError as exc:
        raise AssertionError(f"fibre-join quotient is not a V-group: {exc.witness}") from None
    return QV, VGroupHom(X, QV, q)


def coequalizer_vgroup(f: VGroupHom, g: VGroupHom) -> tuple:
    if f.source != g.source or f.target != g.target:
        raise CarrierMismatch("coequalizer needs parallel homs")
    Z = f.target.group
    N = grp.normal_closure(Z, {Z.sub(f(x), g(x)) for x in f.source.group.elements})
    return quotient_vgroup(f.target, N)


def change_of_base_vgroup(phi: LaxHom, X: VGroup) -> VGroup:
    if phi.source != X.quantale:
        raise CarrierMismatch(f"{phi.name} does not start at {X.quantale.name}")
    samples = None if phi.source.is_finite else list(dict.fromkeys(X.delta))
    rep = check_lax_hom(phi, samples)
    if not rep.ok:
        raise QuantaleError(f"{phi.name} is not a lax homomorphism", rep.witness)
    return VGroup(X.group, phi.target, tuple(phi(v) for v in X.delta))


# -- epis, monos and strong epis ---------------------------------------------------

@dataclass(frozen=True)
class EpiMonoReport:
    mono: bool
    epi: bool
    regular_mono: bool
    regular_epi: bool
    proper: bool
    open: bool
    witnesses: dict = field(default_factory=dict)


def epi_mono_report(f: VGroupHom) -> EpiMonoReport:
    X, Y, V = f.source, f.target, f.source.quantale
    ki = grp.hom_kernel_image(f.hom)
    w = {}
    initial = next((X.group.labels[x] for x in X.group.elements
                    if X.delta[x] != Y.delta[f(x)]), None)
    fibre = [V.bottom] * len(Y.group)
    for x in X.group.elements:
        fibre[f(x)] = V.join2(fibre[f(x)], X.delta[x])
    final = next((Y.group.labels[y] for y in Y.group.elements if fibre[y] != Y.delta[y]), None)
    if initial is not None:
        w["not_initial"] = initial
    if final is not None:
        w["not_final"] = final
    po = proper_open_idx(f.images, X.category, Y.category)
    if po.proper_witness is not None:
        w["not_proper"] = po.proper_witness
    if po.open_witness is not None:
        w["not_open"] = po.open_witness
    return EpiMonoReport(ki.is_injective, ki.is_surjective,
                         ki.is_injective and initial is None,
                         ki.is_surjective and final is None,
                         po.proper, po.open, w)


def is_cokernel_of_kernel(f: VGroupHom) -> Verdict:
    """Quotienting the source by ker f reproduces the target structure on the image."""
    K = grp.hom_kernel_image(f.hom).kernel
    Q, q = quotient_vgroup(f.source, K)
    for x in f.source.group.elements:
        if Q.delta[q(x)] != f.target.delta[f(x)]:
            return Verdict(False, f.source.group.labels[x])
    return OK


def is_jointly_strongly_epi(f: VGroupHom, g: VGroupHom) -> Verdict:
    """No proper mono factorization: images generate Z and the generated
    structure from the pushed-forward profiles is all of delta_Z."""
    Z = f.target
    if g.target != Z:
        raise CarrierMismatch("the two homs need a common codomain")
    G, V = Z.group, Z.quantale
    imgs = set(f.images) | set(g.images)
    sub = grp.subgroup_generated(G, imgs)
    if len(sub) < len(G):
        return Verdict(False, {"reason": "images generate a proper subgroup",
                               "subgroup": [G.labels[s] for s in sub]})
    seed = [V.bottom] * len(G)
    for h in (f, g):
        for x in h.source.group.elements:
            seed[h(x)] = V.join2(seed[h(x)], h.source.delta[x])
    gen = generated_structure(G, V, seed)
    for z in G.elements:
        if gen.delta[z] != Z.delta[z]:
            return Verdict(False, {"reason": "generated structure is smaller",
                                   "entry": G.labels[z], "generated": gen.delta[z],
                                   "target": Z.delta[z]})
    return OK


# -- semidirect products -----------------------------------------------------------

def _semidirect_inputs(action: GroupAction, X: VGroup, Y: VGroup):
    if X.group != action.acted or Y.group != action.acting:
        raise CarrierMismatch("V-groups do not match the action's groups")
    if X.quantale != Y.quantale:
        raise CarrierMismatch("V-groups over different quantales")
    V = X.quantale
    for y in Y.group.elements:
        for x in X.group.elements:
            if not V.leq(X.delta[x], X.delta[action(y, x)]):
                raise ActionError("phi_y is not a V-functor on the kernel",
                                  {"y": Y.group.labels[y], "x": X.group.labels[x]})
    return grp.semidirect_product_group(action)


@dataclass(frozen=True)
class SemidirectCheck:
    structure: VCategory
    valid: bool
    witness: Any
    direct: MatrixValidation
    product: grp.SemidirectProduct

    @property
    def agree(self) -> bool:
        return self.valid == self.direct.valid

    @property
    def vgroup(self) -> VGroup | None:
        return VGroup(self.product.group, self.structure.quantale, self.direct.delta) \
            if self.direct.valid else None


def semidirect_tensor(action: GroupAction, X: VGroup, Y: VGroup) -> SemidirectCheck:
    """a (x) b on X x| Y; valid iff (x, y) -> (phi_y x, y) is a V-functor on it."""
    sp = _semidirect_inputs(action, X, Y)
    T = tensor_cat(X.category, Y.category)
    ny = len(Y.group)
    bar = tuple(action(p % ny, p // ny) * ny + p % ny for p in sp.group.elements)
    v = vfunctor_verdict(bar, T, T)
    return SemidirectCheck(T, v.ok, v.witness, vgroup_validate_matrix(sp.group, T), sp)


def lex_matrix(sp: grp.SemidirectProduct, X: VGroup, Y: VGroup) -> VCategory:
    n = len(sp.group)
    ny = len(Y.group)
    a, b = X.category.matrix, Y.category.matrix
    m = tuple(tuple(a[p // ny][q // ny] if p % ny == q % ny else b[p % ny][q % ny]
                    for q in range(n)) for p in range(n))
    return VCategory(X.quantale, sp.group.labels, m)


def semidirect_lex(action: GroupAction, X: VGroup, Y: VGroup) -> SemidirectCheck:
    """lex on X x| Y; valid iff b(y,0) (x) b(0,y) <= a(x,0) for all x and all y != 0."""
    sp = _semidirect_inputs(action, X, Y)
    V = X.quantale
    a, b = X.category.matrix, Y.category.matrix
    w = None
    for x in X.group.elements:
        for y in Y.group.elements:
            if y and not V.leq(V.tensor(b[y][0], b[0][y]), a[x][0]):
                w = {"x": X.group.labels[x], "y": Y.group.labels[y],
                     "lhs": V.tensor(b[y][0], b[0][y]), "rhs": a[x][0]}
                break
        if w is not None:
            break
    L = lex_matrix(sp, X, Y)
    return SemidirectCheck(L, w is None, w, vgroup_validate_matrix(sp.group, L), sp)


def tensor_profile(X: VGroup, Y: VGroup) -> tuple:
    V = X.quantale
    return tuple(V.tensor(dx, dy) for dx in X.delta for dy in Y.delta)


def lex_profile(X: VGroup, Y: VGroup) -> tuple:
    return tuple(dx if y == 0 else dy for dx in X.delta for y, dy in enumerate(Y.delta))


@dataclass(frozen=True)
class SplitExtensionStructure:
    action: GroupAction
    kernel: VGroup
    quotient: VGroup
    delta: tuple
    valid: bool
    is_tensor: bool
    is_lex: bool
    witness: Any = None

    @cached_property
    def product(self) -> grp.SemidirectProduct:
        return grp.semidirect_product_group(self.action)

    @property
    def vgroup(self) -> VGroup:
        if not self.valid:
            raise VGroupError("not a valid split extension", self.witness)
        return VGroup(self.product.group, self.kernel.quantale, self.delta, checked=False)


def check_split_extension(action: GroupAction, X: VGroup, Y: VGroup, delta) -> SplitExtensionStructure:
    """Is (X x| Y, delta) a split extension of Y by X in V-groups?"""
    sp = _semidirect_inputs(action, X, Y)
    return _split_structure(sp, X, Y, tuple(delta), tensor_profile(X, Y), lex_profile(X, Y))


def _split_structure(sp, X, Y, delta, tprof, lprof) -> SplitExtensionStructure:
    V = X.quantale
    ny = len(Y.group)
    G = sp.group
    w = profile_violation(G, V, delta)
    if w is None:
        for x in X.group.elements:
            if delta[x * ny] != X.delta[x]:
                w = {"law": "kernel_initial", "x": X.group.labels[x]}
                break
    if w is None:
        for p in G.elements:
            if not V.leq(delta[p], Y.delta[p % ny]):
                w = {"law": "projection_functor", "at": G.labels[p]}
                break
    if w is None:
        for y in Y.group.elements:
            if not V.leq(Y.delta[y], delta[y]):
                w = {"law": "section_functor", "y": Y.group.labels[y]}
                break
    return SplitExtensionStructure(sp.action, X, Y, delta, w is None,
                                   delta == tprof, delta == lprof, w)


def enumerate_split_structures(action: GroupAction, X: VGroup, Y: VGroup,
                               bound: int = 10**5) -> list:
    """Every profile on X x| Y making the split-extension diagram live in V-groups.

    Entries on the kernel fibre and on the section are forced; the rest range
    over v <= delta_Y(y) (the projection must be a V-functor), one variable
    per conjugacy class.
    """
    V = X.quantale
    if not V.is_finite:
        raise PreconditionError(f"{V.name} is infinite; split structures cannot be enumerated")
    sp = _semidirect_inputs(action, X, Y)
    G = sp.group
    ny = len(Y.group)
    forced = {}
    for x in X.group.elements:
        forced[x * ny] = X.delta[x]
    for y in Y.group.elements:
        forced[y] = Y.delta[y]
    fixed, free = {}, []
    for cls in G.conjugacy_classes():
        vals = {forced[p] for p in cls if p in forced}
        if len(vals) > 1:
            return []
        if vals:
            v = vals.pop()
            if any(not V.leq(v, Y.delta[p % ny]) for p in cls):
                return []
            fixed.update((p, v) for p in cls)
        else:
            cap = V.meet(Y.delta[p % ny] for p in cls)
            free.append((cls, [v for v in V.elements if V.leq(v, cap)]))
    total = math.prod(len(opts) for _, opts in free)
    if total > bound:
        raise BoundExceeded(f"{total} candidate split structures exceed the bound {bound}")
    out = []
    tprof, lprof = tensor_profile(X, Y), lex_profile(X, Y)
    for choice in itertools.product(*(opts for _, opts in free)):
        d = [None] * len(G)
        for p, v in fixed.items():
            d[p] = v
        for (cls, _), v in zip(free, choice):
            for p in cls:
                d[p] = v
        s = _split_structure(sp, X, Y, tuple(d), tprof, lprof)
        if s.valid:
            out.append(s)
    return out


# -- unital and protomodular checks -----------------------------------------------

@dataclass(frozen=True)
class StronglyUnitalReport:
    necessary_condition: bool
    failing: Any = None
    values: dict | None = None
    counterexample: dict | None = None


def strongly_unital_check(Y: VGroup) -> StronglyUnitalReport:
    """b(0,y) = b(y,0) (x) b(0,y) for all y; on failure, build the point that
    is not strong.

    For the first failing x, X = <x> with the restricted structure and the
    point is Y x X -> X with section z -> (z, z) and kernel y -> (y, 0).
    With d the product structure and c the structure generated by the kernel
    and section, c((0,0),(0,x)) = b(x,0) (x) b(0,x) while d gives b(0,x).
    """
    G, V, d = Y.group, Y.quantale, Y.delta
    bad = next((y for y in G.elements if d[y] != V.tensor(d[G.neg(y)], d[y])), None)
    if bad is None:
        return StronglyUnitalReport(True)
    x = bad
    values = {"b(0,y)": d[x], "b(y,0)*b(0,y)": V.tensor(d[G.neg(x)], d[x])}
    Xv, inc = restrict_vgroup(Y, grp.subgroup_generated(G, [x]), "<x>")
    P = product_vgroup(Y, Xv)
    nx = len(Xv.group)
    kernel = vgroup_hom(Y, P, [y * nx for y in G.elements])
    section = vgroup_hom(Xv, P, [inc(z) * nx + z for z in Xv.group.elements])
    PG = P.group
    seed = [V.bottom] * len(PG)
    for y in G.elements:
        seed[y * nx] = V.join2(seed[y * nx], d[y])
    for z in Xv.group.elements:
        p = inc(z) * nx + z
        seed[p] = V.join2(seed[p], Xv.delta[z])
    c = generated_structure(PG, V, seed)
    # the other description: closure of c0(y, z) = delta(y - z) (x) delta(z)
    c0 = [V.tensor(d[G.sub(p // nx, inc(p % nx))], Xv.delta[p % nx]) for p in PG.elements]
    dual = generated_structure(PG, V, c0)
    xz = Xv.group.labels.index(G.labels[x])
    target = xz  # position of (0, x) in Y x X
    ce = {
        "kernel_group": [G.labels[h] for h in inc.images],
        "c_value": c.delta[target],
        "d_value": P.delta[target],
        "formula_value": V.tensor(d[G.neg(x)], d[x]),
        "dual_route_agrees": dual.delta == c.delta,
        "strong": is_jointly_strongly_epi(kernel, VGroupHom(Xv, P, section.hom)).ok,
    }
    return StronglyUnitalReport(False, G.labels[x], values, ce)


@dataclass(frozen=True)
class PointSearchBounds:
    max_kernel_order: int = 3
    max_pullback_order: int = 3
    max_total_order: int = 18
    split_bound: int = 10**5


def pullback_is_strong(split: SplitExtensionStructure, Z: VGroup, g: VGroupHom) -> Verdict:
    """Pull the point back along g: Z -> Y and test whether it is strong.

    The pullback of X x| Y -> Y along g is X x| Z under phi . g, with the
    meet of the two induced structures: delta(x, z) = delta_Z(z) meet c(x, g z).
    """
    act, X = split.action, split.kernel
    ny = len(act.acting)
    sp = _pulled_back_product(act, Z.group, g.images)
    V = X.quantale
    d = tuple(V.meet2(Z.delta[z], split.delta[x * ny + g(z)])
              for x in X.group.elements for z in Z.group.elements)
    P = VGroup(sp.group, V, d)
    kernel = VGroupHom(X, P, sp.inject)
    section = VGroupHom(Z, P, sp.section)
    return is_jointly_strongly_epi(kernel, section)


@lru_cache(maxsize=4096)
def _pulled_back_product(act: GroupAction, Z: FiniteGroup, g: tuple) -> grp.SemidirectProduct:
    phi = GroupAction(Z, act.acted, tuple(act.phi[g[z]] for z in Z.elements))
    return grp.semidirect_product_group(phi)


@dataclass(frozen=True)
class ProtomodularReport:
    symmetric: bool
    point_search: LawReport


def protomodular_object_check(Y: VGroup, bounds: PointSearchBounds | None = None,
                              kernels: Iterable[VGroup] | None = None,
                              pullbacks: Iterable[VGroup] | None = None) -> ProtomodularReport:
    """Verdict is symmetry of Y; the point search tests every enumerable point over Y
    (and its pullbacks) for strength and must agree with it."""
    V = Y.quantale
    if not V.is_frame:
        raise PreconditionError(f"{V.name} is not a frame; the characterization does not apply")
    bounds = bounds or PointSearchBounds()
    sym = is_symmetric_vgroup(Y).ok
    rep = LawReport("point_search", claim="a V-group over a frame is a protomodular object "
                    "iff it is symmetric")
    if kernels is None:
        kernels = [s for G in grp.small_groups(bounds.max_kernel_order)
                   if len(G) * len(Y.group) <= bounds.max_total_order
                   for s in enumerate_vgroup_structures(G, V)]
    if pullbacks is None:
        pullbacks = [s for G in grp.small_groups(bounds.max_pullback_order)
                     for s in enumerate_vgroup_structures(G, V)]
    kernels, pullbacks = list(kernels), list(pullbacks)
    maps = [(Z, g) for Z in pullbacks for g in enumerate_vhoms(Z, Y)]
    maps.append((Y, VGroupHom(Y, Y, grp.identity_hom(Y.group))))
    actions = {}
    points = 0
    all_strong = True
    first_weak = None
    for X in kernels:
        key = X.group
        if key not in actions:
            actions[key] = grp.enumerate_actions(Y.group, X.group)
        for act in actions[key]:
            try:
                splits = enumerate_split_structures(act, X, Y, bounds.split_bound)
            except ActionError:
                continue
            for s in splits:
                points += 1
                for Z, g in maps:
                    v = pullback_is_strong(s, Z, g)
                    if not v.ok:
                        all_strong = False
                        if first_weak is None:
                            first_weak = {"kernel": X.group.name, "delta": s.delta,
                                          "along": (Z.group.name, g.images), "why": v.witness}
                    if sym:
                        rep.record(v.ok, first_weak)
    if not sym:
        rep.record(not all_strong, None if not all_strong else
                   {"law": "agreement", "detail": "non-symmetric Y but every tested point is strong"})
    rep.evidence = {"points": points, "pullback_maps": len(maps), "all_strong": all_strong,
                    "symmetric": sym, "agrees": all_strong == sym}
    return ProtomodularReport(sym, rep)


# -- automorphisms -------------------------------------------------------------------

def aut_vgroup(X: VGroup) -> tuple:
    """(Aut(X) as a V-group, automorphisms as position tuples in carrier order).

    Carrier: group automorphisms preserving delta; (f + g) = f after g;
    delta(f) = [id, f] = meet over x of a(x, f x).
    """
    if not is_symmetric_vgroup(X).ok:
        raise PreconditionError("Aut is built only for symmetric V-groups")
    G, V = X.group, X.quantale
    autos = [f.images for f in grp.enumerate_automorphisms(G)
             if all(X.delta[f.images[x]] == X.delta[x] for x in G.elements)]
    ident = tuple(G.elements)
    autos.sort(key=lambda p: (p != ident, p))
    pos = {p: i for i, p in enumerate(autos)}
    table = tuple(tuple(pos[tuple(p[i] for i in q)] for q in autos) for p in autos)
    A = FiniteGroup(tuple(autos), table, f"Aut({G.name})")
    d = tuple(V.meet(X.a(x, f[x]) for x in G.elements) for f in autos)
    AV = VGroup(A, V, d)
    if not is_symmetric_vgroup(AV).ok:
        raise AssertionError("Aut(X) came out non-symmetric")
    return AV, autos
