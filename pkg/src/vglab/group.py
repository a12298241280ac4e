"""Finite groups as Cayley tables.

Elements are positions 0..n-1 and position 0 is always the identity, so a
function on a group is just a tuple indexed by element.  Labels are kept for
display only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import ActionError, BoundExceeded, GroupError


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple
    table: tuple
    name: str = field(default="", compare=False)
    inverse: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        t = self.table
        if n == 0:
            raise GroupError("a group needs at least one element")
        if len(t) != n or any(len(r) != n for r in t):
            raise GroupError("Cayley table has the wrong shape")
        if any(not (isinstance(v, int) and 0 <= v < n) for r in t for v in r):
            raise GroupError("Cayley table entries must be element positions")
        for x in range(n):
            if t[0][x] != x or t[x][0] != x:
                raise GroupError("position 0 must be the identity", self.labels[x])
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if t[x][y] == 0]
            if len(ys) != 1 or t[ys[0]][x] != 0:
                raise GroupError("element has no two-sided inverse", self.labels[x])
            inv.append(ys[0])
        for x, y, z in itertools.product(range(n), repeat=3):
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise GroupError("table is not associative",
                                 (self.labels[x], self.labels[y], self.labels[z]))
        object.__setattr__(self, "inverse", tuple(inv))

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"<group {self.name or '?'} of order {len(self)}>"

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def add(self, x: int, y: int) -> int:
        return self.table[x][y]

    def neg(self, x: int) -> int:
        return self.inverse[x]

    def sub(self, x: int, y: int) -> int:
        """x - y, i.e. x + (-y)."""
        return self.table[x][self.inverse[y]]

    def conj(self, g: int, x: int) -> int:
        """g + x - g."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def is_abelian(self) -> bool:
        return all(self.table[x][y] == self.table[y][x] for x in self.elements for y in self.elements)

    def index(self, label) -> int:
        return self.labels.index(label)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.table[y][x]
            k += 1
        return k

    @cached_property
    def _classes(self) -> tuple:
        seen, classes = set(), []
        for x in self.elements:
            if x not in seen:
                cls = sorted({self.conj(g, x) for g in self.elements})
                seen.update(cls)
                classes.append(tuple(cls))
        return tuple(classes)

    def conjugacy_classes(self) -> list:
        return list(self._classes)


def from_table(labels: Sequence, add: Sequence[Sequence], name: str = "") -> FiniteGroup:
    """Build from a labelled table; entries may be labels or positions.

    The identity is moved to position 0 if it is not already there.
    """
    labels = tuple(labels)
    n = len(labels)
    pos = {l: i for i, l in enumerate(labels)}
    try:
        t = [[pos[v] if v in pos else int(v) for v in row] for row in add]
    except (TypeError, ValueError):
        raise GroupError("table entries must be labels or positions") from None
    if len(t) != n or any(len(r) != n for r in t):
        raise GroupError("Cayley table has the wrong shape")
    ident = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
    if not ident:
        raise GroupError("table has no identity")
    e = ident[0]
    order = [e] + [x for x in range(n) if x != e]
    new = {old: k for k, old in enumerate(order)}
    table = tuple(tuple(new[t[order[i]][order[j]]] for j in range(n)) for i in range(n))
    return FiniteGroup(tuple(labels[o] for o in order), table, name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    return FiniteGroup(tuple(range(n)),
                       tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), f"Z{n}")


def trivial() -> FiniteGroup:
    return cyclic(1)


def _compose_perm(p: tuple, q: tuple) -> tuple:
    """p after q."""
    return tuple(p[i] for i in q)


def permutation_group(generators: Iterable[Sequence[int]], name: str = "") -> FiniteGroup:
    """Closure of the generators under composition; labels are the permutations."""
    gens = [tuple(g) for g in generators]
    if not gens:
        raise GroupError("need at least one generator")
    degree = len(gens[0])
    ident = tuple(range(degree))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose_perm(g, p)
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    pos = {p: i for i, p in enumerate(elems)}
    table = tuple(tuple(pos[_compose_perm(p, q)] for q in elems) for p in elems)
    return FiniteGroup(tuple(elems), table, name)


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("symmetric group degree must be positive")
    if n == 1:
        return FiniteGroup(((0,),), ((0,),), "S1")
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return permutation_group(gens, f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n (n >= 3)."""
    if n < 3:
        raise GroupError("dihedral group needs n >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return permutation_group([rot, ref], f"D{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Element (g, h) sits at position g*|H| + h."""
    nh = len(H)
    labels = tuple(itertools.product(G.labels, H.labels))
    n = len(labels)
    table = tuple(tuple(G.table[p // nh][q // nh] * nh + H.table[p % nh][q % nh] for q in range(n))
                  for p in range(n))
    return FiniteGroup(labels, table, f"{G.name}x{H.name}")


def klein() -> FiniteGroup:
    g = direct_product(cyclic(2), cyclic(2))
    return FiniteGroup(g.labels, g.table, "K4")


def quaternion() -> FiniteGroup:
    # units +-1, +-i, +-j, +-k encoded as (sign, unit) with unit in 1,i,j,k
    mult = {("1", u): (1, u) for u in "1ijk"}
    mult.update({(u, "1"): (1, u) for u in "1ijk"})
    mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    labels = [(s, u) for s in (1, -1) for u in "1ijk"]
    table = []
    for s1, u1 in labels:
        row = []
        for s2, u2 in labels:
            s, u = mult[(u1, u2)]
            row.append(labels.index((s * s1 * s2, u)))
        table.append(row)
    names = tuple(("" if s == 1 else "-") + u for s, u in labels)
    return FiniteGroup(names, tuple(map(tuple, table)), "Q8")


_CATALOGUE = {
    "Z1": trivial, "Z2": lambda: cyclic(2), "Z3": lambda: cyclic(3), "Z4": lambda: cyclic(4),
    "K4": klein, "Z5": lambda: cyclic(5), "Z6": lambda: cyclic(6), "S3": lambda: symmetric(3),
    "Z7": lambda: cyclic(7), "Z8": lambda: cyclic(8),
    "Z2xZ4": lambda: direct_product(cyclic(2), cyclic(4)),
    "Z2xZ2xZ2": lambda: direct_product(klein(), cyclic(2)),
    "D4": lambda: dihedral(4), "Q8": quaternion,
}
_ALIASES = {"klein": "K4", "V4": "K4", "Z2xZ2": "K4", "trivial": "Z1", "0": "Z1"}


def group_by_name(name: str) -> FiniteGroup:
    key = _ALIASES.get(name, name)
    if key in _CATALOGUE:
        return _CATALOGUE[key]()
    if key[:1] == "Z" and key[1:].isdigit():
        return cyclic(int(key[1:]))
    if key[:1] == "S" and key[1:].isdigit():
        return symmetric(int(key[1:]))
    if key[:1] == "D" and key[1:].isdigit():
        return dihedral(int(key[1:]))
    raise GroupError(f"unknown group name {name!r}")


def small_groups(max_order: int) -> list:
    """One group per isomorphism class, orders up to 8."""
    if max_order > 8:
        raise BoundExceeded("the catalogue stops at order 8")
    return [f() for f in _CATALOGUE.values() if f().order <= max_order]


# -- homomorphisms ------------------------------------------------------------------

@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple

    def __post_init__(self):
        S, T, f = self.source, self.target, self.images
        if len(f) != len(S) or any(not (0 <= v < len(T)) for v in f):
            raise GroupError("hom images do not match the carriers")
        for x, y in itertools.product(S.elements, repeat=2):
            if f[S.add(x, y)] != T.add(f[x], f[y]):
                raise GroupError("not a homomorphism", (S.labels[x], S.labels[y]))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def then(self, g: GroupHom) -> GroupHom:
        """g after self."""
        return GroupHom(self.source, g.target, tuple(g.images[y] for y in self.images))


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(G.elements))


def zero_hom(G: FiniteGroup, H: FiniteGroup) -> GroupHom:
    return GroupHom(G, H, (0,) * len(G))


@dataclass(frozen=True)
class KernelImage:
    kernel: tuple
    image: tuple
    is_injective: bool
    is_surjective: bool


def hom_kernel_image(f: GroupHom) -> KernelImage:
    ker = tuple(x for x in f.source.elements if f(x) == 0)
    img = tuple(sorted(set(f.images)))
    return KernelImage(ker, img, len(ker) == 1, len(img) == len(f.target))


def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> tuple:
    """Least subset containing S and 0 closed under + and negation, sorted."""
    gens = sorted(set(S))
    for s in gens:
        if not 0 <= s < len(G):
            raise GroupError(f"{s} is not an element position")
    sub = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                for y in (G.add(x, g), G.add(x, G.neg(g))):
                    if y not in sub:
                        sub.add(y)
                        nxt.append(y)
        frontier = nxt
    return tuple(sorted(sub))


def is_subgroup(G: FiniteGroup, H: Iterable[int]) -> bool:
    H = set(H)
    return 0 in H and all(G.sub(x, y) in H for x in H for y in H)


def is_normal(G: FiniteGroup, N: Iterable[int]):
    """None if normal, else a witness (g, n) with g + n - g outside N."""
    N = set(N)
    if not is_subgroup(G, N):
        raise GroupError("not a subgroup", sorted(N))
    for g in G.elements:
        for n in sorted(N):
            if G.conj(g, n) not in N:
                return (g, n)
    return None


def normal_closure(G: FiniteGroup, S: Iterable[int]) -> tuple:
    conj = {G.conj(g, s) for g in G.elements for s in S}
    return subgroup_generated(G, conj)


def subgroup_group(G: FiniteGroup, H: Sequence[int], name: str = "") -> tuple:
    """(group on H, inclusion hom); H must be a subgroup."""
    H = tuple(sorted(set(H)))
    if not is_subgroup(G, H):
        raise GroupError("not a subgroup", list(H))
    pos = {h: i for i, h in enumerate(H)}
    table = tuple(tuple(pos[G.add(x, y)] for y in H) for x in H)
    S = FiniteGroup(tuple(G.labels[h] for h in H), table, name or f"sub({G.name})")
    return S, GroupHom(S, G, H)


def normal_subgroups(G: FiniteGroup) -> list:
    """All normal subgroups, found as normal closures of element subsets (small groups)."""
    found = {normal_closure(G, ())}
    frontier = list(found)
    while frontier:
        nxt = []
        for N in frontier:
            for x in G.elements:
                if x not in N:
                    M = normal_closure(G, set(N) | {x})
                    if M not in found:
                        found.add(M)
                        nxt.append(M)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), s))


def quotient_group(G: FiniteGroup, N: Sequence[int]) -> tuple:
    """(G/N, canonical surjection).  Cosets are ordered by least member."""
    w = is_normal(G, N)
    if w is not None:
        raise GroupError("subgroup is not normal", (G.labels[w[0]], G.labels[w[1]]))
    N = sorted(set(N))
    coset_of = {}
    reps = []
    for x in G.elements:
        if x not in coset_of:
            k = len(reps)
            reps.append(x)
            for n in N:
                coset_of[G.add(x, n)] = k
    table = tuple(tuple(coset_of[G.add(a, b)] for b in reps) for a in reps)
    Q = FiniteGroup(tuple(G.labels[r] for r in reps), table, f"{G.name}/N")
    return Q, GroupHom(G, Q, tuple(coset_of[x] for x in G.elements))


# -- actions and semidirect products ---------------------------------------------------

@dataclass(frozen=True)
class GroupAction:
    """``phi[y]`` is the automorphism of ``acted`` by which y acts, as a position tuple."""

    acting: FiniteGroup
    acted: FiniteGroup
    phi: tuple

    def __post_init__(self):
        Y, X, phi = self.acting, self.acted, self.phi
        if len(phi) != len(Y) or any(len(p) != len(X) for p in phi):
            raise ActionError("action table has the wrong shape")
        for y, p in enumerate(phi):
            if sorted(p) != list(X.elements):
                raise ActionError("phi_y is not a bijection", Y.labels[y])
            for a, b in itertools.product(X.elements, repeat=2):
                if p[X.add(a, b)] != X.add(p[a], p[b]):
                    raise ActionError("phi_y is not a homomorphism", Y.labels[y])
        if phi[0] != tuple(X.elements):
            raise ActionError("phi_0 is not the identity")
        for y1, y2 in itertools.product(Y.elements, repeat=2):
            if phi[Y.add(y1, y2)] != _compose_perm(phi[y1], phi[y2]):
                raise ActionError("phi_{y+y'} != phi_y . phi_y'", (Y.labels[y1], Y.labels[y2]))

    def __call__(self, y: int, x: int) -> int:
        return self.phi[y][x]

    @property
    def is_trivial(self) -> bool:
        return all(p == tuple(self.acted.elements) for p in self.phi)


def trivial_action(Y: FiniteGroup, X: FiniteGroup) -> GroupAction:
    return GroupAction(Y, X, (tuple(X.elements),) * len(Y))


@dataclass(frozen=True)
class SemidirectProduct:
    """X x| Y with (x, y) at position x*|Y| + y."""

    action: GroupAction
    group: FiniteGroup
    inject: GroupHom     # x -> (x, 0)
    section: GroupHom    # y -> (0, y)
    project: GroupHom    # (x, y) -> y

    def pair(self, p: int) -> tuple:
        ny = len(self.action.acting)
        return p // ny, p % ny

    def position(self, x: int, y: int) -> int:
        return x * len(self.action.acting) + y


@lru_cache(maxsize=512)
def semidirect_product_group(action: GroupAction) -> SemidirectProduct:
    """(x, y) + (x', y') = (x + phi_y(x'), y + y')."""
    X, Y = action.acted, action.acting
    ny = len(Y)
    n = len(X) * ny
    table = tuple(
        tuple(X.add(p // ny, action(p % ny, q // ny)) * ny + Y.add(p % ny, q % ny) for q in range(n))
        for p in range(n))
    labels = tuple(itertools.product(X.labels, Y.labels))
    G = FiniteGroup(labels, table, f"{X.name}x|{Y.name}")
    return SemidirectProduct(
        action, G,
        GroupHom(X, G, tuple(x * ny for x in X.elements)),
        GroupHom(Y, G, tuple(Y.elements)),
        GroupHom(G, Y, tuple(p % ny for p in range(n))))


# -- enumeration ---------------------------------------------------------------------

def generators(G: FiniteGroup) -> list:
    """A small generating set, chosen greedily by element order."""
    gens: list = []
    sub = subgroup_generated(G, gens)
    while len(sub) < len(G):
        best = max((x for x in G.elements if x not in sub),
                   key=lambda x: (len(subgroup_generated(G, gens + [x])), -x))
        gens.append(best)
        sub = subgroup_generated(G, gens)
    return gens


def enumerate_homs(G: FiniteGroup, H: FiniteGroup, bound: int = 10**6) -> list:
    """Every homomorphism G -> H, in lexicographic order of generator images."""
    gens = generators(G)
    if len(H) ** len(gens) > bound:
        raise BoundExceeded(f"|H|^{len(gens)} = {len(H) ** len(gens)} exceeds {bound}")
    out = []
    for imgs in itertools.product(H.elements, repeat=len(gens)):
        f = _extend(G, H, gens, imgs)
        if f is not None:
            out.append(GroupHom(G, H, f))
    return sorted(out, key=lambda h: h.images)


def _extend(G, H, gens, imgs):
    f = [None] * len(G)
    f[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, imgs):
                y, v = G.add(x, g), H.add(f[x], h)
                if f[y] is None:
                    f[y] = v
                    nxt.append(y)
                elif f[y] != v:
                    return None
        frontier = nxt
    for x, y in itertools.product(G.elements, repeat=2):
        if f[G.add(x, y)] != H.add(f[x], f[y]):
            return None
    return tuple(f)


def enumerate_automorphisms(G: FiniteGroup) -> list:
    return [f for f in enumerate_homs(G, G) if len(set(f.images)) == len(G)]


def automorphism_group(G: FiniteGroup) -> FiniteGroup:
    """Aut(G) with (f + g) = f after g; labels are the automorphisms as tuples."""
    autos = [f.images for f in enumerate_automorphisms(G)]
    ident = tuple(G.elements)
    autos.sort(key=lambda p: (p != ident, p))
    pos = {p: i for i, p in enumerate(autos)}
    table = tuple(tuple(pos[_compose_perm(p, q)] for q in autos) for p in autos)
    return FiniteGroup(tuple(autos), table, f"Aut({G.name})")


def enumerate_actions(Y: FiniteGroup, X: FiniteGroup, bound: int = 10**6) -> list:
    """All actions of Y on X by automorphisms."""
    A = automorphism_group(X)
    return [GroupAction(Y, X, tuple(A.labels[a] for a in h.images))
            for h in enumerate_homs(Y, A, bound)]


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    if len(G) != len(H):
        return False
    return any(len(set(f.images)) == len(H) for f in enumerate_homs(G, H))
