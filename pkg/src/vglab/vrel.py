"""V-relations on finite carriers and V-categories built from them.

Matrices are tuples of tuples of quantale elements, indexed by carrier
position.  Carriers are tuples of hashable labels; every exhaustive loop runs
in carrier order, so witnesses are deterministic.

Composition follows the usual relational convention
``(s . r)(x, z) = join_y r(x, y) (x) s(y, z)``; :func:`compose` takes the
relations in the order they are applied.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Iterator, Mapping, Sequence

import numpy as np

from .errors import BoundExceeded, CarrierMismatch, NonTermination, PreconditionError, QuantaleError
from .quantale import LaxHom, Quantale, check_lax_hom
from .report import OK, Verdict


@dataclass(frozen=True)
class VRel:
    quantale: Quantale
    source: tuple
    target: tuple
    matrix: tuple

    def __post_init__(self):
        if len(self.matrix) != len(self.source) or any(len(r) != len(self.target) for r in self.matrix):
            raise CarrierMismatch(f"matrix shape does not match carriers "
                                  f"{len(self.source)}x{len(self.target)}")

    def __call__(self, i: int, j: int):
        return self.matrix[i][j]

    def value(self, x, y):
        """Entry by labels rather than positions."""
        return self.matrix[self.source.index(x)][self.target.index(y)]


@dataclass(frozen=True)
class VCategory:
    """A carrier with an endo-relation.

    Construction does not validate; use :func:`is_vcategory` (V-graphs, which
    only satisfy reflexivity, are represented by the same type).
    """

    quantale: Quantale
    carrier: tuple
    matrix: tuple

    def __post_init__(self):
        n = len(self.carrier)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise CarrierMismatch(f"matrix must be {n}x{n}")

    def __call__(self, i: int, j: int):
        return self.matrix[i][j]

    def __len__(self):
        return len(self.carrier)

    @property
    def rel(self) -> VRel:
        return VRel(self.quantale, self.carrier, self.carrier, self.matrix)

    def value(self, x, y):
        return self.matrix[self.carrier.index(x)][self.carrier.index(y)]

    def relabel(self, carrier: Sequence) -> VCategory:
        return VCategory(self.quantale, tuple(carrier), self.matrix)


def _mat(n: int, m: int, fn: Callable[[int, int], Any]) -> tuple:
    return tuple(tuple(fn(i, j) for j in range(m)) for i in range(n))


def as_category(r) -> VCategory:
    if isinstance(r, VCategory):
        return r
    if r.source != r.target:
        raise CarrierMismatch("not an endo-relation")
    return VCategory(r.quantale, r.source, r.matrix)


def as_rel(r) -> VRel:
    return r.rel if isinstance(r, VCategory) else r


def index_map(f, source: Sequence, target: Sequence) -> tuple:
    """Normalise a map given as dict, callable, or sequence of target labels to positions."""
    pos = {y: j for j, y in enumerate(target)}
    if isinstance(f, Mapping):
        images = [f[x] for x in source]
    elif callable(f):
        images = [f(x) for x in source]
    else:
        images = list(f)
        if len(images) != len(source):
            raise CarrierMismatch("map has the wrong length")
    try:
        return tuple(pos[y] for y in images)
    except KeyError as exc:
        raise CarrierMismatch(f"map image {exc.args[0]!r} is not in the target carrier") from None


# -- basic relation algebra -------------------------------------------------------

def identity_rel(V: Quantale, carrier: Sequence) -> VRel:
    carrier = tuple(carrier)
    n = len(carrier)
    return VRel(V, carrier, carrier, _mat(n, n, lambda i, j: V.unit if i == j else V.bottom))


def map_rel(V: Quantale, f, source: Sequence, target: Sequence) -> VRel:
    """A map seen as a V-relation: k on its graph, bottom elsewhere."""
    source, target = tuple(source), tuple(target)
    idx = index_map(f, source, target)
    return VRel(V, source, target,
                _mat(len(source), len(target), lambda i, j: V.unit if idx[i] == j else V.bottom))


def compose(r: VRel, s: VRel) -> VRel:
    """``s . r``: first r: X -> Y, then s: Y -> Z."""
    r, s = as_rel(r), as_rel(s)
    if r.target != s.source:
        raise CarrierMismatch("middle carriers differ")
    if r.quantale != s.quantale:
        raise CarrierMismatch("relations live over different quantales")
    V = r.quantale
    mid = range(len(r.target))
    rm, sm = r.matrix, s.matrix
    return VRel(V, r.source, s.target,
                _mat(len(r.source), len(s.target),
                     lambda i, k: V.join(V.tensor(rm[i][j], sm[j][k]) for j in mid)))


def product(*factors) -> VRel:
    """Relational product written left to right as in ``f . a . g`` (g applied first)."""
    out = as_rel(factors[-1])
    for r in reversed(factors[:-1]):
        out = compose(out, as_rel(r))
    return out


def opposite(r):
    """Transpose.  A VCategory stays a VCategory (its dual)."""
    if isinstance(r, VCategory):
        n = len(r.carrier)
        return VCategory(r.quantale, r.carrier, _mat(n, n, lambda i, j: r.matrix[j][i]))
    return VRel(r.quantale, r.target, r.source,
                _mat(len(r.target), len(r.source), lambda i, j: r.matrix[j][i]))


def rel_leq(r, s) -> Verdict:
    r, s = as_rel(r), as_rel(s)
    if (r.source, r.target) != (s.source, s.target):
        raise CarrierMismatch("carriers differ")
    V = r.quantale
    for i, j in itertools.product(range(len(r.source)), range(len(r.target))):
        if not V.leq(r.matrix[i][j], s.matrix[i][j]):
            return Verdict(False, (r.source[i], r.target[j]))
    return OK


def pointwise(op: str, r, s):
    """Entrywise meet or join of two relations on the same carriers."""
    V = r.quantale
    f = V.meet2 if op == "meet" else V.join2
    rr, ss = as_rel(r), as_rel(s)
    if (rr.source, rr.target) != (ss.source, ss.target):
        raise CarrierMismatch("carriers differ")
    m = _mat(len(rr.source), len(rr.target), lambda i, j: f(rr.matrix[i][j], ss.matrix[i][j]))
    if isinstance(r, VCategory):
        return VCategory(V, r.carrier, m)
    return VRel(V, rr.source, rr.target, m)


# -- V-category predicates --------------------------------------------------------

@dataclass(frozen=True)
class CategoryCheck:
    reflexive: bool
    transitive: bool
    reflexive_witness: Any = None
    transitive_witness: Any = None

    @property
    def ok(self) -> bool:
        return self.reflexive and self.transitive

    def __bool__(self):
        return self.ok


def is_vcategory(a) -> CategoryCheck:
    """Exhaustive reflexivity and transitivity check with the first failures."""
    a = as_category(a)
    V, m, n = a.quantale, a.matrix, len(a.carrier)
    c = a.carrier
    refl_w = next((c[i] for i in range(n) if not V.leq(V.unit, m[i][i])), None)
    trans_w = None
    for i, j, k in itertools.product(range(n), repeat=3):
        if not V.leq(V.tensor(m[i][j], m[j][k]), m[i][k]):
            trans_w = (c[i], c[j], c[k])
            break
    return CategoryCheck(refl_w is None, trans_w is None, refl_w, trans_w)


def is_vfunctor(f, A: VCategory, B: VCategory) -> Verdict:
    """a(x, x') <= b(f x, f x') for all pairs; witness is the first failing pair."""
    return vfunctor_verdict(index_map(f, A.carrier, B.carrier), A, B)


def vfunctor_verdict(idx: Sequence[int], A: VCategory, B: VCategory) -> Verdict:
    """As :func:`is_vfunctor`, with the map already given as positions."""
    V = A.quantale
    am, bm = A.matrix, B.matrix
    for i, j in itertools.product(range(len(A.carrier)), repeat=2):
        if not V.leq(am[i][j], bm[idx[i]][idx[j]]):
            return Verdict(False, (A.carrier[i], A.carrier[j]))
    return OK


def discrete(V: Quantale, carrier: Sequence) -> VCategory:
    return as_category(identity_rel(V, carrier))


def indiscrete(V: Quantale, carrier: Sequence) -> VCategory:
    carrier = tuple(carrier)
    n = len(carrier)
    return VCategory(V, carrier, _mat(n, n, lambda i, j: V.top))


def unit_category(V: Quantale) -> VCategory:
    return VCategory(V, ("*",), ((V.unit,),))


# -- closures and symmetrisations -------------------------------------------------

def _closure_bound(V: Quantale, n: int) -> int:
    if V.is_integral:
        return max(1, math.ceil(math.log2(max(n, 1)))) + 1
    if V.is_finite:
        return len(V.elements) * n * n + 1
    raise PreconditionError(f"closure over {V.name} needs an integral or finite quantale")


def transitive_closure(g) -> VCategory:
    """Least V-category structure above a reflexive V-graph, by iterated squaring."""
    g = as_category(g)
    V = g.quantale
    if not is_vcategory(g).reflexive:
        raise PreconditionError("transitive_closure needs a reflexive V-graph")
    bound = _closure_bound(V, len(g.carrier))
    cur = g
    for _ in range(bound + 1):
        nxt = as_category(compose(cur, cur))
        if nxt.matrix == cur.matrix:
            return cur
        cur = nxt
    raise NonTermination(f"no fixpoint after {bound} squarings over {V.name}")


def symmetrize(A: VCategory, mode: str = "coreflect") -> VCategory:
    """coreflect: a(x,y) meet a(y,x); reflect: closure of a(x,y) join a(y,x)."""
    if mode == "coreflect":
        return pointwise("meet", A, opposite(A))
    if mode == "reflect":
        return transitive_closure(pointwise("join", A, opposite(A)))
    raise ValueError(f"mode must be 'coreflect' or 'reflect', not {mode!r}")


def is_symmetric(A: VCategory) -> bool:
    return A.matrix == opposite(A).matrix


# -- initial and final structures -------------------------------------------------

def initial_structure(carrier: Sequence, family: Sequence[tuple]) -> VCategory:
    """Largest structure on ``carrier`` making every (f_i, B_i) in ``family`` a V-functor."""
    if not family:
        raise PreconditionError("initial_structure needs at least one map (the quantale is implicit)")
    carrier = tuple(carrier)
    V = family[0][1].quantale
    maps = []
    for f, B in family:
        if B.quantale != V:
            raise CarrierMismatch("all targets must share the quantale")
        maps.append((index_map(f, carrier, B.carrier), B.matrix))
    n = len(carrier)
    return VCategory(V, carrier,
                     _mat(n, n, lambda i, j: V.meet(bm[f[i]][f[j]] for f, bm in maps)))


@dataclass(frozen=True)
class FinalStructure:
    category: VCategory
    transitive: bool
    witness: Any = None


def final_structure_surjection(f, A: VCategory, target: Sequence) -> FinalStructure:
    """Fibre-join structure b(y1, y2) = join over f(x_i) = y_i of a(x1, x2).

    Reflexivity always holds; transitivity is reported rather than forced,
    since outside V-groups it can fail.
    """
    target = tuple(target)
    idx = index_map(f, A.carrier, target)
    if set(idx) != set(range(len(target))):
        missing = [target[j] for j in range(len(target)) if j not in idx]
        raise PreconditionError("map is not surjective", missing)
    V = A.quantale
    fibres = [[i for i, t in enumerate(idx) if t == j] for j in range(len(target))]
    m = _mat(len(target), len(target),
             lambda p, q: V.join(A.matrix[i][j] for i in fibres[p] for j in fibres[q]))
    B = VCategory(V, target, m)
    chk = is_vcategory(B)
    return FinalStructure(B, chk.transitive, chk.transitive_witness)


# -- monoidal structure ----------------------------------------------------------

def _pair_category(A: VCategory, B: VCategory, op) -> VCategory:
    if A.quantale != B.quantale:
        raise CarrierMismatch("categories over different quantales")
    carrier = tuple(itertools.product(A.carrier, B.carrier))
    nb = len(B.carrier)
    n = len(carrier)
    return VCategory(A.quantale, carrier,
                     _mat(n, n, lambda p, q: op(A.matrix[p // nb][q // nb], B.matrix[p % nb][q % nb])))


def tensor_cat(A: VCategory, B: VCategory) -> VCategory:
    return _pair_category(A, B, A.quantale.tensor)


def cartesian_cat(A: VCategory, B: VCategory) -> VCategory:
    return _pair_category(A, B, A.quantale.meet2)


@dataclass(frozen=True)
class CodedCategory:
    """A V-category over a finite quantale with entries replaced by their
    positions in ``quantale.elements``; speeds up repeated functor counts."""

    category: VCategory
    codes: tuple

    @property
    def carrier(self):
        return self.category.carrier


def coded(A: VCategory) -> CodedCategory:
    els = A.quantale.elements
    if els is None:
        raise PreconditionError("coding needs a finite quantale")
    pos = {v: i for i, v in enumerate(els)}
    return CodedCategory(A, tuple(tuple(pos[v] for v in row) for row in A.matrix))


class FunctorTarget:
    """Precomputed bitmasks for counting or listing V-functors into a fixed B.

    For a value v, ``fwd[y]`` has bit z set when v <= b(y, z), ``bwd[y]``
    when v <= b(z, y), and ``diag`` when v <= b(z, z).  Masks are built on
    first use of each value, so one target serves many sources.
    """

    def __init__(self, B: VCategory):
        self.B = B
        self._masks: dict = {}
        els = B.quantale.elements
        self._by_code = None if els is None else tuple(self.masks(v) for v in els)

    def masks(self, v) -> tuple:
        got = self._masks.get(v)
        if got is None:
            leq, bm, m = self.B.quantale.leq, self.B.matrix, len(self.B.carrier)
            fwd = tuple(sum(1 << z for z in range(m) if leq(v, bm[y][z])) for y in range(m))
            bwd = tuple(sum(1 << z for z in range(m) if leq(v, bm[z][y])) for y in range(m))
            diag = sum(1 << y for y in range(m) if leq(v, bm[y][y]))
            got = self._masks[v] = (fwd, bwd, diag)
        return got

    def _encode(self, A) -> tuple:
        if isinstance(A, CodedCategory):
            bc = self._by_code
            return tuple(tuple(bc[c] for c in row) for row in A.codes)
        if A.quantale != self.B.quantale:
            raise CarrierMismatch("categories over different quantales")
        return tuple(tuple(self.masks(v) for v in row) for row in A.matrix)

    def iter(self, A: VCategory) -> Iterator[tuple]:
        n = len(A.carrier)
        M = self._encode(A)
        img = [0] * n

        def extend(i):
            if i == n:
                yield tuple(img)
                return
            allowed = M[i][i][2]
            for j in range(i):
                allowed &= M[j][i][0][img[j]] & M[i][j][1][img[j]]
            y = 0
            while allowed:
                if allowed & 1:
                    img[i] = y
                    yield from extend(i + 1)
                allowed >>= 1
                y += 1

        yield from extend(0)

    def count(self, A) -> int:
        """Product over the components of A's non-bottom entries (bottom constrains nothing)."""
        n = len(A.carrier)
        if n == 0:
            return 1
        M = self._encode(A)
        if isinstance(A, CodedCategory):
            bc = A.category.quantale.elements.index(A.category.quantale.bottom)
            free = [[A.codes[i][j] == bc and A.codes[j][i] == bc for j in range(n)] for i in range(n)]
        else:
            bot = A.quantale.bottom
            am = A.matrix
            free = [[am[i][j] == bot and am[j][i] == bot for j in range(n)] for i in range(n)]
        seen = [False] * n
        total = 1
        for s0 in range(n):
            if seen[s0]:
                continue
            comp, stack = [], [s0]
            seen[s0] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if not seen[j] and not free[i][j]:
                        seen[j] = True
                        stack.append(j)
            total *= self._count_component(M, comp)
            if not total:
                return 0
        return total

    @staticmethod
    def _count_component(M, comp) -> int:
        n = len(comp)
        img = [0] * n
        rows = [[(M[comp[j]][comp[k]][0], M[comp[k]][comp[j]][1]) for j in range(k)]
                for k in range(n)]
        bases = [M[c][c][2] for c in comp]

        def count(i, allowed):
            if i == n - 1:
                return bin(allowed).count("1")
            total, y, k = 0, 0, i + 1
            row, base = rows[k], bases[k]
            while allowed:
                if allowed & 1:
                    img[i] = y
                    nxt = base
                    for j, (f, b) in enumerate(row):
                        nxt &= f[img[j]] & b[img[j]]
                        if not nxt:
                            break
                    if nxt:
                        total += count(k, nxt)
                allowed >>= 1
                y += 1
            return total

        return count(0, bases[0])


def iter_vfunctors(A: VCategory, B: VCategory) -> Iterator[tuple]:
    """All V-functors A -> B as position tuples, by backtracking in carrier order."""
    return FunctorTarget(B).iter(A)


def enumerate_vfunctors(A: VCategory, B: VCategory, bound: int = 10**6) -> list:
    if len(B.carrier) ** len(A.carrier) > bound:
        raise BoundExceeded(f"|B|^|A| = {len(B.carrier)}^{len(A.carrier)} exceeds {bound}")
    return list(iter_vfunctors(A, B))


def count_vfunctors(A: VCategory, B: VCategory) -> int:
    """Number of V-functors A -> B without materialising them."""
    return FunctorTarget(B).count(A)


# -- bulk functor counts over chain quantales ---------------------------------------
#
# For a fixed source D and every m-point target matrix C at once:
#   #{f : D -> C V-functor} = #{f : [n] -> [m] : f_* D <= C},
# where f_* D is the fibre-join (pushforward) matrix.  Histogramming the
# pushforwards of all m^n maps and taking cumulative sums along each entry
# gives every count.  Dually, for a fixed target H and every n-point source A,
# #{g : A -> H} = #{g : [n] -> H : A <= g^* H}.  Entries are coded by their
# position on the chain, matrices by sum(code(p, q) * L^(p*m + q)).

def _chain_levels(V: Quantale) -> int:
    els = V.elements
    if els is None or any(not V.leq(els[i], els[i + 1]) for i in range(len(els) - 1)):
        raise PreconditionError(f"bulk counting needs a finite chain quantale, not {V.name}")
    return len(els)


@lru_cache(maxsize=None)
def _all_maps(m: int, n: int):
    return np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int64).reshape(-1, n)


@lru_cache(maxsize=None)
def _cell_bits(m: int, n: int):
    F = _all_maps(m, n)
    return np.stack([1 << (F[:, i] * m + F[:, j]) for i in range(n) for j in range(n)]).astype(np.int64)


@lru_cache(maxsize=None)
def _bits_to_code(m: int, L: int):
    cells = m * m
    out = np.zeros(1 << cells, dtype=np.int64)
    for b in range(1 << cells):
        out[b] = sum(L ** c for c in range(cells) if b >> c & 1)
    return out


def matrix_code(A) -> int:
    """Integer code of a matrix over a chain quantale (see bulk counting above)."""
    A = A.category if isinstance(A, CodedCategory) else A
    els = A.quantale.elements
    L, n = len(els), len(A.carrier)
    pos = {v: i for i, v in enumerate(els)}
    return sum(pos[A.matrix[p][q]] * L ** (p * n + q) for p in range(n) for q in range(n))


def _code_matrix(A) -> np.ndarray:
    if isinstance(A, CodedCategory):
        return np.array(A.codes, dtype=np.int64).reshape(len(A.carrier), len(A.carrier))
    return np.array(coded(A).codes, dtype=np.int64).reshape(len(A.carrier), len(A.carrier))


def functor_counts_from(D, m: int) -> np.ndarray:
    """Entry ``matrix_code(C)``: number of V-functors D -> C, for every m-point C."""
    Dc = D.category if isinstance(D, CodedCategory) else D
    L = _chain_levels(Dc.quantale)
    n = len(Dc.carrier)
    cells = m * m
    if n == 0:
        return np.ones(L ** cells, dtype=np.int64)
    flat = _code_matrix(D).reshape(-1)
    bits, tocode = _cell_bits(m, n), _bits_to_code(m, L)
    code = np.zeros(bits.shape[1], dtype=np.int64)
    for c in range(1, L):
        sel = np.nonzero(flat >= c)[0]
        if len(sel):
            code += tocode[np.bitwise_or.reduce(bits[sel], axis=0)]
    hist = np.bincount(code, minlength=L ** cells).reshape((L,) * cells)
    for ax in range(cells):
        hist = np.cumsum(hist, axis=ax)
    return hist.reshape(-1)


def functor_counts_into(H, n: int) -> np.ndarray:
    """Entry ``matrix_code(A)``: number of V-functors A -> H, for every n-point A."""
    Hc = H.category if isinstance(H, CodedCategory) else H
    L = _chain_levels(Hc.quantale)
    k = len(Hc.carrier)
    cells = n * n
    if n == 0:
        return np.ones(1, dtype=np.int64)
    if k == 0:
        return np.zeros(L ** cells, dtype=np.int64)
    hm = _code_matrix(H)
    G = _all_maps(k, n)
    code = np.zeros(len(G), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            code += hm[G[:, i], G[:, j]] * L ** (i * n + j)
    hist = np.bincount(code, minlength=L ** cells).reshape((L,) * cells)
    for ax in range(cells):
        hist = np.flip(np.cumsum(np.flip(hist, axis=ax), axis=ax), axis=ax)
    return hist.reshape(-1)


def internal_hom(A: VCategory, B: VCategory, bound: int = 10**6) -> VCategory:
    """V-functors A -> B with [f, g] = meet over x of b(f x, g x).

    Carrier labels are tuples of target labels, one per element of A.
    """
    fs = enumerate_vfunctors(A, B, bound)
    V = A.quantale
    carrier = tuple(tuple(B.carrier[y] for y in f) for f in fs)
    n = len(fs)
    xs = range(len(A.carrier))
    return VCategory(V, carrier,
                     _mat(n, n, lambda p, q: V.meet(B.matrix[fs[p][x]][fs[q][x]] for x in xs)))


# -- proper / open / regular -------------------------------------------------------

@dataclass(frozen=True)
class ProperOpen:
    proper: bool
    open: bool
    proper_witness: Any = None
    open_witness: Any = None


def proper_open_report(f, A: VCategory, B: VCategory) -> ProperOpen:
    """proper: b(f x, y) = join_{f x' = y} a(x, x'); open: b(y, f x) = join_{f x' = y} a(x', x)."""
    return proper_open_idx(index_map(f, A.carrier, B.carrier), A, B)


def proper_open_idx(idx: Sequence[int], A: VCategory, B: VCategory) -> ProperOpen:
    V = A.quantale
    fibres = [[i for i, t in enumerate(idx) if t == j] for j in range(len(B.carrier))]
    pw = ow = None
    for x in range(len(A.carrier)):
        for y in range(len(B.carrier)):
            if pw is None and B.matrix[idx[x]][y] != V.join(A.matrix[x][x2] for x2 in fibres[y]):
                pw = (A.carrier[x], B.carrier[y])
            if ow is None and B.matrix[y][idx[x]] != V.join(A.matrix[x2][x] for x2 in fibres[y]):
                ow = (A.carrier[x], B.carrier[y])
    return ProperOpen(pw is None, ow is None, pw, ow)


@dataclass(frozen=True)
class RegularityReport:
    symmetric: bool
    regular: bool
    difunctional: bool
    positive: bool
    positive_witness: Any = None

    @property
    def agree(self) -> bool:
        return self.symmetric == self.regular == self.difunctional == self.positive


def regularity_report(A: VCategory) -> RegularityReport:
    """Symmetric, regular (a.a° <= a), difunctional (a.a°.a <= a), positive (a = b°.b).

    b°.b is symmetric for every b, so a non-symmetric a is never positive;
    for symmetric a the witness b = a is verified directly.
    """
    a = A.rel
    ao = opposite(a)
    symmetric = A.matrix == ao.matrix
    regular = bool(rel_leq(product(a, ao), a))
    difunctional = bool(rel_leq(product(a, ao, a), a))
    positive = product(ao, a).matrix == a.matrix
    return RegularityReport(symmetric, regular, difunctional, positive, A if positive else None)


def change_of_base_cat(phi: LaxHom, A: VCategory, samples: Sequence | None = None) -> VCategory:
    """Post-compose the structure with a lax homomorphism (checked first)."""
    if phi.source != A.quantale:
        raise CarrierMismatch(f"{phi.name} does not start at {A.quantale.name}")
    if samples is None and phi.source.elements is None:
        samples = list(dict.fromkeys(v for row in A.matrix for v in row))
    rep = check_lax_hom(phi, samples)
    if not rep.ok:
        raise QuantaleError(f"{phi.name} is not a lax homomorphism", rep.witness)
    n = len(A.carrier)
    return VCategory(phi.target, A.carrier, _mat(n, n, lambda i, j: phi(A.matrix[i][j])))


def category_from_rows(V: Quantale, carrier: Sequence, rows: Sequence[Sequence]) -> VCategory:
    """Convenience constructor from literal entries (strings, ints, fractions)."""
    return VCategory(V, tuple(carrier), tuple(tuple(V.element(v) for v in r) for r in rows))
