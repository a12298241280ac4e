"""Commutative unital quantales with exact arithmetic.

Every quantale exposes its order only through :meth:`Quantale.leq`; callers
never compare elements numerically.  This matters for ``pplus``/``pmax``,
whose order is the reverse of the numeric one (bottom is infinity, top and
unit are 0).

Only finite joins and meets are evaluated.  All carriers that V-categories
live on are finite, so nothing else is needed.
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .errors import QuantaleError
from .report import LawReport


class _Infinity:
    """The point at infinity of [0, inf]; a process-wide singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("vglab-inf")

    def __eq__(self, other):
        return isinstance(other, _Infinity)


INF = _Infinity()


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool):
        raise QuantaleError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise QuantaleError(f"not a rational: {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise QuantaleError(f"malformed rational {text!r}") from None


def _random_fraction(rng: random.Random, lo: int = 0, hi: int = 8) -> Fraction:
    den = rng.randint(1, 6) if rng.random() < 0.5 else rng.randint(1, 97)
    return Fraction(rng.randint(lo * den, hi * den), den)


class Quantale:
    """Base contract.  Subclasses fill in the order, tensor and lattice ops."""

    is_frame = False
    is_integral = False
    is_optimistic = False
    approximate_carrier = False
    has_hom = True
    #: the whole carrier, or None when it is infinite
    elements: tuple | None = None

    def __init__(self, name: str, descriptor: dict):
        self.name = name
        self.descriptor = descriptor

    def __eq__(self, other):
        return isinstance(other, Quantale) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(json.dumps(self.descriptor, sort_keys=True))

    def __repr__(self):
        return f"<quantale {self.name}>"

    @property
    def is_finite(self) -> bool:
        return self.elements is not None

    # -- contract -----------------------------------------------------------
    bottom: Any
    top: Any
    unit: Any

    def leq(self, u, v) -> bool:
        raise NotImplementedError

    def tensor(self, u, v):
        raise NotImplementedError

    def join2(self, u, v):
        raise NotImplementedError

    def meet2(self, u, v):
        raise NotImplementedError

    def hom(self, u, w):
        raise QuantaleError(f"{self.name} has no internal hom")

    def contains(self, u) -> bool:
        raise NotImplementedError

    def parse(self, text):
        raise NotImplementedError

    def format(self, u):
        return str(u)

    def sample(self, rng: random.Random, n: int) -> list:
        if self.elements is not None:
            return [rng.choice(self.elements) for _ in range(n)]
        raise NotImplementedError

    # -- derived ------------------------------------------------------------
    def join(self, values: Iterable) -> Any:
        out = self.bottom
        for v in values:
            out = self.join2(out, v)
        return out

    def meet(self, values: Iterable) -> Any:
        out = self.top
        for v in values:
            out = self.meet2(out, v)
        return out

    def tensor_all(self, values: Iterable) -> Any:
        out = self.unit
        for v in values:
            out = self.tensor(out, v)
        return out

    def lt(self, u, v) -> bool:
        return u != v and self.leq(u, v)

    def element(self, value):
        """Coerce a literal (string, int, Fraction, list) into a carrier element."""
        if isinstance(value, str):
            low = value.strip().lower()
            if low in ("bot", "bottom", "⊥"):
                return self.bottom
            if low in ("top", "⊤"):
                return self.top
            if low == "k":
                return self.unit
        u = self.parse(value)
        if not self.contains(u):
            raise QuantaleError(f"{value!r} is not an element of {self.name}")
        return u


class FiniteChain(Quantale):
    """The n-chain {0, 1/(n-1), ..., 1} with tensor min (a frame) or Lukasiewicz."""

    def __init__(self, n: int, tensor: str = "min"):
        if n < 2:
            raise QuantaleError(f"a chain needs at least 2 elements, got {n}")
        if tensor not in ("min", "lukasiewicz"):
            raise QuantaleError(f"unknown chain tensor {tensor!r}")
        if tensor == "min":
            name = "two" if n == 2 else f"chain({n})"
            desc = {"kind": "two"} if n == 2 else {"kind": "chain", "n": n}
        else:
            name = f"lukasiewicz_chain({n})"
            desc = {"kind": "lukasiewicz_chain", "n": n}
        super().__init__(name, desc)
        self.n = n
        self.tensor_kind = tensor
        self.elements = tuple(Fraction(i, n - 1) for i in range(n))
        self.bottom = Fraction(0)
        self.top = self.unit = Fraction(1)
        self.is_integral = True
        # 1/(n-1) (+) 1/(n-1) = 0 once n >= 3
        self.is_frame = self.is_optimistic = tensor == "min" or n == 2

    def leq(self, u, v):
        return u <= v

    def tensor(self, u, v):
        if self.tensor_kind == "min":
            return min(u, v)
        return max(u + v - 1, Fraction(0))

    def join2(self, u, v):
        return max(u, v)

    def meet2(self, u, v):
        return min(u, v)

    def hom(self, u, w):
        if self.tensor_kind == "min":
            return self.top if u <= w else w
        return min(Fraction(1), 1 - u + w)

    def contains(self, u):
        return isinstance(u, Fraction) and u in self.elements

    def parse(self, text):
        return parse_rational(text)

    def format(self, u):
        return str(u)


class TableQuantale(Quantale):
    """A finite lattice given by its order matrix, with an explicit tensor table.

    With ``validate=True`` the quantale laws are checked exhaustively and the
    first violation raises :class:`QuantaleError`.
    """

    def __init__(self, elements: Sequence, leq: Sequence[Sequence], tensor: Sequence[Sequence],
                 unit, validate: bool = True):
        elements = tuple(str(e) for e in elements)
        n = len(elements)
        if n == 0 or len(set(elements)) != n:
            raise QuantaleError("table elements must be non-empty and distinct")
        self.index = {e: i for i, e in enumerate(elements)}
        order = self._order_matrix(elements, leq)
        if len(tensor) != n or any(len(row) != n for row in tensor):
            raise QuantaleError("tensor table has wrong shape")
        try:
            tab = tuple(tuple(self.index[str(c)] for c in row) for row in tensor)
        except KeyError as exc:
            raise QuantaleError(f"tensor table mentions unknown element {exc.args[0]!r}") from None
        if str(unit) not in self.index:
            raise QuantaleError(f"unit {unit!r} is not an element")
        desc = {
            "kind": "table",
            "elements": list(elements),
            "leq": [[int(b) for b in row] for row in order],
            "tensor": [[elements[c] for c in row] for row in tab],
            "unit": str(unit),
        }
        super().__init__(f"table({','.join(elements)})", desc)
        self.elements = elements
        self._le = order
        self._tab = tab
        self._check_partial_order()
        self._joins = self._bound_table(up=True)
        self._meets = self._bound_table(up=False)
        self.bottom = self._extreme(lowest=True)
        self.top = self._extreme(lowest=False)
        self.unit = str(unit)
        self._hom = None
        self.is_integral = self.unit == self.top
        self.is_frame = all(self.tensor(u, v) == self.meet2(u, v)
                            for u in elements for v in elements)
        self.is_optimistic = all(
            self.tensor(u, v) != self.bottom or self.bottom in (u, v)
            for u in elements for v in elements)
        if validate:
            rep = check_quantale_laws(self)
            if not rep.ok:
                w = rep.witness
                raise QuantaleError(f"table violates {w['law']} at {w['elements']}", w)

    def _order_matrix(self, elements, leq):
        n = len(elements)
        if len(leq) == n and all(isinstance(r, (list, tuple)) and len(r) == n
                                 and all(isinstance(b, (bool, int)) for b in r) for r in leq):
            return tuple(tuple(bool(b) for b in row) for row in leq)
        # list of [u, v] pairs: take the reflexive-transitive closure
        m = [[i == j for j in range(n)] for i in range(n)]
        for pair in leq:
            try:
                u, v = pair
                m[self.index[str(u)]][self.index[str(v)]] = True
            except (ValueError, KeyError, TypeError):
                raise QuantaleError(f"bad order pair {pair!r}") from None
        for k in range(n):
            for i in range(n):
                if m[i][k]:
                    for j in range(n):
                        if m[k][j]:
                            m[i][j] = True
        return tuple(tuple(row) for row in m)

    def _check_partial_order(self):
        le, n = self._le, len(self.elements)
        for i in range(n):
            if not le[i][i]:
                raise QuantaleError("order is not reflexive", [self.elements[i]])
        for i, j in itertools.product(range(n), repeat=2):
            if i != j and le[i][j] and le[j][i]:
                raise QuantaleError("order is not antisymmetric", [self.elements[i], self.elements[j]])
        for i, j, k in itertools.product(range(n), repeat=3):
            if le[i][j] and le[j][k] and not le[i][k]:
                raise QuantaleError("order is not transitive",
                                    [self.elements[i], self.elements[j], self.elements[k]])

    def _bound_table(self, up: bool):
        le, n = self._le, len(self.elements)
        rel = (lambda a, b: le[a][b]) if up else (lambda a, b: le[b][a])
        table = [[0] * n for _ in range(n)]
        for i, j in itertools.product(range(n), repeat=2):
            bounds = [c for c in range(n) if rel(i, c) and rel(j, c)]
            best = [c for c in bounds if all(rel(c, d) for d in bounds)]
            if len(best) != 1:
                what = "join" if up else "meet"
                raise QuantaleError(f"not a lattice: no {what} of "
                                    f"{self.elements[i]!r} and {self.elements[j]!r}")
            table[i][j] = best[0]
        return tuple(tuple(r) for r in table)

    def _extreme(self, lowest: bool):
        n = len(self.elements)
        for c in range(n):
            if all((self._le[c][d] if lowest else self._le[d][c]) for d in range(n)):
                return self.elements[c]
        raise QuantaleError("lattice has no bottom/top")  # unreachable for finite lattices

    def leq(self, u, v):
        return self._le[self.index[u]][self.index[v]]

    def tensor(self, u, v):
        return self.elements[self._tab[self.index[u]][self.index[v]]]

    def join2(self, u, v):
        return self.elements[self._joins[self.index[u]][self.index[v]]]

    def meet2(self, u, v):
        return self.elements[self._meets[self.index[u]][self.index[v]]]

    def hom(self, u, w):
        # the largest residual, by definition
        return self.join(v for v in self.elements if self.leq(self.tensor(v, u), w))

    def contains(self, u):
        return u in self.index

    def parse(self, text):
        return str(text)


class ExtendedHalfLine(Quantale):
    """([0, inf], >=) with tensor + (``pplus``) or numeric max (``pmax``)."""

    def __init__(self, tensor: str = "plus"):
        if tensor not in ("plus", "max"):
            raise QuantaleError(f"unknown half-line tensor {tensor!r}")
        name = "pplus" if tensor == "plus" else "pmax"
        super().__init__(name, {"kind": name})
        self.tensor_kind = tensor
        self.bottom = INF
        self.top = self.unit = Fraction(0)
        self.is_integral = True
        self.is_optimistic = True
        self.is_frame = tensor == "max"

    def leq(self, u, v):
        if u is INF:
            return True
        if v is INF:
            return False
        return u >= v

    def tensor(self, u, v):
        if u is INF or v is INF:
            return INF
        return u + v if self.tensor_kind == "plus" else max(u, v)

    def join2(self, u, v):
        if u is INF:
            return v
        if v is INF:
            return u
        return min(u, v)

    def meet2(self, u, v):
        if u is INF or v is INF:
            return INF
        return max(u, v)

    def hom(self, u, w):
        if self.tensor_kind == "max":
            return self.top if self.leq(u, w) else w
        if u is INF:
            return self.top
        if w is INF:
            return INF
        return max(w - u, Fraction(0))

    def contains(self, u):
        return u is INF or (isinstance(u, Fraction) and u >= 0)

    def parse(self, text):
        if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        return parse_rational(text)

    def format(self, u):
        return "inf" if u is INF else str(u)

    def sample(self, rng, n):
        out = []
        for _ in range(n):
            r = rng.random()
            if r < 0.08:
                out.append(INF)
            elif r < 0.16:
                out.append(Fraction(0))
            else:
                out.append(_random_fraction(rng))
        return out


class UnitInterval(Quantale):
    """Rationals in [0, 1], usual order, tensor min / product / Lukasiewicz."""

    def __init__(self, tensor: str = "min"):
        if tensor not in ("min", "product", "lukasiewicz"):
            raise QuantaleError(f"unknown unit-interval tensor {tensor!r}")
        super().__init__(f"unit_interval({tensor})", {"kind": "unit_interval", "tensor": tensor})
        self.tensor_kind = tensor
        self.bottom = Fraction(0)
        self.top = self.unit = Fraction(1)
        self.is_integral = True
        self.is_frame = tensor == "min"
        self.is_optimistic = tensor != "lukasiewicz"

    def leq(self, u, v):
        return u <= v

    def tensor(self, u, v):
        if self.tensor_kind == "min":
            return min(u, v)
        if self.tensor_kind == "product":
            return u * v
        return max(u + v - 1, Fraction(0))

    def join2(self, u, v):
        return max(u, v)

    def meet2(self, u, v):
        return min(u, v)

    def hom(self, u, w):
        if u <= w:
            return self.top
        if self.tensor_kind == "min":
            return w
        if self.tensor_kind == "product":
            return w / u
        return 1 - u + w

    def contains(self, u):
        return isinstance(u, Fraction) and 0 <= u <= 1

    def parse(self, text):
        return parse_rational(text)

    def sample(self, rng, n):
        out = []
        for _ in range(n):
            r = rng.random()
            if r < 0.08:
                out.append(Fraction(0))
            elif r < 0.16:
                out.append(Fraction(1))
            else:
                den = rng.randint(1, 8) if rng.random() < 0.5 else rng.randint(1, 997)
                out.append(Fraction(rng.randint(0, den), den))
        return out


@dataclass(frozen=True)
class GridDistribution:
    """A distribution function sampled at thresholds 0, h, ..., N*h and infinity.

    ``values[i]`` is the value at threshold ``i*h``; the last entry is the
    saturation point standing for infinity.
    """

    step: Fraction
    values: tuple

    def __post_init__(self):
        vals = self.values
        if any(not (0 <= v <= 1) for v in vals):
            raise QuantaleError(f"distribution values must lie in [0,1]: {vals}")
        if any(vals[i] > vals[i + 1] for i in range(len(vals) - 1)):
            raise QuantaleError(f"distribution must be nondecreasing: {vals}")

    def to_json(self):
        return [str(v) for v in self.values]


class DeltaGrid(Quantale):
    """Distribution functions on the grid {0, h, ..., N*h, sat}, pointwise order.

    Threshold addition saturates at the last grid point, which keeps it
    associative.  ``conv`` is the convolution tensor (max over y+z <= x of
    products); ``min`` is the pointwise meet.  Only the convolution version
    is an approximation of the continuous quantale.
    """

    has_hom = False

    def __init__(self, h, N: int, tensor: str = "min"):
        h = parse_rational(h)
        if h <= 0:
            raise QuantaleError(f"grid step must be positive, got {h}")
        if not isinstance(N, int) or N < 1:
            raise QuantaleError(f"grid size N must be >= 1, got {N!r}")
        if tensor not in ("min", "conv"):
            raise QuantaleError(f"unknown grid tensor {tensor!r}")
        super().__init__(f"delta_grid({h},{N},{tensor})",
                         {"kind": "delta_grid", "h": str(h), "N": N, "tensor": tensor})
        self.h = h
        self.N = N
        self.size = N + 2
        self.tensor_kind = tensor
        self.bottom = GridDistribution(h, (Fraction(0),) * self.size)
        self.top = self.unit = GridDistribution(h, (Fraction(1),) * self.size)
        self.is_integral = True
        self.is_optimistic = True
        self.is_frame = tensor == "min"
        self.approximate_carrier = tensor == "conv"

    @property
    def thresholds(self) -> tuple:
        return tuple(i * self.h for i in range(self.N + 1)) + (INF,)

    def make(self, values: Sequence) -> GridDistribution:
        vals = tuple(parse_rational(v) for v in values)
        if len(vals) != self.size:
            raise QuantaleError(f"expected {self.size} grid values, got {len(vals)}")
        return GridDistribution(self.h, vals)

    def leq(self, u, v):
        return all(a <= b for a, b in zip(u.values, v.values))

    def tensor(self, u, v):
        if self.tensor_kind == "min":
            return GridDistribution(self.h, tuple(map(min, u.values, v.values)))
        return GridDistribution(self.h, convolve(u.values, v.values))

    def join2(self, u, v):
        return GridDistribution(self.h, tuple(map(max, u.values, v.values)))

    def meet2(self, u, v):
        return GridDistribution(self.h, tuple(map(min, u.values, v.values)))

    def contains(self, u):
        return isinstance(u, GridDistribution) and u.step == self.h and len(u.values) == self.size

    def parse(self, text):
        if isinstance(text, str):
            text = [t for t in re.split(r"[;,\s]+", text.strip("[] ")) if t]
        if not isinstance(text, (list, tuple)):
            raise QuantaleError(f"grid distribution must be a list, got {text!r}")
        return self.make(text)

    def format(self, u):
        return u.to_json()

    def sample(self, rng, n):
        out = []
        for _ in range(n):
            r = rng.random()
            if r < 0.08:
                out.append(self.bottom)
            elif r < 0.16:
                out.append(self.top)
            else:
                den = rng.randint(1, 6)
                vals = sorted(Fraction(rng.randint(0, den), den) for _ in range(self.size))
                out.append(GridDistribution(self.h, tuple(vals)))
        return out


def convolve(phi: Sequence[Fraction], psi: Sequence[Fraction]) -> tuple:
    """Grid convolution: out[i] = max over j+l <= i (saturating) of phi[j]*psi[l].

    Both inputs are nondecreasing, so for i below saturation the best partner
    of j is l = i - j; at saturation every pair qualifies and the maximum is
    attained at the last entries.
    """
    sat = len(phi) - 1
    out = [max(phi[j] * psi[i - j] for j in range(i + 1)) for i in range(sat)]
    out.append(phi[sat] * psi[sat])
    return tuple(out)


TWO = FiniteChain(2)

_SPEC_RE = re.compile(r"^\s*([a-z_]+)\s*(?:[:(]\s*(.*?)\s*\)?)?\s*$")


def parse_quantale_spec(text: str) -> dict:
    """Turn ``chain:3``, ``lukasiewicz_chain(3)``, ``delta_grid:1/2:4:conv`` into a descriptor."""
    m = _SPEC_RE.match(text)
    if not m:
        raise QuantaleError(f"cannot parse quantale spec {text!r}")
    kind, args = m.group(1), [a for a in re.split(r"[:,]", m.group(2) or "") if a]
    try:
        if kind in ("two", "pplus", "pmax"):
            return {"kind": kind}
        if kind in ("chain", "lukasiewicz_chain"):
            return {"kind": kind, "n": int(args[0])}
        if kind == "unit_interval":
            return {"kind": kind, "tensor": args[0] if args else "min"}
        if kind == "delta_grid":
            return {"kind": kind, "h": args[0], "N": int(args[1]),
                    "tensor": args[2] if len(args) > 2 else "min"}
    except (IndexError, ValueError):
        raise QuantaleError(f"bad arguments in quantale spec {text!r}") from None
    raise QuantaleError(f"unknown quantale kind {kind!r}")


def make_quantale(spec, validate: bool = True) -> Quantale:
    """Build a quantale from a descriptor dict or a short spec string."""
    if isinstance(spec, Quantale):
        return spec
    if isinstance(spec, str):
        spec = parse_quantale_spec(spec)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise QuantaleError(f"quantale descriptor needs a 'kind': {spec!r}")
    kind = spec["kind"]
    if kind == "two":
        return FiniteChain(2)
    if kind == "chain":
        return FiniteChain(int(spec["n"]))
    if kind == "lukasiewicz_chain":
        return FiniteChain(int(spec["n"]), "lukasiewicz")
    if kind == "pplus":
        return ExtendedHalfLine("plus")
    if kind == "pmax":
        return ExtendedHalfLine("max")
    if kind == "unit_interval":
        return UnitInterval(spec.get("tensor", "min"))
    if kind == "delta_grid":
        N = spec.get("N")
        return DeltaGrid(spec.get("h", "1"), N if isinstance(N, int) else -1, spec.get("tensor", "min"))
    if kind == "table":
        try:
            return TableQuantale(spec["elements"], spec["leq"], spec["tensor"], spec["unit"],
                                 validate=validate)
        except KeyError as exc:
            raise QuantaleError(f"table descriptor is missing {exc.args[0]!r}") from None
    raise QuantaleError(f"unknown quantale kind {kind!r}")


def sample_elements(q: Quantale, n: int, seed: int = 0) -> list:
    """Deterministic sample; always contains bottom, top and unit."""
    rng = random.Random(seed)
    out = dict.fromkeys([q.bottom, q.top, q.unit])
    for _ in range(50):
        if len(out) >= n:
            break
        out.update(dict.fromkeys(q.sample(rng, n)))
    return list(out)[:max(n, 3)]


def check_quantale_laws(q: Quantale, samples: Sequence | None = None,
                        triples: Iterable | None = None) -> LawReport:
    """Check the quantale laws on every triple drawn from ``samples``.

    With no samples, a finite quantale is checked on its whole carrier and
    its flags are compared with exhaustive computation.  ``triples`` may be
    given instead of ``samples`` to check an explicit list.
    """
    rep = LawReport("quantale_laws", claim=f"{q.name} is a commutative unital quantale")
    exhaustive = samples is None and triples is None
    if samples is None:
        if q.elements is None and triples is None:
            raise QuantaleError(f"{q.name} is infinite; pass samples")
        samples = q.elements if q.elements is not None else []
    samples = list(samples)
    if triples is None:
        triples = itertools.product(samples, repeat=3)
        pairs = list(itertools.product(samples, repeat=2))
        singles = samples
    else:
        triples = list(triples)
        pairs = [(u, v) for u, v, _ in triples]
        singles = list(dict.fromkeys(u for t in triples for u in t))
    fmt = q.format
    tensor, leq = q.tensor, q.leq

    def law(name, ok, *elems):
        rep.record(ok, None if ok else {"law": name, "elements": [fmt(e) for e in elems]})

    for u in singles:
        law("unit", tensor(u, q.unit) == u and tensor(q.unit, u) == u, u)
        law("bottom_absorbs", tensor(u, q.bottom) == q.bottom, u)
        law("bounds", leq(q.bottom, u) and leq(u, q.top), u)
    for u, v in pairs:
        law("commutativity", tensor(u, v) == tensor(v, u), u, v)
        j = q.join2(u, v)
        m = q.meet2(u, v)
        law("join_is_upper_bound", leq(u, j) and leq(v, j), u, v)
        law("meet_is_lower_bound", leq(m, u) and leq(m, v), u, v)
    for u, v, w in triples:
        law("associativity", tensor(tensor(u, v), w) == tensor(u, tensor(v, w)), u, v, w)
        law("join_distributivity",
            tensor(u, q.join2(v, w)) == q.join2(tensor(u, v), tensor(u, w)), u, v, w)
        law("frame_distributivity",
            q.meet2(u, q.join2(v, w)) == q.join2(q.meet2(u, v), q.meet2(u, w)), u, v, w)
        if leq(u, w) and leq(v, w):
            law("join_is_least", leq(q.join2(u, v), w), u, v, w)
        if leq(w, u) and leq(w, v):
            law("meet_is_greatest", leq(w, q.meet2(u, v)), u, v, w)
        if q.has_hom:
            law("residuation", leq(tensor(u, v), w) == leq(u, q.hom(v, w)), u, v, w)

    # flags: declared values must match what the carrier shows
    frame_wit = next(((u, v) for u, v in pairs if tensor(u, v) != q.meet2(u, v)), None)
    opt_wit = next(((u, v) for u, v in pairs
                    if tensor(u, v) == q.bottom and q.bottom not in (u, v)), None)
    if exhaustive:
        law("flag_is_frame", q.is_frame == (frame_wit is None))
        law("flag_is_optimistic", q.is_optimistic == (opt_wit is None))
        law("flag_is_integral", q.is_integral == (q.unit == q.top))
    else:
        if q.is_frame:
            law("flag_is_frame", frame_wit is None, *(frame_wit or ()))
        if q.is_optimistic:
            law("flag_is_optimistic", opt_wit is None, *(opt_wit or ()))
        law("flag_is_integral", q.is_integral == (q.unit == q.top))
    rep.evidence = {
        "quantale": q.name,
        "is_frame": q.is_frame,
        "is_integral": q.is_integral,
        "is_optimistic": q.is_optimistic,
        "non_frame_witness": [fmt(e) for e in frame_wit] if frame_wit else None,
    }
    return rep


# -- lax homomorphisms ---------------------------------------------------------

@dataclass(frozen=True)
class LaxHom:
    """A map of quantales; laxness is checked by :func:`check_lax_hom`, not assumed."""

    source: Quantale
    target: Quantale
    fn: Callable
    name: str = "phi"

    def __call__(self, u):
        return self.fn(u)

    def __repr__(self):
        return f"<lax hom {self.name}: {self.source.name} -> {self.target.name}>"


def _require_nondegenerate(V: Quantale):
    if V.bottom == V.top:
        raise QuantaleError(f"{V.name} is degenerate (bottom = top)")


def iota_map(V: Quantale) -> LaxHom:
    _require_nondegenerate(V)
    return LaxHom(TWO, V, lambda w: V.unit if w == TWO.top else V.bottom, "iota")


def tau_map(V: Quantale) -> LaxHom:
    _require_nondegenerate(V)
    return LaxHom(TWO, V, lambda w: V.top if w == TWO.top else V.bottom, "tau")


def pessimist_map(V: Quantale) -> LaxHom:
    _require_nondegenerate(V)
    return LaxHom(V, TWO, lambda v: TWO.top if V.leq(V.unit, v) else TWO.bottom, "pessimist")


def optimist_map(V: Quantale) -> LaxHom:
    _require_nondegenerate(V)
    if not V.is_optimistic:
        raise QuantaleError(f"{V.name} is not optimistic: the optimist map is not lax")
    return LaxHom(V, TWO, lambda v: TWO.bottom if v == V.bottom else TWO.top, "optimist")


def builtin_lax_homs(V: Quantale) -> dict:
    """iota, tau: two -> V and pessimist (and optimist, when V is optimistic): V -> two."""
    out = {"iota": iota_map(V), "tau": tau_map(V), "pessimist": pessimist_map(V)}
    if V.is_optimistic:
        out["optimist"] = optimist_map(V)
    return out


def identity_hom(V: Quantale) -> LaxHom:
    return LaxHom(V, V, lambda u: u, "id")


def compose_homs(g: LaxHom, f: LaxHom) -> LaxHom:
    """g after f."""
    if f.target != g.source:
        raise QuantaleError(f"cannot compose {g.name} after {f.name}")
    return LaxHom(f.source, g.target, lambda u: g.fn(f.fn(u)), f"{g.name}.{f.name}")


def _exact_log2(u: Fraction) -> Fraction:
    num, den = u.numerator, u.denominator
    for n in (num, den):
        if n & (n - 1):
            raise QuantaleError(f"-log2({u}) is irrational; only powers of 2 are exact")
    return Fraction(den.bit_length() - num.bit_length())


def neg_log2_hom() -> LaxHom:
    """u -> -log2 u from unit_interval(product) to pplus.

    A positive rescaling of u -> -ln u (rescaling is an automorphism of
    pplus), so it is still an isomorphism of quantales; it is exact on
    powers of 1/2 and on 0.
    """
    return LaxHom(UnitInterval("product"), ExtendedHalfLine("plus"),
                  lambda u: INF if u == 0 else _exact_log2(u), "neg_log2")


def one_minus_hom() -> LaxHom:
    """u -> 1 - u from unit_interval(lukasiewicz) to pplus."""
    return LaxHom(UnitInterval("lukasiewicz"), ExtendedHalfLine("plus"), lambda u: 1 - u,
                  "one_minus")


def check_lax_hom(f: LaxHom, samples: Sequence | None = None) -> LawReport:
    V, W = f.source, f.target
    if samples is None:
        if V.elements is None:
            raise QuantaleError(f"{V.name} is infinite; pass samples")
        samples = V.elements
    samples = list(samples)
    rep = LawReport("lax_hom", claim=f"{f.name}: {V.name} -> {W.name} is a lax homomorphism")
    img = {i: f(u) for i, u in enumerate(samples)}
    strict = True
    rep.record(W.leq(W.unit, f(V.unit)),
               {"law": "unit", "elements": [W.format(W.unit), W.format(f(V.unit))]})
    for (i, u), (j, v) in itertools.product(enumerate(samples), repeat=2):
        if V.leq(u, v):
            ok = W.leq(img[i], img[j])
            rep.record(ok, None if ok else {"law": "monotone", "elements": [V.format(u), V.format(v)]})
        lhs, rhs = W.tensor(img[i], img[j]), f(V.tensor(u, v))
        ok = W.leq(lhs, rhs)
        strict = strict and lhs == rhs
        rep.record(ok, None if ok else {"law": "lax_tensor", "elements": [V.format(u), V.format(v)]})
    rep.evidence = {"strict_tensor": strict, "samples": len(samples)}
    return rep


def check_adjunction(left: LaxHom, right: LaxHom, left_samples: Sequence | None = None,
                     right_samples: Sequence | None = None) -> LawReport:
    """Check left(w) <= v  iff  w <= right(v) for w in left_samples, v in right_samples."""
    W, V = left.source, left.target
    if right.source != V or right.target != W:
        raise QuantaleError(f"{left.name} and {right.name} do not run between the same "
                            f"pair of quantales in opposite directions")
    if left_samples is None:
        left_samples = W.elements
    if right_samples is None:
        right_samples = V.elements
    if left_samples is None or right_samples is None:
        raise QuantaleError("infinite carrier: pass samples")
    rep = LawReport("adjunction", claim=f"{left.name} -| {right.name}")
    for w in left_samples:
        lw = left(w)
        for v in right_samples:
            a, b = V.leq(lw, v), W.leq(w, right(v))
            rep.record(a == b, None if a == b else {
                "law": "galois", "elements": [W.format(w), V.format(v)],
                "left_side": a, "right_side": b})
    return rep
