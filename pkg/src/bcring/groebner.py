"""Polynomials over Q in y_1..y_n, term orders, and Buchberger's algorithm."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ._engine import PackedRing
from .exactla import format_rational, parse_rational
from .matroid import CircuitVector
from .nbc import GroundOrdering, HilbertSeries, MonomialIdeal, hilbert_monomial

Monomial = tuple[int, ...]

WEIGHT_MIN = 1
WEIGHT_MAX = 10**6


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms=None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent vector of wrong length")
                c = Fraction(c)
                if c:
                    clean[e] = clean.get(e, Fraction(0)) + c
            clean = {e: c for e, c in clean.items() if c}
        self.n = n
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        return cls(n, {tuple(int(k == i) for k in range(n)): 1})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        return cls(n, {tuple(int(k == i) for k in range(n)): c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.n, out)

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial(self.n)
        return Polynomial._raw(self.n, {e: c * v for e, v in self.terms.items()})

    def mul_term(self, c, mono: Monomial) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial(self.n)
        return Polynomial._raw(
            self.n,
            {tuple(a + b for a, b in zip(e, mono)): c * v for e, v in self.terms.items()},
        )

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = Polynomial(self.n)
        for e, c in other.terms.items():
            out = out + self.mul_term(c, e)
        return out

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def leading_term(self, order: "TermOrder") -> tuple[Monomial, Fraction]:
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: "TermOrder") -> Monomial:
        return max(self.terms, key=order.key)

    def monic(self, order: "TermOrder") -> "Polynomial":
        _, c = self.leading_term(order)
        return self.scale(1 / c)

    def sorted_terms(self, order: "TermOrder | None" = None) -> list[tuple[Fraction, Monomial]]:
        """(coeff, monomial) pairs, largest first; canonical order is grevlex."""
        key = (order or grevlex(self.n)).key
        return [(self.terms[e], e) for e in sorted(self.terms, key=key, reverse=True)]

    def to_json(self) -> list[dict]:
        return [
            {"coeff": format_rational(c), "exps": list(e)} for c, e in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list, n: int | None = None) -> "Polynomial":
        if n is None:
            if not data:
                raise ValueError("cannot infer variable count of the zero polynomial")
            n = len(data[0]["exps"])
        return cls(n, [(tuple(int(x) for x in t["exps"]), parse_rational(t["coeff"])) for t in data])

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, e in self.sorted_terms():
            mono = "*".join(
                f"y{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            coeff = format_rational(c)
            if mono:
                coeff = {"1": "", "-1": "-"}.get(coeff, coeff + "*")
                parts.append(coeff + mono)
            else:
                parts.append(coeff)
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class TermOrder:
    """A monomial order.

    kind is "lex" or "grevlex" (with ``precedence``: 1-based variables from
    largest to smallest) or "weight" (positive ``weights`` with a grevlex
    tie-break on y_1 > ... > y_n).
    """

    kind: str
    precedence: tuple[int, ...] = ()
    weights: tuple[int, ...] = ()
    tiebreak: str = "grevlex"

    def __post_init__(self):
        if self.kind in ("lex", "grevlex"):
            p = tuple(int(x) for x in self.precedence)
            if sorted(p) != list(range(1, len(p) + 1)):
                raise ValueError(f"precedence is not a permutation: {p}")
            object.__setattr__(self, "precedence", p)
        elif self.kind == "weight":
            w = tuple(int(x) for x in self.weights)
            if any(x <= 0 for x in w):
                raise ValueError("weights must be positive")
            if self.tiebreak != "grevlex":
                raise ValueError(f"unsupported tie-break {self.tiebreak!r}")
            object.__setattr__(self, "weights", w)
        else:
            raise ValueError(f"unknown term order kind {self.kind!r}")
        object.__setattr__(self, "_key", self._make_key())

    @property
    def n(self) -> int:
        return len(self.weights) if self.kind == "weight" else len(self.precedence)

    def _make_key(self) -> Callable[[Monomial], tuple]:
        if self.kind == "lex":
            idx = [p - 1 for p in self.precedence]
            return lambda e: tuple(e[i] for i in idx)
        if self.kind == "grevlex":
            rev = [p - 1 for p in reversed(self.precedence)]
            return lambda e: (sum(e), *(-e[i] for i in rev))
        w = self.weights
        rev = list(range(len(w) - 1, -1, -1))
        return lambda e: (
            sum(a * b for a, b in zip(w, e)),
            sum(e),
            *(-e[i] for i in rev),
        )

    def key(self, e: Monomial) -> tuple:
        """Flat tuple of ints; larger key means larger monomial."""
        return self._key(e)

    def ring(self, n: int) -> PackedRing:
        """Packed-monomial kernel for this order, cached per variable count."""
        rings = self.__dict__.setdefault("_rings", {})
        if n not in rings:
            rings[n] = PackedRing(n, self._key)
        return rings[n]

    def less(self, a: Monomial, b: Monomial) -> bool:
        return self._key(a) < self._key(b)

    def to_json(self) -> dict:
        if self.kind == "weight":
            return {"kind": "weight", "weights": list(self.weights), "tiebreak": self.tiebreak}
        return {"kind": self.kind, "precedence": list(self.precedence)}

    @classmethod
    def from_json(cls, data: dict) -> "TermOrder":
        kind = data["kind"]
        if kind == "weight":
            return cls("weight", weights=tuple(data["weights"]), tiebreak=data.get("tiebreak", "grevlex"))
        return cls(kind, precedence=tuple(data["precedence"]))


def lex(n: int) -> TermOrder:
    return TermOrder("lex", tuple(range(1, n + 1)))


def grevlex(n: int) -> TermOrder:
    return TermOrder("grevlex", tuple(range(1, n + 1)))


def order_induced_by(w: GroundOrdering) -> TermOrder:
    """Lex with y_(w-largest) > ... > y_(w-smallest).

    Under this order the leading monomial of f_C omits exactly the w-minimal
    element of C.
    """
    return TermOrder("lex", tuple(reversed(w.perm)))


def random_weight_order(n: int, rng: random.Random) -> TermOrder:
    return TermOrder("weight", weights=tuple(rng.randint(WEIGHT_MIN, WEIGHT_MAX) for _ in range(n)))


def circuit_polynomial(c: CircuitVector, n: int) -> Polynomial:
    """f_C = sum_c a_c prod_{c' in C, c' != c} y_c'."""
    terms = {}
    for elem, a in zip(c.support, c.coeffs):
        e = [0] * n
        for other in c.support:
            if other != elem:
                e[other] = 1
        terms[tuple(e)] = a
    return Polynomial(n, terms)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def divide(
    p: Polynomial, basis: Sequence[Polynomial], order: TermOrder
) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division: p = sum q_i * basis_i + r, r fully reduced.

    Returns (quotients, remainder).
    """
    n = p.n
    key = order.key
    leads = [g.leading_term(order) for g in basis]
    quot: list[dict] = [{} for _ in basis]
    work = dict(p.terms)
    rem: dict = {}
    while work:
        e = max(work, key=key)
        c = work[e]
        for k, ((le, lc), g) in enumerate(zip(leads, basis)):
            if _divides(le, e):
                mono = _mono_div(e, le)
                f = c / lc
                quot[k][mono] = quot[k].get(mono, 0) + f
                for ge, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(ge, mono))
                    v = work.get(t, 0) - f * gc
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[e] = c
            del work[e]
    return [Polynomial(n, q) for q in quot], Polynomial._raw(n, rem)


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Fully reduced remainder of p modulo basis.

    Same division rule as :func:`divide` (first basis element whose leading
    monomial divides the current leading term), computed on packed monomials.
    """
    ring = order.ring(p.n)
    packed = _pack_basis(ring, basis)
    return Polynomial._raw(p.n, ring.to_terms(ring.reduce(ring.from_terms(p.terms), packed)))


def _pack_basis(ring: PackedRing, basis: Iterable[Polynomial]) -> list[tuple]:
    out = []
    for g in basis:
        if not g:
            raise ValueError("zero polynomial in division basis")
        gp = ring.from_terms(g.terms)
        lm = ring.lead(gp)
        out.append((lm, gp[lm], gp))
    return out


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    fe, fc = f.leading_term(order)
    ge, gc = g.leading_term(order)
    m = _lcm(fe, ge)
    return f.mul_term(1 / fc, _mono_div(m, fe)) - g.mul_term(1 / gc, _mono_div(m, ge))


def spair_reduces_to_zero(
    f: Polynomial, g: Polynomial, basis: Sequence[Polynomial], order: TermOrder
) -> bool:
    """Explicitly reduce S(f, g) against basis; no criteria are applied."""
    return normal_form(s_polynomial(f, g, order), basis, order).is_zero()


def failing_spairs(
    gens: Sequence[Polynomial], order: TermOrder
) -> list[tuple[int, int, Polynomial]]:
    """All (i, j, remainder) with S(g_i, g_j) not reducing to zero.

    Every pair is reduced explicitly, coprime leading monomials included.
    Indices refer to ``gens`` with zero polynomials skipped.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = order.ring(gens[0].n)
    packed = _pack_basis(ring, gens)
    cache: dict = {}
    out = []
    for i in range(len(packed)):
        for j in range(i + 1, len(packed)):
            fl, _, f = packed[i]
            gl, _, g = packed[j]
            r = ring.reduce(ring.spoly(f, fl, g, gl), packed, cache)
            if r:
                out.append((i, j, Polynomial._raw(gens[0].n, ring.to_terms(r))))
    return out


def is_groebner_basis(gens: Sequence[Polynomial], order: TermOrder) -> bool:
    return not failing_spairs(gens, order)


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis, elements monic and sorted by leading monomial (largest first)."""

    order: TermOrder
    elements: tuple[Polynomial, ...]
    n: int

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_unit(self) -> bool:
        return any(sum(e) == 0 for e in self.leading_monomials())

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self.elements, self.order).is_zero()

    def to_json(self) -> dict:
        return {"order": self.order.to_json(), "elements": [g.to_json() for g in self.elements]}


def _interreduce_packed(ring: PackedRing, basis: list[dict]) -> list[dict]:
    gs = [ring.monic(g) for g in basis if g]
    nk = ring.neg_key
    leads = [ring.lead(g) for g in gs]
    order_idx = sorted(range(len(gs)), key=lambda k: nk(leads[k]), reverse=True)
    minimal: list[int] = []
    for k in order_idx:
        if not any(ring.divides(leads[h], leads[k]) for h in minimal):
            minimal.append(k)
    out = []
    for k in minimal:
        others = [(leads[h], gs[h][leads[h]], gs[h]) for h in minimal if h != k]
        tail = {p: v for p, v in gs[k].items() if p != leads[k]}
        r = ring.reduce(tail, others)
        r[leads[k]] = gs[k][leads[k]]
        out.append(r)
    out.sort(key=lambda g: nk(ring.lead(g)))
    return out


def interreduce(gens: Iterable[Polynomial], order: TermOrder, n: int | None = None) -> list[Polynomial]:
    """Reduced form of a Groebner basis: minimal leading monomials, tails reduced, monic.

    Only meaningful when ``gens`` is already a Groebner basis.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    n = gens[0].n if n is None else n
    ring = order.ring(n)
    red = _interreduce_packed(ring, [ring.from_terms(g.terms) for g in gens])
    return [Polynomial._raw(n, ring.to_terms(g)) for g in red]


def buchberger(
    gens: Iterable[Polynomial], order: TermOrder, n: int | None = None, coprime_criterion: bool = True
) -> GroebnerBasis:
    """Reduced Groebner basis of <gens> under ``order``.

    Pairs are processed by the normal strategy (smallest lcm first; ties by
    pair index). With ``coprime_criterion`` pairs whose leading monomials are
    coprime are skipped; their S-polynomials are known to reduce to zero.
    """
    gens = [g for g in gens if g]
    if n is None:
        if not gens:
            raise ValueError("variable count needed for the zero ideal")
        n = gens[0].n
    if not gens:
        return GroebnerBasis(order, (), n)
    ring = order.ring(n)
    basis = [ring.monic(ring.from_terms(g.terms)) for g in gens]
    packed = []
    for g in basis:
        lm = ring.lead(g)
        packed.append((lm, g[lm], g))
    one = ring.pack((0,) * n)
    if any(lm == one for lm, _, _ in packed):
        return GroebnerBasis(order, (Polynomial.constant(n, 1),), n)
    nk = ring.neg_key
    cache: dict = {}
    heap = []
    for j in range(len(packed)):
        for i in range(j):
            heapq.heappush(heap, (_neg(nk(ring.lcm(packed[i][0], packed[j][0]))), i, j))
    while heap:
        _, i, j = heapq.heappop(heap)
        fl, _, f = packed[i]
        gl, _, g = packed[j]
        if coprime_criterion and ring.coprime(fl, gl):
            continue
        r = ring.reduce(ring.spoly(f, fl, g, gl), packed, cache)
        if r:
            r = ring.monic(r)
            lm = ring.lead(r)
            if lm == one:
                return GroebnerBasis(order, (Polynomial.constant(n, 1),), n)
            packed.append((lm, r[lm], r))
            k = len(packed) - 1
            for a in range(k):
                heapq.heappush(heap, (_neg(nk(ring.lcm(packed[a][0], lm))), a, k))
    red = _interreduce_packed(ring, [g for _, _, g in packed])
    return GroebnerBasis(order, tuple(Polynomial._raw(n, ring.to_terms(g)) for g in red), n)


def _neg(t: tuple) -> tuple:
    """Undo PackedRing.neg_key, giving the order key (smallest lcm pops first)."""
    return tuple(-x for x in t)


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal(gb.n, tuple(gb.leading_monomials()))


def leading_monomial_ideal(gens: Iterable[Polynomial], order: TermOrder, n: int) -> MonomialIdeal:
    """Ideal generated by the leading monomials of the given generators."""
    return MonomialIdeal(n, tuple(g.leading_monomial(order) for g in gens if g))


def hilbert_quotient(gens: Sequence[Polynomial], order: TermOrder, n: int | None = None) -> HilbertSeries:
    """Hilbert series of k[y]/<gens> for homogeneous generators."""
    gens = [g for g in gens if g]
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"inhomogeneous generator: {g!r}")
    if n is None:
        n = gens[0].n if gens else order.n
    gb = buchberger(gens, order, n=n)
    return hilbert_monomial(initial_ideal(gb))
