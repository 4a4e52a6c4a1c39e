"""Broken circuit complexes, f/h-vectors, Stanley-Reisner ideals, Hilbert series.

Monomial ideals and Hilbert series live here too; the Groebner module builds
on them, and the Hilbert series recursion below is deliberately independent
of any Groebner machinery so the two routes can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .matroid import CircuitVector, Matroid


class InvariantViolation(AssertionError):
    """An identity that must hold for every input failed; an upstream bug."""


@dataclass(frozen=True)
class GroundOrdering:
    """Permutation of {1..n} listed from w-smallest to w-largest."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"not a permutation of 1..{len(perm)}: {list(self.perm)}")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, n: int) -> "GroundOrdering":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "GroundOrdering":
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))

    @property
    def n(self) -> int:
        return len(self.perm)

    def position(self, i: int) -> int:
        """w-rank of the 0-based element i (0 = w-smallest)."""
        return self._positions[i]

    @property
    def _positions(self) -> tuple[int, ...]:
        pos = [0] * self.n
        for k, p in enumerate(self.perm):
            pos[p - 1] = k
        return tuple(pos)

    def minimal(self, s: Iterable[int]) -> int:
        pos = self._positions
        return min(s, key=lambda i: pos[i])

    def restrict(self, labels: Sequence[int]) -> "GroundOrdering":
        """Induced ordering on a minor whose columns carry ``labels``."""
        where = {lab: k + 1 for k, lab in enumerate(labels)}
        return GroundOrdering(tuple(where[p] for p in self.perm if p in where))

    def to_json(self) -> list[int]:
        return list(self.perm)


@dataclass(frozen=True)
class SimplicialComplexByFacets:
    """A complex on n vertices given by its facets (0-based, sorted).

    ``empty`` marks the void complex (no faces at all), as opposed to the
    complex whose only face is the empty set, which has facets ((),).
    """

    n: int
    facets: tuple[tuple[int, ...], ...]
    empty: bool = False

    def __post_init__(self):
        if self.empty and self.facets:
            raise ValueError("the empty complex has no facets")
        fs = [frozenset(f) for f in self.facets]
        for a in fs:
            for b in fs:
                if a < b:
                    raise ValueError("facets must be pairwise incomparable")

    def faces(self) -> set[frozenset[int]]:
        out: set[frozenset[int]] = set()
        for f in self.facets:
            for mask in range(1 << len(f)):
                out.add(frozenset(v for k, v in enumerate(f) if mask >> k & 1))
        return out

    def is_face(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return any(s <= frozenset(f) for f in self.facets)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def to_json(self) -> dict:
        return {"facets": [[v + 1 for v in f] for f in self.facets], "empty": self.empty}

    @classmethod
    def from_json(cls, data: dict, n: int) -> "SimplicialComplexByFacets":
        facets = tuple(tuple(sorted(v - 1 for v in f)) for f in data["facets"])
        return cls(n, facets, bool(data.get("empty", False)))


@dataclass(frozen=True)
class HVector:
    d: int
    h: tuple[int, ...]

    def to_json(self) -> dict:
        return {"d": self.d, "h": list(self.h)}

    @classmethod
    def from_json(cls, data: dict) -> "HVector":
        return cls(int(data["d"]), tuple(int(x) for x in data["h"]))


def _mono_key(e: tuple[int, ...]):
    return (sum(e), tuple(-x for x in e))


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Drop generators divisible by another; canonical order."""
    uniq = sorted({tuple(g) for g in gens}, key=_mono_key)
    out: list[tuple[int, ...]] = []
    for g in uniq:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal of k[y_1..y_n] generated by monomials (exponent vectors)."""

    n: int
    gens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.n:
                raise ValueError("exponent vector of wrong length")
        object.__setattr__(self, "gens", minimalize(self.gens))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "MonomialIdeal":
        gens = []
        for s in sets:
            e = [0] * n
            for i in s:
                e[i] = 1
            gens.append(tuple(e))
        return cls(n, tuple(gens))

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    def contains(self, e: Sequence[int]) -> bool:
        return any(_divides(g, e) for g in self.gens)

    def to_json(self) -> dict:
        return {"n": self.n, "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialIdeal":
        return cls(int(data["n"]), tuple(tuple(g) for g in data["gens"]))

    def __str__(self):
        if not self.gens:
            return "<0>"
        return "<" + ", ".join(_mono_str(g) for g in self.gens) + ">"


def _mono_str(e: Sequence[int]) -> str:
    parts = [f"y{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
    return "*".join(parts) or "1"


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(z) / (1 - z)^denom_power, kept reduced.

    The zero series has an empty numerator and denom_power 0.
    """

    numerator: tuple[int, ...]
    denom_power: int

    def __post_init__(self):
        num = _trim(list(self.numerator))
        k = self.denom_power
        if not num:
            k = 0
        while k > 0 and sum(num) == 0:
            # synthetic division by (1 - z)
            q = []
            acc = 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = _trim(q)
            k -= 1
        object.__setattr__(self, "numerator", tuple(num))
        object.__setattr__(self, "denom_power", k)

    def coefficients(self, upto: int) -> list[int]:
        """Hilbert function values in degrees 0..upto."""
        from math import comb

        k = self.denom_power
        out = []
        for t in range(upto + 1):
            if k == 0:
                out.append(self.numerator[t] if t < len(self.numerator) else 0)
            else:
                out.append(
                    sum(
                        c * comb(t - i + k - 1, k - 1)
                        for i, c in enumerate(self.numerator)
                        if i <= t
                    )
                )
        return out

    def degree(self) -> int:
        """Numerator at z = 1: the degree of the projective scheme."""
        return sum(self.numerator)

    def dimension(self) -> int:
        """Krull dimension; -1 for the zero ring."""
        return self.denom_power if self.numerator else -1

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denom_power": self.denom_power}

    @classmethod
    def from_json(cls, data: dict) -> "HilbertSeries":
        return cls(tuple(int(c) for c in data["numerator"]), int(data["denom_power"]))

    def __str__(self):
        num = " + ".join(
            f"{c}" if i == 0 else f"{c}z^{i}" for i, c in enumerate(self.numerator) if c
        ) or "0"
        return f"({num})/(1-z)^{self.denom_power}"


def broken_circuits(circuits: Iterable[CircuitVector], w: GroundOrdering) -> list[frozenset[int]]:
    """C minus its w-minimal element, for each circuit C; duplicates removed."""
    seen: list[frozenset[int]] = []
    for c in circuits:
        b = frozenset(c.support) - {w.minimal(c.support)}
        if b not in seen:
            seen.append(b)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def nbc_complex(m: Matroid, w: GroundOrdering) -> SimplicialComplexByFacets:
    """Complex of subsets of [n] containing no broken circuit, by facets."""
    if w.n != m.n:
        raise ValueError("ordering size does not match the ground set")
    bcs = broken_circuits(m.circuits, w)
    if any(not b for b in bcs):
        return SimplicialComplexByFacets(m.n, (), empty=True)
    masks = [sum(1 << i for i in b) for b in bcs]
    # broken circuits grouped by their largest element, for incremental checks
    by_top: dict[int, list[int]] = {}
    for b, mask in zip(bcs, masks):
        by_top.setdefault(max(b), []).append(mask)

    faces_max: list[int] = []

    def grow(face: int, start: int) -> None:
        extended = False
        for j in range(start, m.n):
            new = face | (1 << j)
            if any(mk & new == mk for mk in by_top.get(j, ())):
                continue
            extended = True
            grow(new, j + 1)
        if not extended:
            faces_max.append(face)

    grow(0, 0)
    # a face can be a dead end of the ordered search while still extending
    # by a smaller element, so prune non-maximal ones
    uniq = sorted(set(faces_max), key=lambda f: (-bin(f).count("1"), f))
    facets: list[int] = []
    for f in uniq:
        if not any(f & g == f for g in facets):
            facets.append(f)
    as_tuples = sorted(tuple(i for i in range(m.n) if f >> i & 1) for f in facets)
    return SimplicialComplexByFacets(m.n, tuple(as_tuples))


def f_vector(cx: SimplicialComplexByFacets) -> list[int]:
    """f_i = number of faces with i elements, i = 0..max facet size."""
    if cx.empty:
        return [0]
    top = max(len(f) for f in cx.facets)
    f = [0] * (top + 1)
    for face in cx.faces():
        f[len(face)] += 1
    return f


def h_vector(f: Sequence[int], d: int) -> HVector:
    """h from sum h_i z^i = sum f_i z^i (1-z)^(d-i), truncated to length d."""
    from math import comb

    if len(f) > d + 1:
        raise ValueError(f"f-vector of length {len(f)} exceeds d + 1 = {d + 1}")
    coeffs = [0] * (d + 1)
    for i, fi in enumerate(f):
        for k in range(d - i + 1):
            coeffs[i + k] += fi * comb(d - i, k) * (-1) ** k
    if coeffs[d] != 0:
        raise InvariantViolation(f"h_{d} = {coeffs[d]} != 0 for f = {list(f)}")
    if any(c < 0 for c in coeffs):
        raise InvariantViolation(f"negative h-vector entry {coeffs[:d]} for f = {list(f)}")
    return HVector(d, tuple(coeffs[:d]))


def sr_ideal(m: Matroid, w: GroundOrdering) -> MonomialIdeal:
    """Stanley-Reisner ideal of the broken circuit complex: generated by the minimal broken circuits."""
    return MonomialIdeal.from_sets(m.n, broken_circuits(m.circuits, w))


def sr_ideal_of_complex(cx: SimplicialComplexByFacets) -> MonomialIdeal:
    """Minimal nonfaces of an arbitrary complex, by exhaustive search."""
    if cx.empty:
        return MonomialIdeal(cx.n, ((0,) * cx.n,))
    facet_masks = [sum(1 << v for v in f) for f in cx.facets]
    nonfaces = []
    for mask in range(1 << cx.n):
        if any(mask & fm == mask for fm in facet_masks):
            continue
        # minimal iff every one-smaller subset is a face
        if all(
            any((mask & ~(1 << v)) & fm == (mask & ~(1 << v)) for fm in facet_masks)
            for v in range(cx.n)
            if mask >> v & 1
        ):
            nonfaces.append([v for v in range(cx.n) if mask >> v & 1])
    return MonomialIdeal.from_sets(cx.n, nonfaces)


@lru_cache(maxsize=100_000)
def _numerator(gens: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """K-polynomial: Hilbert series of k[y]/I times (1 - z)^n."""
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return ()
    n = len(gens[0])
    # pairwise coprime generators: product of (1 - z^deg)
    support_count = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                support_count[i] += 1
    if max(support_count) <= 1:
        poly = [1]
        for g in gens:
            dg = sum(g)
            term = [1] + [0] * (dg - 1) + [-1]
            poly = _poly_mul(poly, term)
        return tuple(poly)
    v = max(range(n), key=lambda i: (support_count[i], -i))
    # 0 -> S/(I:y_v)(-1) -> S/I -> S/(I + y_v) -> 0
    unit_v = tuple(int(i == v) for i in range(n))
    plus = minimalize([g for g in gens if g[v] == 0] + [unit_v])
    colon = minimalize([g[:v] + (max(g[v] - 1, 0),) + g[v + 1:] for g in gens])
    a = list(_numerator(plus))
    b = [0] + list(_numerator(colon))
    return tuple(_trim([x + y for x, y in _zip_pad(a, b)]))


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def hilbert_monomial(ideal: MonomialIdeal) -> HilbertSeries:
    """Hilbert series of k[y_1..y_n]/ideal, reduced."""
    num = _numerator(ideal.gens)
    return HilbertSeries(num, ideal.n)


def h_polynomial_series(h: HVector, denom_power: int | None = None) -> HilbertSeries:
    return HilbertSeries(h.h, h.d if denom_power is None else denom_power)
