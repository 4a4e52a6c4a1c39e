"""The matroid of a rational subspace, given by a matrix whose rows span it.

Ground-set elements are 0-based internally and 1-based in every JSON form.
Subsets are passed around as iterables of ints and returned as frozensets.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .exactla import (
    RationalMatrix,
    format_rational,
    kernel_basis,
    parse_rational,
    rank_of_columns,
    row_basis,
)

TUTTE_MAX_N = 20


class MatroidError(ValueError):
    pass


@dataclass(frozen=True)
class CircuitVector:
    """A circuit ``support`` with coefficients a_c, a_min(support) = 1."""

    support: tuple[int, ...]
    coeffs: tuple[Fraction, ...]

    def coeff(self, c: int) -> Fraction:
        return self.coeffs[self.support.index(c)]

    def to_json(self) -> dict:
        return {
            "support": [c + 1 for c in self.support],
            "coeffs": [format_rational(a) for a in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CircuitVector":
        return cls(
            tuple(int(c) - 1 for c in data["support"]),
            tuple(parse_rational(a) for a in data["coeffs"]),
        )


@dataclass(frozen=True, eq=False)
class Matroid:
    """Matroid of the row space of ``rep`` (rows independent).

    ``labels`` records the 1-based labels of the columns in the matroid this
    one was derived from by deletion, contraction or localization.
    """

    rep: RationalMatrix
    labels: tuple[int, ...] = ()
    name: str = ""
    _rank_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.rep.ncols + 1)))
        if len(self.labels) != self.rep.ncols:
            raise MatroidError("label count does not match column count")

    @property
    def n(self) -> int:
        return self.rep.ncols

    @property
    def d(self) -> int:
        return self.rep.nrows

    @property
    def ground_set(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def rank(self, s: Iterable[int]) -> int:
        key = frozenset(s)
        r = self._rank_cache.get(key)
        if r is None:
            r = rank_of_columns(self.rep, key)
            self._rank_cache[key] = r
        return r

    def closure(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        r = self.rank(s)
        return s | {j for j in range(self.n) if j not in s and self.rank(s | {j}) == r}

    def is_flat(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return self.closure(s) == s

    def flats(self) -> list[frozenset[int]]:
        """All flats, sorted by (size, elements)."""
        found = {self.closure(s) for s in _all_subsets(self.n)}
        return sorted(found, key=lambda f: (len(f), sorted(f)))

    def is_loop(self, i: int) -> bool:
        return self.rank({i}) == 0

    def is_coloop(self, i: int) -> bool:
        return self.rank(self.ground_set - {i}) == self.d - 1

    def loops(self) -> list[int]:
        return [i for i in range(self.n) if self.is_loop(i)]

    def is_independent(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return self.rank(s) == len(s)

    @cached_property
    def circuits(self) -> tuple[CircuitVector, ...]:
        """All circuits with normalized coefficient vectors, sorted by support."""
        out = []
        circuit_sets: list[frozenset[int]] = []
        for k in range(1, self.d + 2):
            for sub in itertools.combinations(range(self.n), k):
                s = frozenset(sub)
                if any(c <= s for c in circuit_sets):
                    continue
                if self.rank(s) == k:
                    continue
                # dependent with no smaller circuit inside: minimal
                (vec,) = kernel_basis(self.rep.columns(sub))
                out.append(CircuitVector(sub, vec))
                circuit_sets.append(s)
        out.sort(key=lambda c: c.support)
        return tuple(out)

    def delete(self, i: int) -> "Matroid":
        """Projection of the row space away from coordinate i."""
        keep = [j for j in range(self.n) if j != i]
        rep = row_basis(self.rep.columns(keep))
        return Matroid(rep, tuple(self.labels[j] for j in keep), self.name)

    def contract(self, i: int) -> "Matroid":
        """Row space intersected with {x_i = 0}, in the remaining coordinates."""
        if self.is_loop(i):
            raise MatroidError(f"cannot contract loop {i + 1}")
        rows = [list(r) for r in self.rep.rows]
        p = next(k for k, r in enumerate(rows) if r[i] != 0)
        prow = rows[p]
        new_rows = []
        for k, r in enumerate(rows):
            if k == p:
                continue
            f = r[i] / prow[i]
            new_rows.append([a - f * b for a, b in zip(r, prow)])
        keep = [j for j in range(self.n) if j != i]
        rep = RationalMatrix([[r[j] for j in keep] for r in new_rows], len(keep))
        return Matroid(rep, tuple(self.labels[j] for j in keep), self.name)

    def localization(self, flat: Iterable[int]) -> "Matroid":
        """Projection of the row space onto the coordinates of the flat I."""
        cols = self._require_flat(flat)
        rep = row_basis(self.rep.columns(cols))
        return Matroid(rep, tuple(self.labels[j] for j in cols), self.name)

    def complement_restriction(self, flat: Iterable[int]) -> "Matroid":
        """Row space intersected with the coordinate subspace off the flat I.

        Some authors call this the deletion of I, although under the usual
        convention it is the contraction by I.
        """
        cols = self._require_flat(flat)
        rest = [j for j in range(self.n) if j not in set(cols)]
        # combinations c of the rows with c . rep[:, I] = 0
        if cols:
            combos = kernel_basis(self.rep.columns(cols).transpose())
        else:
            combos = [tuple(Fraction(int(k == j)) for k in range(self.d)) for j in range(self.d)]
        rows = [
            [sum((c[k] * self.rep.rows[k][j] for k in range(self.d)), Fraction(0)) for j in rest]
            for c in combos
        ]
        rep = RationalMatrix(rows, len(rest))
        return Matroid(rep, tuple(self.labels[j] for j in rest), self.name)

    def _require_flat(self, s: Iterable[int]) -> list[int]:
        s = frozenset(s)
        if not s <= self.ground_set:
            raise MatroidError("subset outside ground set")
        if not self.is_flat(s):
            raise MatroidError(f"{sorted(j + 1 for j in s)} is not a flat")
        return sorted(s)

    def tutte(self) -> dict[tuple[int, int], int]:
        return tutte(self)

    def tutte_10(self) -> int:
        return tutte_10(self)

    def to_json(self) -> dict:
        return {"name": self.name, "matrix": self.rep.to_json()}


def _all_subsets(n: int):
    for mask in range(1 << n):
        yield frozenset(j for j in range(n) if mask >> j & 1)


def from_matrix(rep, name: str = "") -> Matroid:
    """Build the matroid of a matrix's row space; dependent rows are dropped."""
    if not isinstance(rep, RationalMatrix):
        rep = RationalMatrix(rep)
    if rep.ncols < 1:
        raise MatroidError("matrix must have at least one column")
    return Matroid(row_basis(rep), name=name)


def load_matroid(data) -> Matroid:
    """Parse the ``{"name": ..., "matrix": [[...]]}`` input form."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if not isinstance(data, dict) or "matrix" not in data:
        raise MatroidError('input must be an object with a "matrix" field')
    return from_matrix(RationalMatrix.from_json(data["matrix"]), str(data.get("name", "")))


def circuits(m: Matroid) -> list[CircuitVector]:
    return list(m.circuits)


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _binom_shift(var: int, e: int) -> dict:
    """(x - 1)^e if var == 0 else (y - 1)^e, as {(i, j): coeff}."""
    from math import comb

    out = {}
    for k in range(e + 1):
        c = comb(e, k) * (-1) ** (e - k)
        out[(k, 0) if var == 0 else (0, k)] = c
    return out


def tutte(m: Matroid) -> dict[tuple[int, int], int]:
    """Tutte polynomial by the corank-nullity expansion, as {(i, j): coeff of x^i y^j}."""
    if m.n > TUTTE_MAX_N:
        raise MatroidError(f"refusing Tutte expansion on {m.n} > {TUTTE_MAX_N} elements")
    counts: dict[tuple[int, int], int] = {}
    for s in _all_subsets(m.n):
        r = m.rank(s)
        key = (m.d - r, len(s) - r)
        counts[key] = counts.get(key, 0) + 1
    total: dict = {}
    for (a, b), mult in counts.items():
        term = _poly_mul(_binom_shift(0, a), _binom_shift(1, b))
        for k, v in term.items():
            total[k] = total.get(k, 0) + mult * v
    return {k: v for k, v in sorted(total.items()) if v}


def evaluate_tutte(poly: dict[tuple[int, int], int], x, y):
    return sum(c * x**i * y**j for (i, j), c in poly.items())


def tutte_10(m: Matroid) -> int:
    return evaluate_tutte(tutte(m), 1, 0)


def tutte_10_recursive(m: Matroid) -> int:
    """t(1,0) by deletion-contraction; independent of :func:`tutte`."""
    if any(m.is_loop(i) for i in range(m.n)):
        return 0
    for i in range(m.n):
        if m.is_coloop(i):
            return tutte_10_recursive(m.contract(i))
    if m.n == 0:
        return 1
    return tutte_10_recursive(m.delete(0)) + tutte_10_recursive(m.contract(0))
