"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`, which already keeps values in lowest
terms with a positive denominator.  Matrices are immutable row-major tuples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def parse_rational(s) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` (or an int) into a Fraction.

    Floats are refused: the whole package is exact.
    """
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"not an exact rational: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"not a rational string: {s!r}")
    text = s.strip()
    num, sep, den = text.partition("/")
    try:
        p = int(num, 10)
        q = int(den, 10) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational string: {s!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator: {s!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    """Immutable d x n matrix of Fractions.

    ``ncols`` is stored explicitly so that 0 x n matrices (the zero subspace)
    keep their width.
    """

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(parse_rational(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self, cols: Sequence[int]) -> "RationalMatrix":
        cols = list(cols)
        return RationalMatrix([[r[j] for j in cols] for r in self.rows], len(cols))

    def select_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([self.rows[i] for i in idx], self.ncols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[r[j] for r in self.rows] for j in range(self.ncols)], self.nrows
        )

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product m @ v."""
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix must be a nonempty list of lists")
        return cls(data)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        return f"RationalMatrix({self.to_json()!r}, ncols={self.ncols})"


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place Gauss-Jordan; pivot = first nonzero entry in column order."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and pivot columns (0-based).

    Zero rows are kept at the bottom so the shape is unchanged.
    """
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(rows, m.ncols)
    return RationalMatrix(rows, m.ncols), pivots


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of {a : m a = 0}, each vector scaled so its first nonzero entry is 1."""
    red, pivots = rref(m)
    n = m.ncols
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, pc in zip(red.rows, pivots):
            v[pc] = -row[free]
        lead = next(x for x in v if x != 0)
        basis.append(tuple(x / lead for x in v))
    return basis


def rank_of_columns(m: RationalMatrix, cols: Iterable[int]) -> int:
    cols = sorted(set(cols))
    if not cols or m.nrows == 0:
        return 0
    rows = [[r[j] for j in cols] for r in m.rows]
    return len(_rref_rows(rows, len(cols)))


def row_basis(m: RationalMatrix) -> RationalMatrix:
    """Greedy maximal independent subset of the rows, original order kept."""
    keep: list[int] = []
    current = 0
    for i in range(m.nrows):
        r = rank(m.select_rows(keep + [i]))
        if r > current:
            keep.append(i)
            current = r
    return m.select_rows(keep)
