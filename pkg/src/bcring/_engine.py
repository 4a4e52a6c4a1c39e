"""Packed-monomial reduction kernel behind normal_form and buchberger.

Each exponent vector is packed into one int, FIELD bits per variable with
y_1 in the lowest field.  Monomial multiplication is integer addition and
divisibility is a single guard-bit test.  Coefficients are gmpy2.mpq.
Order keys are cached per order; they are flat tuples of ints, so negating
every component gives a min-heap key.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from gmpy2 import mpq

FIELD = 24
_VALUE_BITS = FIELD - 1
_MASK = (1 << _VALUE_BITS) - 1


class PackedRing:
    def __init__(self, n: int, key_fn):
        self.n = n
        self.key_fn = key_fn
        self.guard = sum(1 << (FIELD * i + _VALUE_BITS) for i in range(n))
        self._neg_keys: dict[int, tuple] = {}

    def pack(self, e) -> int:
        out = 0
        for i, x in enumerate(e):
            if x > _MASK:
                raise OverflowError("exponent too large for packed monomials")
            out |= x << (FIELD * i)
        return out

    def unpack(self, p: int) -> tuple[int, ...]:
        return tuple((p >> (FIELD * i)) & _MASK for i in range(self.n))

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def neg_key(self, p: int) -> tuple:
        k = self._neg_keys.get(p)
        if k is None:
            k = tuple(-x for x in self.key_fn(self.unpack(p)))
            self._neg_keys[p] = k
        return k

    def lcm(self, a: int, b: int) -> int:
        out = 0
        for i in range(self.n):
            s = FIELD * i
            out |= max((a >> s) & _MASK, (b >> s) & _MASK) << s
        return out

    def coprime(self, a: int, b: int) -> bool:
        for i in range(self.n):
            s = FIELD * i
            if (a >> s) & _MASK and (b >> s) & _MASK:
                return False
        return True

    # polynomials are dicts {packed: mpq}

    def from_terms(self, terms: dict) -> dict[int, mpq]:
        return {self.pack(e): mpq(c.numerator, c.denominator) for e, c in terms.items()}

    def to_terms(self, poly: dict[int, mpq]) -> dict:
        return {self.unpack(p): Fraction(int(c.numerator), int(c.denominator)) for p, c in poly.items()}

    def lead(self, poly: dict[int, mpq]) -> int:
        nk = self.neg_key
        return min(poly, key=nk)

    def monic(self, poly: dict[int, mpq]) -> dict[int, mpq]:
        c = poly[self.lead(poly)]
        return {p: v / c for p, v in poly.items()}

    def spoly(self, f: dict, fl: int, g: dict, gl: int) -> dict[int, mpq]:
        m = self.lcm(fl, gl)
        sf, sg = m - fl, m - gl
        cf, cg = f[fl], g[gl]
        out = {p + sf: v / cf for p, v in f.items()}
        for p, v in g.items():
            t = p + sg
            x = out.get(t, 0) - v / cg
            if x:
                out[t] = x
            else:
                out.pop(t, None)
        return out

    def reduce(
        self,
        poly: dict[int, mpq],
        basis: list[tuple[int, mpq, dict]],
        divisor_cache: dict | None = None,
    ) -> dict[int, mpq]:
        """Full remainder of ``poly`` on division by basis entries (lead, lead coeff, poly).

        The first basis element whose leading monomial divides the current
        term is used, matching the Fraction reference implementation.
        ``divisor_cache`` may be shared between calls on the same basis list
        as long as that list is only ever appended to.
        """
        nk = self.neg_key
        g = self.guard
        cache = {} if divisor_cache is None else divisor_cache
        nbasis = len(basis)
        work = dict(poly)
        heap = [(nk(p), p) for p in work]
        heapq.heapify(heap)
        rem: dict[int, mpq] = {}
        while heap:
            _, p = heapq.heappop(heap)
            c = work.get(p)
            if c is None:
                continue
            hit = cache.get(p)
            if hit is None or (hit[0] < 0 and hit[1] < nbasis):
                k = -1
                for idx in range(0 if hit is None else hit[1], nbasis):
                    if ((p | g) - basis[idx][0]) & g == g:
                        k = idx
                        break
                cache[p] = (k, nbasis)
            else:
                k = hit[0]
            if k < 0:
                rem[p] = c
                del work[p]
                continue
            lm, lc, bp = basis[k]
            shift = p - lm
            f = c / lc
            for q, v in bp.items():
                t = q + shift
                old = work.get(t)
                if old is None:
                    work[t] = -f * v
                    heapq.heappush(heap, (nk(t), t))
                else:
                    x = old - f * v
                    if x:
                        work[t] = x
                    else:
                        del work[t]
            # the leading term cancels exactly
            work.pop(p, None)
        return rem
