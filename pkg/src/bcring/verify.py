"""Machine checks of the structural theorems on a concrete matroid.

Every check returns plain-dict records ``{"id", ..., "status"}``; a failing
record carries a ``witness`` with the concrete order, pair or subset that
broke.  Output is a deterministic function of (matrix, seed, config).
"""

from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .groebner import (
    Polynomial,
    TermOrder,
    buchberger,
    circuit_polynomial,
    failing_spairs,
    grevlex,
    hilbert_quotient,
    initial_ideal,
    leading_monomial_ideal,
    order_induced_by,
    random_weight_order,
)
from .matroid import Matroid, from_matrix, tutte_10
from .nbc import (
    GroundOrdering,
    HilbertSeries,
    InvariantViolation,
    MonomialIdeal,
    f_vector,
    h_vector,
    hilbert_monomial,
    nbc_complex,
    sr_ideal,
)

ALL_LEX_MAX_N = 8
STRAT_MAX_N = 16

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class OrderJob:
    order: TermOrder
    ordering: GroundOrdering | None = None

    def to_json(self) -> dict:
        out = {"order": self.order.to_json()}
        if self.ordering is not None:
            out["ordering"] = self.ordering.to_json()
        return out


def parse_order_spec(spec: str, n: int, seed: int) -> list[OrderJob]:
    """Expand "all-lex", "lex:k", "weight:k" (comma separated) into jobs.

    A single RNG seeded with ``seed`` is consumed item by item, so the same
    spec and seed always give the same orders.
    """
    rng = random.Random(seed)
    jobs: list[OrderJob] = []
    for item in (s.strip() for s in spec.split(",")):
        if not item:
            continue
        if item == "all-lex":
            if n > ALL_LEX_MAX_N:
                raise ValueError(f"all-lex refused for n = {n} > {ALL_LEX_MAX_N}")
            for perm in itertools.permutations(range(1, n + 1)):
                w = GroundOrdering(perm)
                jobs.append(OrderJob(order_induced_by(w), w))
            continue
        kind, sep, count = item.partition(":")
        if not sep or kind not in ("lex", "weight"):
            raise ValueError(f"bad order spec item {item!r}")
        k = int(count)
        if k < 0:
            raise ValueError(f"negative count in {item!r}")
        if kind == "lex":
            for w in _sample_orderings(n, k, rng):
                jobs.append(OrderJob(order_induced_by(w), w))
        else:
            for _ in range(k):
                jobs.append(OrderJob(random_weight_order(n, rng)))
    return jobs


def _sample_orderings(n: int, k: int, rng: random.Random) -> list[GroundOrdering]:
    if n <= 8 and k >= math.factorial(n):
        return [GroundOrdering(p) for p in itertools.permutations(range(1, n + 1))]
    seen: list[tuple[int, ...]] = []
    while len(seen) < k:
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        if tuple(perm) not in seen:
            seen.append(tuple(perm))
    return [GroundOrdering(p) for p in seen]


def circuit_polynomials(m: Matroid) -> list[Polynomial]:
    return [circuit_polynomial(c, m.n) for c in m.circuits]


def theta_forms(m: Matroid) -> list[Polynomial]:
    """The d linear forms sum_i rep[k][i] y_i, one per row of the representation."""
    return [Polynomial.linear_form(row) for row in m.rep.rows]


def _mono_json(e) -> list[int]:
    return list(e)


def _ideal_diff(a: MonomialIdeal, b: MonomialIdeal) -> dict:
    return {
        "only_in_initial": [_mono_json(g) for g in a.gens if g not in b.gens],
        "only_in_sr": [_mono_json(g) for g in b.gens if g not in a.gens],
    }


def _h_series(m: Matroid, w: GroundOrdering) -> tuple[tuple[int, ...], int]:
    f = f_vector(nbc_complex(m, w))
    return h_vector(f, m.d).h, m.d


def check_degen(
    m: Matroid,
    jobs: Sequence[OrderJob],
    *,
    sr: Callable[[Matroid, GroundOrdering], MonomialIdeal] = sr_ideal,
    full_buchberger: bool = True,
) -> list[dict]:
    """Universal Groebner basis and initial ideal = Stanley-Reisner ideal, one record per order.

    (a) every S-pair of {f_C} reduces to zero; (b) for induced orders the
    initial ideal equals ``sr(m, w)``; (c) for every order the leading
    monomials of the f_C give the Hilbert series h(z)/(1-z)^d.
    """
    fs = circuit_polynomials(m)
    h, d = _h_series(m, GroundOrdering.identity(m.n))
    expected = HilbertSeries(h, d)
    records = []
    for job in jobs:
        records.append(_degen_one(m, fs, job, sr, expected, full_buchberger))
    return records


def _degen_one(m, fs, job: OrderJob, sr, expected: HilbertSeries, full_buchberger: bool) -> dict:
    order, w = job.order, job.ordering
    rec = {"id": "degen", **job.to_json()}
    bad = failing_spairs(fs, order)
    if bad:
        i, j, r = bad[0]
        rec.update(status=FAIL, witness={
            "reason": "S-pair does not reduce to zero",
            "pair": [
                [c + 1 for c in m.circuits[i].support],
                [c + 1 for c in m.circuits[j].support],
            ],
            "remainder": r.to_json(),
        })
        return rec
    lead_ideal = leading_monomial_ideal(fs, order, m.n)
    if w is not None:
        for c, f in zip(m.circuits, fs):
            if c.support == (c.support[0],):
                continue
            lm = f.leading_monomial(order)
            c0 = w.minimal(c.support)
            want = tuple(int(k in c.support and k != c0) for k in range(m.n))
            if lm != want:
                rec.update(status=FAIL, witness={
                    "reason": "leading monomial of f_C is not the broken circuit",
                    "circuit": [k + 1 for k in c.support],
                    "leading": list(lm),
                })
                return rec
        gb_ideal = initial_ideal(buchberger(fs, order, n=m.n)) if full_buchberger else lead_ideal
        target = sr(m, w)
        if gb_ideal != target:
            rec.update(status=FAIL, witness={
                "reason": "initial ideal differs from the Stanley-Reisner ideal",
                **_ideal_diff(gb_ideal, target),
            })
            return rec
    series = hilbert_monomial(lead_ideal)
    if series != expected:
        rec.update(status=FAIL, witness={
            "reason": "Hilbert series of leading-monomial ideal differs from h(z)/(1-z)^d",
            "got": series.to_json(),
            "expected": expected.to_json(),
        })
        return rec
    rec["status"] = PASS
    return rec


def check_dimdeg(m: Matroid, w: GroundOrdering, *, degree_additivity: bool = True) -> list[dict]:
    """Dimension d and degree t(1,0) for the circuit-ideal quotient and the
    Stanley-Reisner ring, plus deletion-contraction."""
    t10 = tutte_10(m)
    order = order_induced_by(w)
    has_loop = bool(m.loops())
    records = []

    def record(name, ok, **data):
        rec = {"id": f"dimdeg.{name}", "ordering": w.to_json(), "status": PASS if ok else FAIL}
        if not ok:
            rec["witness"] = data
        records.append(rec)

    hs = hilbert_quotient(circuit_polynomials(m), order, n=m.n)
    sr_hs = hilbert_monomial(sr_ideal(m, w))
    facets = nbc_complex(m, w).facets
    for label, series in (("ring", hs), ("sr", sr_hs)):
        if has_loop:
            record(f"{label}.empty", series.degree() == 0 and not series.numerator,
                   series=series.to_json())
        else:
            record(f"{label}.dimension", series.dimension() == m.d,
                   series=series.to_json(), d=m.d)
        record(f"{label}.degree", series.degree() == t10, series=series.to_json(), t10=t10)
    record("facets", len(facets) == t10, facets=len(facets), t10=t10)

    for i in range(m.n):
        if m.is_loop(i):
            continue
        if m.is_coloop(i):
            t_c = tutte_10(m.contract(i))
            record(f"coloop.{i + 1}", t_c == t10, element=i + 1, t10=t10, t_contract=t_c)
            continue
        dm, cm = m.delete(i), m.contract(i)
        t_d, t_c = tutte_10(dm), tutte_10(cm)
        record(f"tutte_additive.{i + 1}", t10 == t_d + t_c,
               element=i + 1, t10=t10, t_delete=t_d, t_contract=t_c)
        if degree_additivity:
            deg = [
                hilbert_quotient(
                    circuit_polynomials(mm), order_induced_by(w.restrict(mm.labels)), n=mm.n
                ).degree()
                for mm in (dm, cm)
            ]
            record(f"degree_additive.{i + 1}", hs.degree() == deg[0] + deg[1],
                   element=i + 1, degree=hs.degree(), degree_delete=deg[0], degree_contract=deg[1])
    return records


def check_lsop_and_free(m: Matroid, w: GroundOrdering) -> list[dict]:
    """Row forms as a linear system of parameters for the Stanley-Reisner ring
    and for the circuit-ideal quotient."""
    h, d = _h_series(m, w)
    h_poly = HilbertSeries(h, 0)
    full = HilbertSeries(h, d)
    # Hilbert series do not depend on the order; lex with generic linear
    # forms is needlessly expensive
    order = grevlex(m.n)
    theta = theta_forms(m)
    sr_gens = [Polynomial(m.n, {g: 1}) for g in sr_ideal(m, w).gens]
    fs = circuit_polynomials(m)
    results = [
        ("lsop.quotient", hilbert_quotient(sr_gens + theta, order, n=m.n), h_poly),
        ("lsop.factorization", hilbert_monomial(sr_ideal(m, w)), full),
        ("free.quotient", hilbert_quotient(fs + theta, order, n=m.n), h_poly),
        ("free.factorization", hilbert_quotient(fs, order, n=m.n), full),
    ]
    records = []
    for name, got, want in results:
        rec = {"id": name, "ordering": w.to_json(), "status": PASS if got == want else FAIL}
        if got != want:
            rec["witness"] = {"got": got.to_json(), "expected": want.to_json()}
        records.append(rec)
    return records


@dataclass
class StrataReport:
    records: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["status"] == PASS for r in self.records)

    def failures(self) -> list[dict]:
        return [r for r in self.records if r["status"] != PASS]

    def to_json(self) -> dict:
        return {"ok": self.ok, "records": self.records}


def check_strat(m: Matroid, subsets: Sequence[Sequence[int]] | None = None) -> StrataReport:
    """Flats versus circuit obstructions, and circuits of each localization.

    ``subsets`` are 0-based; by default every subset of the ground set.
    """
    if subsets is None:
        if m.n > STRAT_MAX_N:
            raise ValueError(f"exhaustive strata check refused for n = {m.n} > {STRAT_MAX_N}")
        subsets = [
            [j for j in range(m.n) if mask >> j & 1] for mask in range(1 << m.n)
        ]
    report = StrataReport()
    supports = [frozenset(c.support) for c in m.circuits]
    for sub in subsets:
        s = frozenset(sub)
        flat = m.is_flat(s)
        obstruction = next((c for c in supports if len(c - s) == 1), None)
        predicted = obstruction is None
        rec = {
            "I": sorted(j + 1 for j in s),
            "is_flat": flat,
            "predicted_nonempty": predicted,
            "circuit_obstruction": None if obstruction is None else sorted(j + 1 for j in obstruction),
        }
        ok = flat == predicted
        if ok and flat:
            loc = m.localization(s)
            cols = sorted(s)
            got = sorted(
                (tuple(cols[k] for k in c.support), c.coeffs) for c in loc.circuits
            )
            want = sorted((c.support, c.coeffs) for c in m.circuits if frozenset(c.support) <= s)
            if got != want:
                ok = False
                rec["witness"] = {
                    "localization_circuits": [[k + 1 for k in sup] for sup, _ in got],
                    "supported_circuits": [[k + 1 for k in sup] for sup, _ in want],
                }
        rec["status"] = PASS if ok else FAIL
        report.records.append(rec)
    return report


def check_nbc(m: Matroid, orderings: Sequence[GroundOrdering]) -> list[dict]:
    """Purity, f-vector independence of w, facet count, cone property, SR Hilbert series."""
    t10 = tutte_10(m)
    loop_free = not m.loops()
    records = []
    ref_f = None
    for w in orderings:
        rec = {"id": "nbc", "ordering": w.to_json()}
        problems = []
        cx = nbc_complex(m, w)
        f = f_vector(cx)
        if ref_f is None:
            ref_f = f
        elif f != ref_f:
            problems.append({"reason": "f-vector depends on ordering", "f": f, "reference": ref_f})
        if loop_free and not all(len(facet) == m.d for facet in cx.facets):
            problems.append({"reason": "not pure of dimension d - 1",
                             "facet_sizes": sorted({len(x) for x in cx.facets})})
        if len(cx.facets) != t10 and not (cx.empty and t10 == 0):
            problems.append({"reason": "facet count differs from t(1,0)",
                             "facets": len(cx.facets), "t10": t10})
        if loop_free and m.n:
            e = w.perm[0] - 1
            if not all(e in facet for facet in cx.facets):
                problems.append({"reason": "w-minimal element missing from a facet", "element": e + 1})
        try:
            h = h_vector(f, m.d)
        except InvariantViolation as exc:
            problems.append({"reason": str(exc)})
        else:
            series = hilbert_monomial(sr_ideal(m, w))
            if series != HilbertSeries(h.h, m.d):
                problems.append({"reason": "SR Hilbert series differs from h(z)/(1-z)^d",
                                 "got": series.to_json(), "h": list(h.h)})
        rec["status"] = FAIL if problems else PASS
        if problems:
            rec["witness"] = problems
        records.append(rec)
    return records


@dataclass
class RunConfig:
    """Settings for :func:`run_all`.

    ``orders=None`` picks "all-lex" for n <= 5 and "lex:6,weight:4" otherwise.
    Orderings for the nbc sweep are all n! of them for n <= ``sweep_max_n``.
    """

    orders: str | None = None
    seed: int = 0
    jobs: int = 1
    sweep_max_n: int = 6
    degree_additivity: bool = True
    timing: bool = False

    def order_spec(self, n: int) -> str:
        if self.orders is not None:
            return self.orders
        return "all-lex" if n <= 5 else "lex:6,weight:4"


@dataclass
class VerificationReport:
    input: str
    seed: int
    orders: str
    checks: list[dict]
    timing: dict | None = None

    @property
    def ok(self) -> bool:
        return all(c["status"] == PASS for c in self.checks)

    def failures(self) -> list[dict]:
        return [c for c in self.checks if c["status"] != PASS]

    def summary(self) -> dict[str, list[int]]:
        """{check id prefix: [passed, total]}."""
        out: dict[str, list[int]] = {}
        for c in self.checks:
            key = c["id"].split(".")[0]
            tally = out.setdefault(key, [0, 0])
            tally[0] += c["status"] == PASS
            tally[1] += 1
        return out

    def to_json(self) -> dict:
        out = {
            "input": self.input,
            "seed": self.seed,
            "orders": self.orders,
            "status": PASS if self.ok else FAIL,
            "summary": self.summary(),
            "checks": self.checks,
        }
        if self.timing is not None:
            out["timing"] = self.timing
        return out


def _degen_worker(args) -> dict:
    matrix, order_json, ordering = args
    m = from_matrix(matrix)
    job = OrderJob(TermOrder.from_json(order_json), None if ordering is None else GroundOrdering(ordering))
    return check_degen(m, [job])[0]


def run_all(m: Matroid, config: RunConfig | None = None) -> VerificationReport:
    config = config or RunConfig()
    spec = config.order_spec(m.n)
    jobs = parse_order_spec(spec, m.n, config.seed)
    timing: dict[str, float] = {}
    checks: list[dict] = []

    t0 = time.perf_counter()
    if config.jobs > 1 and len(jobs) > 1:
        args = [
            (m.rep.to_json(), j.order.to_json(), None if j.ordering is None else j.ordering.perm)
            for j in jobs
        ]
        with ProcessPoolExecutor(config.jobs) as pool:
            checks += list(pool.map(_degen_worker, args))
    else:
        checks += check_degen(m, jobs)
    timing["degen"] = time.perf_counter() - t0

    identity = GroundOrdering.identity(m.n)
    t0 = time.perf_counter()
    checks += check_dimdeg(m, identity, degree_additivity=config.degree_additivity)
    timing["dimdeg"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    checks += check_lsop_and_free(m, identity)
    timing["lsop_free"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if m.n <= config.sweep_max_n:
        orderings = [GroundOrdering(p) for p in itertools.permutations(range(1, m.n + 1))]
    else:
        orderings = [identity] + [j.ordering for j in jobs if j.ordering is not None]
    checks += check_nbc(m, orderings)
    timing["nbc"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if m.n <= STRAT_MAX_N:
        strat = check_strat(m)
        for rec in strat.records:
            checks.append({"id": "strat", **rec})
    timing["strat"] = time.perf_counter() - t0

    return VerificationReport(
        input=m.name,
        seed=config.seed,
        orders=spec,
        checks=checks,
        timing={k: round(v, 6) for k, v in timing.items()} if config.timing else None,
    )
