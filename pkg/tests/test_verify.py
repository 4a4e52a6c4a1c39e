import itertools
import json

import pytest

from bcring.fixtures import fixture
from bcring.groebner import order_induced_by
from bcring.nbc import GroundOrdering, MonomialIdeal, sr_ideal
from bcring.verify import (
    ALL_LEX_MAX_N,
    FAIL,
    PASS,
    OrderJob,
    RunConfig,
    check_degen,
    check_dimdeg,
    check_lsop_and_free,
    check_strat,
    parse_order_spec,
    run_all,
)

from .conftest import SMALL_FIXTURES

W = GroundOrdering


def all_lex(n):
    return parse_order_spec("all-lex", n, 0)


def test_degen_u23_all_orders(u23):
    records = check_degen(u23, all_lex(3))
    assert len(records) == 6
    assert all(r["status"] == PASS for r in records)


def test_degen_detects_wrong_sr(u24):
    def perturbed(m, w):
        ideal = sr_ideal(m, w)
        return MonomialIdeal(m.n, ideal.gens[1:])

    records = check_degen(u24, all_lex(4)[:2], sr=perturbed)
    assert all(r["status"] == FAIL for r in records)
    assert records[0]["witness"]["reason"].startswith("initial ideal")


def test_degen_weight_orders(k4):
    records = check_degen(k4, parse_order_spec("weight:5", 6, 1))
    assert [r["status"] for r in records] == [PASS] * 5
    assert records[0]["order"]["kind"] == "weight"


@pytest.mark.parametrize("name", SMALL_FIXTURES)
def test_dimdeg_fixtures(name):
    m = fixture(name)
    records = check_dimdeg(m, W.identity(m.n))
    assert records and all(r["status"] == PASS for r in records), records


def test_dimdeg_loop_is_empty_scheme(loop):
    ids = {r["id"] for r in check_dimdeg(loop, W.identity(2))}
    assert {"dimdeg.ring.empty", "dimdeg.sr.empty", "dimdeg.ring.degree"} <= ids
    assert "dimdeg.ring.dimension" not in ids


def test_dimdeg_has_recurrence_records(k4):
    ids = [r["id"] for r in check_dimdeg(k4, W.identity(6))]
    assert sum(i.startswith("dimdeg.tutte_additive") for i in ids) == 6
    assert sum(i.startswith("dimdeg.degree_additive") for i in ids) == 6


@pytest.mark.parametrize("name", ["u23", "boolean3", "k4", "mixed", "parallel", "loop"])
def test_lsop_and_free(name):
    m = fixture(name)
    records = check_lsop_and_free(m, W.identity(m.n))
    assert {r["id"] for r in records} == {
        "lsop.quotient", "lsop.factorization", "free.quotient", "free.factorization"}
    assert all(r["status"] == PASS for r in records), records


def test_strat_u23(u23):
    report = check_strat(u23)
    assert report.ok and len(report.records) == 8
    by_i = {tuple(r["I"]): r for r in report.records}
    assert by_i[(1, 2)]["is_flat"] is False
    assert by_i[(1, 2)]["circuit_obstruction"] == [1, 2, 3]
    assert by_i[(1, 2, 3)]["is_flat"] and by_i[(1, 2, 3)]["predicted_nonempty"]
    assert by_i[()]["is_flat"] and by_i[()]["circuit_obstruction"] is None


def test_strat_subset_selection(k4):
    report = check_strat(k4, [[0, 1, 3], [0, 1]])
    assert [r["is_flat"] for r in report.records] == [True, False]
    assert report.ok


def test_strat_refuses_huge():
    from bcring.matroid import from_matrix
    m = from_matrix([[1] * 17])
    with pytest.raises(ValueError):
        check_strat(m)


@pytest.mark.parametrize("name", SMALL_FIXTURES)
def test_run_all_fixtures(name):
    report = run_all(fixture(name))
    assert report.ok, report.failures()[:3]
    summary = report.summary()
    assert {"degen", "dimdeg", "lsop", "free", "nbc", "strat"} <= set(summary)
    for passed, total in summary.values():
        assert passed == total > 0


def test_run_all_byte_identical(k4):
    cfg = RunConfig(orders="lex:3,weight:3", seed=9)
    a = json.dumps(run_all(k4, cfg).to_json(), sort_keys=True)
    b = json.dumps(run_all(fixture("k4"), cfg).to_json(), sort_keys=True)
    assert a == b
    assert "timing" not in json.loads(a)


def test_run_all_timing_opt_in(u23):
    data = run_all(u23, RunConfig(timing=True)).to_json()
    assert set(data["timing"]) == {"degen", "dimdeg", "lsop_free", "nbc", "strat"}


def test_run_all_parallel_matches_serial(u24):
    cfg = RunConfig(orders="all-lex,weight:2", seed=3)
    serial = run_all(u24, cfg).to_json()
    parallel = run_all(u24, RunConfig(orders="all-lex,weight:2", seed=3, jobs=2)).to_json()
    assert serial == parallel


def test_parse_order_spec_grammar():
    jobs = parse_order_spec("lex:2, weight:3", 4, 5)
    assert len(jobs) == 5
    assert [j.order.kind for j in jobs] == ["lex", "lex", "weight", "weight", "weight"]
    assert jobs[0].ordering is not None and jobs[2].ordering is None
    assert jobs[0].order == order_induced_by(jobs[0].ordering)
    assert parse_order_spec("lex:2, weight:3", 4, 5) == jobs
    assert parse_order_spec("lex:2, weight:3", 4, 6) != jobs
    assert len({j.ordering for j in parse_order_spec("lex:24", 4, 0)}) == 24
    assert len(parse_order_spec("lex:100", 3, 0)) == 6


@pytest.mark.parametrize("spec", ["lex", "grevlex:2", "weight:x", "lex:-1"])
def test_parse_order_spec_errors(spec):
    with pytest.raises(ValueError):
        parse_order_spec(spec, 3, 0)


def test_all_lex_limit():
    assert len(parse_order_spec("all-lex", 4, 0)) == 24
    with pytest.raises(ValueError):
        parse_order_spec("all-lex", ALL_LEX_MAX_N + 1, 0)


def test_default_order_spec():
    cfg = RunConfig()
    assert cfg.order_spec(5) == "all-lex"
    assert cfg.order_spec(7) == "lex:6,weight:4"
    assert RunConfig(orders="weight:1").order_spec(3) == "weight:1"


def test_order_job_json():
    w = W((2, 1, 3))
    job = OrderJob(order_induced_by(w), w)
    assert job.to_json() == {"order": {"kind": "lex", "precedence": [3, 1, 2]}, "ordering": [2, 1, 3]}
