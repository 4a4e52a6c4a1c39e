from fractions import Fraction

import pytest
from hypothesis import given, settings

from bcring.exactla import RationalMatrix
from bcring.fixtures import MATRICES, fixture
from bcring.matroid import (
    CircuitVector,
    MatroidError,
    from_matrix,
    load_matroid,
    tutte,
    tutte_10,
    tutte_10_recursive,
)

from .conftest import SMALL_FIXTURES, matrices
from .oracles import brute_circuits, brute_flats, brute_t10

F = Fraction


def sets1(*groups):
    """1-based labels to 0-based frozensets."""
    return [frozenset(i - 1 for i in g) for g in groups]


def test_from_matrix_u23(u23):
    assert (u23.n, u23.d) == (3, 2)
    assert u23.rank({0, 1, 2}) == 2
    assert all(u23.rank(s) == 2 for s in [{0, 1}, {0, 2}, {1, 2}])


def test_from_matrix_identity_is_boolean():
    m = from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert m.circuits == ()
    assert m.d == 3


def test_from_matrix_drops_dependent_rows():
    m = from_matrix([[1, 1], [2, 2]])
    assert m.rep == RationalMatrix([[1, 1]])
    assert m.d == 1
    assert [c.support for c in m.circuits] == [(0, 1)]


def test_from_matrix_rejects_no_columns():
    with pytest.raises(MatroidError):
        from_matrix(RationalMatrix([[]], 0))


def test_circuits_u23(u23):
    (c,) = u23.circuits
    assert c.support == (0, 1, 2)
    assert c.coeffs == (F(1), F(1), F(-1))
    assert c.to_json() == {"support": [1, 2, 3], "coeffs": ["1", "1", "-1"]}


def test_circuits_loop(loop):
    (c,) = loop.circuits
    assert c.support == (1,)
    assert c.coeffs == (F(1),)


def test_circuits_k4(k4):
    sizes = sorted(len(c.support) for c in k4.circuits)
    assert sizes == [3, 3, 3, 3, 4, 4, 4]
    assert [frozenset(c.support) for c in k4.circuits] == brute_circuits(MATRICES["k4"])


def test_circuit_json_roundtrip(k4):
    for c in k4.circuits:
        assert CircuitVector.from_json(c.to_json()) == c


def test_flats_u23(u23):
    assert u23.flats() == sets1((), (1,), (2,), (3,), (1, 2, 3))
    assert not u23.is_flat({0, 1})
    assert u23.closure({0, 1}) == frozenset({0, 1, 2})


def test_flats_boolean2():
    m = from_matrix([[1, 0], [0, 1]])
    assert set(m.flats()) == set(sets1((), (1,), (2,), (1, 2)))


def test_flats_with_loop_contain_loop(loop):
    assert all(1 in f for f in loop.flats())


def test_loops_and_coloops(u23, loop):
    assert loop.is_loop(1) and not loop.is_loop(0)
    boolean = from_matrix([[1, 0], [0, 1]])
    assert boolean.is_coloop(0) and boolean.is_coloop(1)
    assert not any(u23.is_loop(i) or u23.is_coloop(i) for i in range(3))


def test_delete_contract_u23(u23):
    d = u23.delete(2)
    assert d.n == 2 and d.d == 2 and d.circuits == ()
    assert d.labels == (1, 2)
    c = u23.contract(2)
    assert c.n == 2 and c.d == 1
    assert [x.support for x in c.circuits] == [(0, 1)]
    assert c.labels == (1, 2)


def test_delete_boolean():
    m = from_matrix([[1, 0], [0, 1]]).delete(0)
    assert (m.n, m.d, m.labels) == (1, 1, (2,))


def test_contract_loop_refused(loop):
    with pytest.raises(MatroidError):
        loop.contract(1)


def test_localization_examples(u23):
    single = u23.localization({0})
    assert (single.n, single.d) == (1, 1)
    whole = u23.localization({0, 1, 2})
    assert whole.circuits == u23.circuits


def test_complement_restriction_u23(u23):
    m = u23.complement_restriction({2})
    assert m.rep == RationalMatrix([[1, -1]])
    assert m.labels == (1, 2)


def test_localization_requires_flat(u23):
    with pytest.raises(MatroidError):
        u23.localization({0, 1})
    with pytest.raises(MatroidError):
        u23.complement_restriction({0, 1})


def test_tutte_u23(u23):
    assert tutte(u23) == {(2, 0): 1, (1, 0): 1, (0, 1): 1}
    assert tutte_10(u23) == 2


def test_tutte_k4(k4):
    assert tutte(k4) == {
        (3, 0): 1, (2, 0): 3, (1, 0): 2, (1, 1): 4,
        (0, 1): 2, (0, 2): 3, (0, 3): 1,
    }
    assert tutte_10(k4) == 6


def test_tutte_loop_is_zero(loop):
    assert tutte_10(loop) == 0


def test_tutte_guard():
    m = from_matrix([[1] * 21])
    with pytest.raises(MatroidError):
        tutte(m)


@pytest.mark.parametrize("name", SMALL_FIXTURES)
def test_fixture_against_oracles(name):
    m = fixture(name)
    rows = MATRICES[name]
    assert [frozenset(c.support) for c in m.circuits] == brute_circuits(rows)
    assert set(m.flats()) == set(brute_flats(rows))
    assert tutte_10(m) == brute_t10(rows) == tutte_10_recursive(m)


def test_load_matroid():
    m = load_matroid('{"name": "x", "matrix": [["1", "1/2"]]}')
    assert m.name == "x"
    assert m.rep.rows == ((F(1), F(1, 2)),)
    with pytest.raises(MatroidError):
        load_matroid('{"rows": []}')


def _check_circuit_axioms(m):
    supports = [frozenset(c.support) for c in m.circuits]
    for a in supports:
        assert len(a) <= m.d + 1
        for b in supports:
            assert not a < b
    for a in supports:
        for b in supports:
            if a == b:
                continue
            for e in a & b:
                assert any(c <= (a | b) - {e} for c in supports)
    for c in m.circuits:
        assert all(x != 0 for x in c.coeffs)
        assert c.coeffs[0] == 1
        for row in m.rep.rows:
            assert sum(a * row[j] for j, a in zip(c.support, c.coeffs)) == 0
        for drop in c.support:
            assert m.is_independent(set(c.support) - {drop})


@pytest.mark.parametrize("name", SMALL_FIXTURES)
def test_circuit_axioms_fixtures(name):
    _check_circuit_axioms(fixture(name))


@settings(max_examples=60, deadline=None)
@given(matrices(max_d=3, max_n=7))
def test_circuit_axioms_random(rows):
    m = from_matrix(rows)
    _check_circuit_axioms(m)
    assert [frozenset(c.support) for c in m.circuits] == brute_circuits(rows)


@settings(max_examples=60, deadline=None)
@given(matrices(max_d=3, max_n=6))
def test_tutte_deletion_contraction(rows):
    m = from_matrix(rows)
    t = tutte_10(m)
    assert t >= 0
    assert t == tutte_10_recursive(m) == brute_t10(rows)
    for i in range(m.n):
        if m.is_loop(i):
            assert t == 0
        elif m.is_coloop(i):
            assert t == tutte_10(m.contract(i))
        else:
            assert t == tutte_10(m.delete(i)) + tutte_10(m.contract(i))


@settings(max_examples=40, deadline=None)
@given(matrices(max_d=3, max_n=6))
def test_localization_circuits(rows):
    m = from_matrix(rows)
    for flat in m.flats():
        loc = m.localization(flat)
        cols = sorted(flat)
        got = sorted((tuple(cols[k] for k in c.support), c.coeffs) for c in loc.circuits)
        want = sorted((c.support, c.coeffs) for c in m.circuits if set(c.support) <= flat)
        assert got == want


@settings(max_examples=40, deadline=None)
@given(matrices(max_d=3, max_n=6))
def test_complement_restriction_subspace(rows):
    m = from_matrix(rows)
    for flat in m.flats():
        r = m.complement_restriction(flat)
        # dimension drops by rank(I)
        assert r.d == m.d - m.rank(flat)
        assert r.n == m.n - len(flat)
