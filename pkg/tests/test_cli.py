import json
from pathlib import Path

import pytest

from bcring.cli import main
from bcring.matroid import CircuitVector
from bcring.nbc import HilbertSeries, HVector, SimplicialComplexByFacets

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out), out


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_circuits(capsys):
    code, data, _ = run(capsys, "circuits", DATA / "u23.json")
    assert code == 0
    assert data == [{"support": [1, 2, 3], "coeffs": ["1", "1", "-1"]}]
    assert CircuitVector.from_json(data[0]).support == (0, 1, 2)


def test_nbc_and_order_flag(capsys):
    code, data, _ = run(capsys, "nbc", DATA / "u24.json")
    assert code == 0 and data["facets"] == [[1, 2], [1, 3], [1, 4]]
    _, data, _ = run(capsys, "nbc", DATA / "u24.json", "--order", "4,3,2,1")
    assert data["facets"] == [[1, 4], [2, 4], [3, 4]]
    assert len(SimplicialComplexByFacets.from_json(data, 4).facets) == 3


def test_hvector(capsys):
    _, data, _ = run(capsys, "hvector", DATA / "k4.json")
    assert HVector.from_json(data).h == (1, 3, 2)
    _, data, _ = run(capsys, "hvector", DATA / "loop.json")
    assert all(x == 0 for x in data["h"])


def test_tutte(capsys):
    _, data, _ = run(capsys, "tutte", DATA / "k4.json")
    assert data["t10"] == 6
    poly = {(i, j): c for i, j, c in data["tutte"]}
    assert sum(poly.values()) == 16  # t(1,1) = number of bases of K4
    _, data, _ = run(capsys, "tutte", DATA / "loop.json")
    assert data["t10"] == 0


def test_hilbert(capsys):
    _, data, _ = run(capsys, "hilbert", DATA / "k4.json")
    assert HilbertSeries.from_json(data) == HilbertSeries((1, 3, 2), 3)


def test_stratify(capsys):
    code, data, _ = run(capsys, "stratify", DATA / "u23.json")
    assert code == 0 and data["ok"] and len(data["records"]) == 8


def test_verify_exit_zero(capsys):
    code, data, _ = run(capsys, "verify", DATA / "u23.json")
    assert code == 0 and data["status"] == "pass"
    assert data["orders"] == "all-lex"


def test_verify_options_and_determinism(capsys):
    argv = ["verify", DATA / "k4.json", "--orders", "weight:3", "--seed", "17"]
    _, data, first = run(capsys, *argv)
    _, _, second = run(capsys, *argv)
    assert first == second
    assert data["seed"] == 17
    assert sum(c["id"] == "degen" for c in data["checks"]) == 3


def test_verify_uses_input_fields(capsys, tmp_path):
    p = write(tmp_path, {"name": "x", "matrix": [["1", "0", "1"], ["0", "1", "1"]],
                         "orders": "lex:2", "seed": 4})
    _, data, _ = run(capsys, "verify", p)
    assert data["input"] == "x" and data["seed"] == 4 and data["orders"] == "lex:2"


def test_verify_timing_flag(capsys):
    _, data, _ = run(capsys, "verify", DATA / "parallel.json", "--timing")
    assert "timing" in data


def test_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO('{"matrix": [[1, 1]]}'))
    code, data, _ = run(capsys, "hvector", "-")
    assert code == 0 and data == {"d": 1, "h": [1]}


def test_ordering_from_input(capsys, tmp_path):
    p = write(tmp_path, {"matrix": [[1, 0, 1, 1], [0, 1, 1, 2]], "ordering": [4, 3, 2, 1]})
    _, data, _ = run(capsys, "nbc", p)
    assert data["facets"] == [[1, 4], [2, 4], [3, 4]]


@pytest.mark.parametrize("payload", [
    '{"matrix": [["1/0"]]}',
    '{"matrix": [[1, 2], [3]]}',
    '{"matrix": [[0.5]]}',
    '{"name": "no matrix"}',
    '{"matrix": []}',
    '{"matrix": [[1, 0]], "ordering": [1, 1]}',
    '{"matrix": [[1, 0]], "ordering": [1, 2, 3]}',
    '{"matrix": [[1, 0]], "seed": -1}',
    '[1, 2]',
    '{not json',
])
def test_input_errors(capsys, tmp_path, payload):
    code, data, _ = run(capsys, "verify", write(tmp_path, payload))
    assert code == 2 and "error" in data


def test_bad_order_flag(capsys):
    code, data, _ = run(capsys, "nbc", DATA / "u23.json", "--order", "1,2")
    assert code == 2 and "error" in data
    code, data, _ = run(capsys, "verify", DATA / "u23.json", "--orders", "bogus:1")
    assert code == 2
    code, data, _ = run(capsys, "verify", DATA / "u23.json", "--seed", str(2**64))
    assert code == 2


def test_missing_file(capsys, tmp_path):
    code, data, _ = run(capsys, "circuits", tmp_path / "nope.json")
    assert code == 2 and "cannot read" in data["error"]


def test_failing_check_exits_one(capsys, monkeypatch):
    import bcring.cli as cli
    from bcring.verify import StrataReport

    monkeypatch.setattr(cli, "check_strat", lambda m: StrataReport([{"status": "fail"}]))
    code, data, _ = run(capsys, "stratify", DATA / "u23.json")
    assert code == 1 and data["ok"] is False


def test_verbose_logs_to_stderr(capsys):
    main(["-v", "verify", str(DATA / "u23.json")])
    captured = capsys.readouterr()
    json.loads(captured.out)
    assert "degen" in captured.err
