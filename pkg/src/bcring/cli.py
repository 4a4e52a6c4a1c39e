"""Command-line front end; every command prints one JSON document on stdout.

Exit codes: 0 success / all checks pass, 1 some check failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from .exactla import RationalMatrix
from .groebner import hilbert_quotient, order_induced_by
from .matroid import Matroid, MatroidError, evaluate_tutte, from_matrix, tutte
from .nbc import GroundOrdering, f_vector, h_vector, nbc_complex
from .verify import RunConfig, check_strat, circuit_polynomials, run_all

log = logging.getLogger("bcring")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class InputSpec:
    name: str
    matrix: RationalMatrix
    ordering: GroundOrdering | None = None
    orders: str | None = None
    seed: int | None = None

    @classmethod
    def from_json(cls, data) -> "InputSpec":
        if not isinstance(data, dict):
            raise InputError("input must be a JSON object")
        if "matrix" not in data:
            raise InputError('input has no "matrix" field')
        try:
            matrix = RationalMatrix.from_json(data["matrix"])
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad matrix: {exc}") from None
        if matrix.ncols < 1:
            raise InputError("matrix must have at least one column")
        ordering = None
        if data.get("ordering") is not None:
            try:
                ordering = GroundOrdering(tuple(data["ordering"]))
            except (ValueError, TypeError) as exc:
                raise InputError(f"bad ordering: {exc}") from None
            if ordering.n != matrix.ncols:
                raise InputError("ordering length does not match the number of columns")
        seed = data.get("seed")
        if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool) or seed < 0):
            raise InputError("seed must be a non-negative integer")
        return cls(str(data.get("name", "")), matrix, ordering, data.get("orders"), seed)

    def matroid(self) -> Matroid:
        return from_matrix(self.matrix, self.name)


def read_input(path: str) -> InputSpec:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    return InputSpec.from_json(data)


def _ordering(args, spec: InputSpec, n: int) -> GroundOrdering:
    if getattr(args, "order", None):
        try:
            w = GroundOrdering.parse(args.order)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        w = spec.ordering or GroundOrdering.identity(n)
    if w.n != n:
        raise InputError(f"ordering has {w.n} elements, matroid has {n}")
    return w


def cmd_circuits(args, spec: InputSpec):
    m = spec.matroid()
    return [c.to_json() for c in m.circuits], EXIT_OK


def cmd_nbc(args, spec: InputSpec):
    m = spec.matroid()
    return nbc_complex(m, _ordering(args, spec, m.n)).to_json(), EXIT_OK


def cmd_hvector(args, spec: InputSpec):
    m = spec.matroid()
    cx = nbc_complex(m, _ordering(args, spec, m.n))
    return h_vector(f_vector(cx), m.d).to_json(), EXIT_OK


def cmd_tutte(args, spec: InputSpec):
    m = spec.matroid()
    poly = tutte(m)
    return {"t10": evaluate_tutte(poly, 1, 0), "tutte": [[i, j, c] for (i, j), c in poly.items()]}, EXIT_OK


def cmd_hilbert(args, spec: InputSpec):
    m = spec.matroid()
    w = _ordering(args, spec, m.n)
    series = hilbert_quotient(circuit_polynomials(m), order_induced_by(w), n=m.n)
    return series.to_json(), EXIT_OK


def cmd_stratify(args, spec: InputSpec):
    report = check_strat(spec.matroid())
    return report.to_json(), EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(args, spec: InputSpec):
    m = spec.matroid()
    seed = args.seed if args.seed is not None else (spec.seed or 0)
    if not 0 <= seed < 2**64:
        raise InputError("seed must be an unsigned 64-bit integer")
    config = RunConfig(
        orders=args.orders or spec.orders,
        seed=seed,
        jobs=args.jobs,
        timing=args.timing,
    )
    try:
        report = run_all(m, config)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for key, (passed, total) in report.summary().items():
        log.info("%-8s %d/%d", key, passed, total)
    return report.to_json(), EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {
    "circuits": (cmd_circuits, "circuits with normalized coefficient vectors"),
    "nbc": (cmd_nbc, "facets of the broken circuit complex"),
    "hvector": (cmd_hvector, "h-vector of the broken circuit complex"),
    "tutte": (cmd_tutte, "Tutte polynomial and t(1,0)"),
    "hilbert": (cmd_hilbert, "Hilbert series of the circuit-ideal quotient"),
    "stratify": (cmd_stratify, "flats versus circuit obstructions, all subsets"),
    "verify": (cmd_verify, "run every check and report"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bcring", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help='input JSON {"name": ..., "matrix": [[...]]}, or - for stdin')
        if name in ("nbc", "hvector", "hilbert"):
            p.add_argument("--order", help="ordering w as a permutation, e.g. 3,1,2 (w-smallest first)")
        if name == "verify":
            p.add_argument("--orders", help="all-lex | lex:k | weight:k (comma separated)")
            p.add_argument("--seed", type=int, help="seed for sampled orders (default 0)")
            p.add_argument("--jobs", type=int, default=1, help="worker processes for the order sweep")
            p.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    func, _ = COMMANDS[args.command]
    try:
        spec = read_input(args.file)
        out, code = func(args, spec)
    except (InputError, MatroidError) as exc:
        out, code = {"error": str(exc)}, EXIT_INPUT
    finally:
        log.removeHandler(handler)
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
