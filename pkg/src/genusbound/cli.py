"""Command-line front end.

    genusbound compute --algebra '{"form": {"tag": "odd", "n": 1}}' --class 3,-1
    genusbound table   --algebra alg.json --grid 4 --format markdown

Exit codes: 0 success, 1 input error, 2 precondition violation,
3 verification failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from .adjunction import default_bound, h_bruteforce
from .algebra import CLOSED_CASES, EXTENDED_CASES, AlgebraDescriptor, CaseTag
from .closedform import HSign, c_zero, h_closed, h_lower_bound, sign_class
from .lattice import LatticeError, grid_classes, norm
from .reduction import reduce
from .sphere import sphere_check

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_MAX_GRID = 12
COMMANDS = ("compute", "reduce", "sphere", "verify", "table")
FORMATS = ("text", "json", "csv", "markdown")


class InputError(Exception):
    """Malformed command-line input (exit code 1)."""


class PreconditionError(Exception):
    """Well-formed input outside an operation's domain (exit code 2)."""


@dataclass
class JobSpec:
    algebra: AlgebraDescriptor
    command: str
    class_input: Optional[tuple[int, ...]] = None
    grid: Optional[int] = None
    bound: Optional[int] = None
    output_format: str = "text"
    trace: bool = False


@dataclass
class Report:
    """What a command produced: a JSON payload plus a flat row view of it."""
    payload: dict[str, Any]
    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    exit_code: int = EXIT_OK
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# parsing


def parse_algebra(text: str) -> AlgebraDescriptor:
    """Inline JSON if it looks like an object, otherwise a path to a JSON file."""
    src = text.strip()
    if not src.startswith("{"):
        try:
            src = Path(text).read_text()
        except OSError as exc:
            raise InputError(f"cannot read algebra file {text!r}: {exc}") from exc
    try:
        data = json.loads(src)
    except json.JSONDecodeError as exc:
        raise InputError(f"algebra is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("algebra JSON must be an object")
    try:
        return AlgebraDescriptor.from_json(data)
    except (LatticeError, TypeError) as exc:
        raise InputError(f"invalid algebra: {exc}") from exc


def parse_class(text: str, alg: AlgebraDescriptor) -> tuple[int, ...]:
    parts = [p.strip() for p in text.replace("[", "").replace("]", "").split(",")]
    try:
        A = tuple(int(p) for p in parts if p)
    except ValueError as exc:
        raise InputError(f"class coefficients must be integers: {text!r}") from exc
    if len(A) != alg.form.rank:
        raise InputError(f"class has {len(A)} coefficients, {alg.form} has rank {alg.form.rank} "
                         f"(basis {', '.join(alg.form.basis_labels())})")
    return A


def max_grid() -> int:
    raw = os.environ.get("GENUSBOUND_MAX_GRID", str(DEFAULT_MAX_GRID))
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"GENUSBOUND_MAX_GRID must be an integer, got {raw!r}") from exc


# ---------------------------------------------------------------------------
# commands


def _fmt_class(A: Optional[Sequence[int]]) -> Optional[str]:
    return None if A is None else ",".join(str(v) for v in A)


def _require_class(spec: JobSpec, allow_zero: bool = True) -> tuple[int, ...]:
    if spec.class_input is None:
        raise InputError(f"{spec.command} needs --class")
    A = spec.class_input
    if norm(spec.algebra.form, A) < 0:
        raise PreconditionError(f"A.A = {norm(spec.algebra.form, A)} < 0; only classes with A.A >= 0 are handled")
    if not allow_zero and not any(A):
        raise PreconditionError("the zero class is not handled by this command")
    return A


def _row_report(payload: dict[str, Any], columns: list[str]) -> Report:
    row = {k: (_fmt_class(v) if isinstance(v, list) else v) for k, v in payload.items()}
    return Report(payload, columns, [row])


def run_compute(spec: JobSpec) -> Report:
    alg = spec.algebra
    A = _require_class(spec)
    case = alg.case
    out: dict[str, Any] = {"class": list(A), "case": str(case), "reduced": None, "c0": None}
    if case in CLOSED_CASES:
        out["reduced"] = list(reduce(alg, A).output)
        out["c0"] = list(c_zero(alg))
        out["h"], out["h_kind"] = h_closed(alg, A), "closed-form"
    elif case in EXTENDED_CASES:
        out["reduced"] = list(reduce(alg, A).output)
        out["c0"] = list(c_zero(alg))
        out["h"], out["h_kind"] = h_lower_bound(alg, A), "lower-bound"
    else:
        bound = spec.bound if spec.bound is not None else default_bound(A)
        found = h_bruteforce(alg, A, bound)
        if found is None:
            raise PreconditionError(f"no adjunction class in the box of radius {bound}")
        out["h"], out["h_kind"] = found.value, "oracle"
        out["bound"] = bound
    return _row_report(out, ["class", "case", "reduced", "c0", "h", "h_kind"])


def run_reduce(spec: JobSpec) -> Report:
    alg = spec.algebra
    A = _require_class(spec)
    if alg.case is CaseTag.Unsupported:
        raise PreconditionError(f"no reduction is defined for {alg.form} with tilde_b1={alg.tilde_b1}")
    tr = reduce(alg, A)
    out: dict[str, Any] = {"class": list(A), "case": str(alg.case), "reduced": list(tr.output),
                           "moves": len(tr.moves)}
    if spec.trace:
        out["trace"] = tr.to_json()
    row = {"class": _fmt_class(A), "case": str(alg.case), "reduced": _fmt_class(tr.output),
           "moves": len(tr.moves)}
    return Report(out, ["class", "case", "reduced", "moves"], [row])


def run_sphere(spec: JobSpec) -> Report:
    alg = spec.algebra
    A = _require_class(spec, allow_zero=False)
    v = sphere_check(alg, A)
    out = {"class": list(A), "case": str(alg.case), **v.to_json()}
    return _row_report(out, ["class", "case", "status", "pattern", "reason", "reduced", "h", "h_kind"])


def _check_grid(spec: JobSpec) -> tuple[int, list[str]]:
    if spec.grid is None:
        raise InputError(f"{spec.command} needs --grid")
    grid = spec.grid
    if grid < 0:
        raise InputError(f"--grid must be >= 0, got {grid}")
    cap = max_grid()
    if grid > cap:
        raise InputError(f"--grid {grid} exceeds GENUSBOUND_MAX_GRID={cap}")
    notes = []
    if grid > DEFAULT_MAX_GRID:
        notes.append(f"warning: grid {grid} > {DEFAULT_MAX_GRID} may take a long time")
    points = (2 * grid + 1) ** spec.algebra.form.rank
    if points > 10 ** 9:
        raise InputError(f"--grid {grid} on a rank-{spec.algebra.form.rank} form means {points} classes; "
                         "choose a smaller grid")
    return grid, notes


TABLE_COLUMNS = ["class", "reduced", "h", "h_kind", "sign", "sphere"]


def run_table(spec: JobSpec) -> Report:
    alg = spec.algebra
    grid, notes = _check_grid(spec)
    case = alg.case
    rows = []
    for A in grid_classes(alg.form, grid, up_to_sign=True):
        row: dict[str, Any] = {"class": list(A), "reduced": None, "h": None, "h_kind": None,
                               "sign": None, "sphere": None}
        if case in CLOSED_CASES:
            row["reduced"] = list(reduce(alg, A).output)
            row["h"], row["h_kind"] = h_closed(alg, A), "closed-form"
            row["sign"] = str(sign_class(alg, A))
        elif case in EXTENDED_CASES:
            row["reduced"] = list(reduce(alg, A).output)
            row["h"], row["h_kind"] = h_lower_bound(alg, A), "lower-bound"
            row["sign"] = str(HSign.of(row["h"]))
        row["sphere"] = sphere_check(alg, A).short() if any(A) else "n/a"
        rows.append(row)
    flat = [{k: (_fmt_class(v) if isinstance(v, list) else v) for k, v in r.items()} for r in rows]
    payload = {"algebra": alg.to_json(), "grid": grid, "rows": rows}
    return Report(payload, TABLE_COLUMNS, flat, notes=notes)


def run_verify(spec: JobSpec) -> Report:
    alg = spec.algebra
    grid, notes = _check_grid(spec)
    if alg.case not in CLOSED_CASES:
        raise PreconditionError(f"{alg.case} has no closed form to verify")
    checked = 0
    failures = []
    for A in grid_classes(alg.form, grid, up_to_sign=True):
        bound = spec.bound if spec.bound is not None else default_bound(A)
        expected = h_closed(alg, A)
        found = h_bruteforce(alg, A, bound)
        got = None if found is None else found.value
        checked += 1
        if got != expected:
            failures.append({"class": list(A), "h_closed": expected, "h_oracle": got,
                             "witness": None if found is None else list(found.witness)})
    payload = {"algebra": alg.to_json(), "case": str(alg.case), "grid": grid, "bound": spec.bound,
               "checked": checked, "failed": len(failures), "passed": not failures,
               "failures": failures}
    rows = [{"class": _fmt_class(f["class"]), "h_closed": f["h_closed"], "h_oracle": f["h_oracle"]}
            for f in failures]
    notes.append(f"{checked} classes checked, {len(failures)} failed")
    return Report(payload, ["class", "h_closed", "h_oracle"], rows,
                  EXIT_OK if not failures else EXIT_VERIFY, notes)


RUNNERS = {"compute": run_compute, "reduce": run_reduce, "sphere": run_sphere,
           "verify": run_verify, "table": run_table}


# ---------------------------------------------------------------------------
# output


def _cell(v: Any) -> str:
    return "" if v is None else str(v)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.payload, indent=2)
    cols = report.columns
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in report.rows:
            w.writerow({c: _cell(r.get(c)) for c in cols})
        return buf.getvalue().rstrip("\n")
    if fmt == "markdown":
        lines = ["| " + " | ".join(cols) + " |", "|" + "|".join("---" for _ in cols) + "|"]
        lines += ["| " + " | ".join(_cell(r.get(c)) for c in cols) + " |" for r in report.rows]
        return "\n".join(lines)
    # text: a single record prints as key/value pairs, several as aligned columns
    if len(report.rows) == 1 and "rows" not in report.payload:
        r = report.rows[0]
        width = max(len(k) for k in r)
        lines = [f"{k.ljust(width)}  {_cell(v)}" for k, v in r.items()]
        if "trace" in report.payload:
            lines += ["trace:"] + [f"  {json.dumps(m)}" for m in report.payload["trace"]["moves"]]
        return "\n".join(lines + report.notes)
    widths = {c: max([len(c)] + [len(_cell(r.get(c))) for r in report.rows]) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
    lines += ["  ".join(_cell(r.get(c)).ljust(widths[c]) for c in cols).rstrip() for r in report.rows]
    return "\n".join(lines + report.notes)


# ---------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2; usage errors are input errors here
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="genusbound", description="Adjunction lower bounds for the minimal genus on b+=1 algebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--algebra", required=True, help="algebra JSON, inline or as a file path")
    p.add_argument("--class", dest="cls", help='coefficients in basis order, e.g. "3,-1"')
    p.add_argument("--grid", type=int, help="coefficient ceiling for table/verify")
    p.add_argument("--bound", type=int, help="box radius for the brute-force oracle")
    p.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
    p.add_argument("--trace", action="store_true", help="include the move list (reduce)")
    p.add_argument("--basis", action="store_true", help="print the basis order of the form and exit")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        alg = parse_algebra(args.algebra)
        if args.basis:
            labels = alg.form.basis_labels()
            print(json.dumps({"form": str(alg.form), "basis": labels}) if args.fmt == "json"
                  else ", ".join(labels))
            return EXIT_OK
        spec = JobSpec(alg, args.command,
                       None if args.cls is None else parse_class(args.cls, alg),
                       args.grid, args.bound, args.fmt, args.trace)
        if spec.bound is not None and spec.bound < 1:
            raise InputError("--bound must be positive")
        report = RUNNERS[spec.command](spec)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, LatticeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(render(report, spec.output_format))
    if spec.output_format != "text":
        for note in report.notes:
            print(note, file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
