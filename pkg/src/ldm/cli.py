"""Command-line interface: ``ldm <command> ...``.

Every command prints one JSON report on stdout and diagnostics on stderr.
Exit status is 0 on success, 1 when a multinet fails verification and 2 on
usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions, fileformat
from .errors import LDMError
from .fields import parse_field
from .loops import DEFAULT_CLOSURE_CAP
from .multinet import (
    belonging_lines,
    classify,
    group_labeling_obstruction,
    length_spectrum,
    partial_latin_square,
    relabel_through_line,
    verify,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def closure_cap() -> int:
    raw = os.environ.get("LDM_CLOSURE_CAP")
    if not raw:
        return DEFAULT_CLOSURE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"LDM_CLOSURE_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError("LDM_CLOSURE_CAP must be positive")
    return cap


def _spectrum_json(m) -> dict:
    spectrum = length_spectrum(m)
    return {str(k): spectrum[k] for k in sorted(spectrum, reverse=True)}


def _load(path):
    try:
        return fileformat.read(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except LDMError as exc:
        raise UsageError(str(exc)) from exc


def _load_verified(path):
    m = _load(path)
    report = verify(m)
    if not report.ok:
        return m, {"ok": False, "verify": report.to_json()}
    return m, None


def cmd_construct(args) -> tuple[int, dict]:
    try:
        field = parse_field(args.field)
    except (ValueError, LDMError) as exc:
        raise UsageError(str(exc)) from exc
    kind = args.type
    needs_m = kind != "order18"
    if needs_m and args.m is None:
        raise UsageError(f"--m is required for --type {kind}")
    try:
        if kind == "triangle":
            m = constructions.build_triangle(args.m, field)
        elif kind == "conic-line":
            m = constructions.build_conic_line(args.m, args.k or 0, field)
        elif kind == "tetrahedron":
            m = constructions.build_tetrahedron(args.m, field, face=args.face, seed=args.seed)
        else:
            m = constructions.build_order18(field, labels=args.labels)
    except (LDMError, ValueError) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    if args.output:
        fileformat.write(m, args.output)
    report = {
        "ok": True,
        "order": m.order,
        "spectrum": _spectrum_json(m),
        "provenance": m.provenance,
    }
    if args.output:
        report["file"] = args.output
    return EXIT_OK, report


def cmd_verify(args):
    m = _load(args.file)
    report = verify(m).to_json()
    return (EXIT_OK if report["ok"] else EXIT_FAIL), report


def cmd_spectrum(args):
    m, failure = _load_verified(args.file)
    if failure:
        return EXIT_FAIL, failure
    lines = [
        {"index": i, "length": rec.length, "line": rec.line.to_json()}
        for i, rec in enumerate(belonging_lines(m))
        if rec.length > 1
    ]
    return EXIT_OK, {"ok": True, "lengths": _spectrum_json(m), "long_lines": lines}


def cmd_classify(args):
    m, failure = _load_verified(args.file)
    if failure:
        return EXIT_FAIL, failure
    return EXIT_OK, {"ok": True, **classify(m).to_json()}


def cmd_labelcheck(args):
    cap = closure_cap()
    m, failure = _load_verified(args.file)
    if failure:
        return EXIT_FAIL, failure
    try:
        verdict = group_labeling_obstruction(m, cap=cap)
    except LDMError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    return EXIT_OK, {"ok": True, **verdict.to_json()}


def cmd_latin(args):
    m, failure = _load_verified(args.file)
    if failure:
        return EXIT_FAIL, failure
    return EXIT_OK, {"ok": True, "square": partial_latin_square(m).to_json()}


def cmd_isotope(args):
    m, failure = _load_verified(args.file)
    if failure:
        return EXIT_FAIL, failure
    if m.labels is None:
        raise UsageError("the multinet has no label table")
    lines = belonging_lines(m)
    if not 0 <= args.line < len(lines):
        raise UsageError(f"--line must be in 0..{len(lines) - 1}")
    try:
        u, v = m.labels.index(args.u), m.labels.index(args.v)
    except ValueError:
        raise UsageError(f"unknown element name; names are {list(m.labels.names)}") from None
    try:
        out = relabel_through_line(m, lines[args.line], u, v)
    except LDMError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    fileformat.write(out, args.output)
    unit = out.labels.names[out.labels.unit]
    return EXIT_OK, {"ok": True, "file": args.output, "unit": unit}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ldm", description="Light dual multinets in PG(2).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build one of the explicit families")
    p.add_argument("--type", required=True, choices=["triangle", "conic-line", "tetrahedron", "order18"])
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--face", type=int, default=1, choices=[1, 2, 3, 4])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels", default="first-fit", choices=["first-fit", "none"], help="order18 only")
    p.add_argument("--field", required=True, help="prime:P or cyclotomic:N")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    for name, func, text in (
        ("verify", cmd_verify, "check injectivity, disjointness and collinearity"),
        ("spectrum", cmd_spectrum, "count belonging lines by length"),
        ("classify", cmd_classify, "decide the configuration type"),
        ("labelcheck", cmd_labelcheck, "look for the Lagrange obstruction to group labels"),
        ("latin", cmd_latin, "print the partial latin square (0 = undetermined)"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("isotope", help="relabel through a belonging line")
    p.add_argument("file")
    p.add_argument("--line", type=int, required=True, help="index into the sorted belonging lines")
    p.add_argument("--u", required=True, help="element name with alpha1(u) on the line")
    p.add_argument("--v", required=True, help="element name with alpha2(v) on the line")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_isotope)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, report = args.func(args)
    except UsageError as exc:
        print(f"ldm: {exc}", file=sys.stderr)
        print(json.dumps({"ok": False, "error": str(exc)}))
        return EXIT_USAGE
    if status == EXIT_FAIL:
        print("ldm: verification failed", file=sys.stderr)
    print(json.dumps(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
