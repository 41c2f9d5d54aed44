"""Command-line front end.

Every command reads one JSON cone document (``-`` for stdin) except
``verify`` with ``--count`` and ``gen-random``, which make their own cones.
Exit status: 0 on success, 1 on a computation error or failed check,
2 on unreadable input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence, TextIO

from . import oracle
from . import serialize as ser
from .cone import (
    Cone,
    Fan,
    GeneratorSet,
    dual_cone,
    face_lattice,
    semigroup_generators,
    triangulate,
)
from .errors import InputError, ToricError
from .genfun import closed_sum, genfun_equal, interior_sum
from .hirzebruch import chi_y, laurent_expand, local_class, open_orbit_class, todd_specialize

FORMAT_ENV = "TORICGF_FORMAT"

COMMANDS = ("dual", "faces", "hilbert", "triangulate", "closed-sum", "interior-sum", "local-class",
            "open-orbit", "chi-y", "laurent", "verify", "gen-random")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    default_format = os.environ.get(FORMAT_ENV, "text")
    if default_format not in ("text", "json"):
        default_format = "text"
    common.add_argument("--format", choices=("text", "json"), default=default_format)
    common.add_argument("--truncate", type=int, default=12, metavar="D", help="oracle grading bound")
    common.add_argument("--order", type=int, default=4, metavar="N", help="Laurent truncation order")
    common.add_argument("--triangulation-order", type=_int_list, default=None, metavar="I,J,...",
                        help="ray order for the placing triangulation")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dim", type=int, default=3, help="rank of random cones")
    common.add_argument("--count", type=int, default=None, help="number of random cones")
    common.add_argument("--kind", choices=("closed", "interior"), default="closed",
                        help="which cone sum 'laurent' expands when given a cone")

    parser = argparse.ArgumentParser(prog="toricgf", description="Generating functions of rational cones.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        nargs = "?" if name in ("verify", "gen-random") else None
        p.add_argument("input", nargs=nargs, help="JSON document, '-' for stdin")
    return parser


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_input(path: str, stdin: TextIO):
    if path == "-":
        return ser.load_json(stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return ser.load_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _generators(doc: ser.ConeDocument, c: Cone, order) -> GeneratorSet:
    if doc.generators is None:
        return semigroup_generators(c, order)
    extra = [g for g in doc.generators if g not in c.rays]
    return GeneratorSet(c, list(c.rays) + list(dict.fromkeys(extra)))


def _emit(out: TextIO, fmt: str, text: str, obj) -> None:
    if fmt == "json":
        out.write(ser.dumps(obj) + "\n")
    else:
        out.write(text + "\n")


def _verify_cone(c: Cone, bound: int, order) -> list[oracle.Report]:
    reps = []
    sums = [interior_sum(c, order=order), closed_sum(c, order=order)]
    for s in sums:
        reps.append(oracle.check_sum(c, s, bound))
        reps.append(oracle.Report(f"{s.kind}-certificate identity {[list(r) for r in c.rays]}", s.verify(), 1))
    reps.append(oracle.check_euler(triangulate(c, order)))
    if c.is_full_dimensional:
        # c plays the dual cone: sigma = c^dual has c as its dual
        sigma = dual_cone(c)
        _, oo = open_orbit_class(sigma)
        neg = oo.certificate.negative_terms()
        reps.append(oracle.Report(f"open-orbit positivity {[list(r) for r in sigma.rays]}", not neg,
                                  len(oo.certificate.terms),
                                  f"coefficient {neg[0][1]} at {list(neg[0][0])}" if neg else ""))
        todd = genfun_equal(todd_specialize(local_class(sigma)), sums[1].value)
        reps.append(oracle.Report(f"todd specialization {[list(r) for r in sigma.rays]}", todd, 1))
    return reps


def _dispatch(args, stdin: TextIO, out: TextIO) -> int:
    fmt = args.format
    cmd = args.command
    order = args.triangulation_order

    if cmd == "gen-random":
        rng = random.Random(args.seed)
        cones = [oracle.random_cone(rng, args.dim) for _ in range(args.count or 1)]
        docs = [ser.cone_json(c) for c in cones]
        text = "\n".join(json.dumps(d) for d in docs)
        _emit(out, fmt, text, docs)
        return 0

    if cmd == "verify" and args.input is None:
        rng = random.Random(args.seed)
        cones = [oracle.random_cone(rng, args.dim) for _ in range(args.count or 20)]
        reports = [r for c in cones for r in _verify_cone(c, args.truncate, None)]
        return _report(out, fmt, reports)

    if args.input is None:
        raise InputError(f"{cmd} needs an input document")
    doc = ser.parse_document(_read_input(args.input, stdin))

    if cmd == "chi-y":
        if doc.fan is None:
            raise InputError("chi-y needs a 'fan' field")
        fan = Fan.from_maximal(doc.rank, doc.rays, doc.fan)
        p = chi_y(fan)
        _emit(out, fmt, p.text(), ser.chi_y_json(p))
        return 0

    c = doc.cone()
    if order is not None and sorted(order) != list(range(len(c.rays))):
        raise InputError(f"--triangulation-order must be a permutation of 0..{len(c.rays) - 1}")

    if cmd == "dual":
        d = dual_cone(c)
        _emit(out, fmt, "\n".join(ser.vector_text(r) for r in d.rays), ser.cone_json(d))
    elif cmd == "faces":
        fl = face_lattice(c)
        lines = [f"dim {d}: {sorted(s)}" for s, d in zip(fl.index_sets, fl.dims)]
        _emit(out, fmt, "\n".join(lines), ser.faces_json(fl))
    elif cmd == "hilbert":
        g = _generators(doc, c, order)
        _emit(out, fmt, "\n".join(ser.vector_text(v) for v in g.generators), ser.generators_json(g))
    elif cmd == "triangulate":
        t = triangulate(c, order)
        _emit(out, fmt, "\n".join(str(sorted(x)) for x in t.maximal_cells), ser.triangulation_json(t))
    elif cmd in ("closed-sum", "interior-sum"):
        fn = closed_sum if cmd == "closed-sum" else interior_sum
        s = fn(c, _generators(doc, c, order), order)
        _emit(out, fmt, ser.certified_text(s), ser.certified_json(s))
    elif cmd == "local-class":
        h = local_class(c)
        _emit(out, fmt, ser.local_class_text(h), ser.local_class_json(h))
    elif cmd == "open-orbit":
        power, s = open_orbit_class(c)
        text = ser.open_orbit_text(power, s)
        obj = {"type": "open-orbit", "delta_power": power, "sum": ser.certified_json(s)}
        _emit(out, fmt, text, obj)
    elif cmd == "laurent":
        fn = closed_sum if args.kind == "closed" else interior_sum
        e = laurent_expand(fn(c, order=order).value, args.order)
        _emit(out, fmt, ser.laurent_text(e), ser.laurent_json(e))
    elif cmd == "verify":
        return _report(out, fmt, _verify_cone(c, args.truncate, order))
    return 0


def _report(out: TextIO, fmt: str, reports: Sequence[oracle.Report]) -> int:
    failed = [r for r in reports if not r.passed]
    summary = f"{len(reports) - len(failed)}/{len(reports)} checks passed"
    if fmt == "json":
        obj = {"type": "report", "passed": not failed, "summary": summary,
               "checks": [{"name": r.name, "passed": r.passed, "checked": r.checked, "detail": r.detail}
                          for r in reports]}
        out.write(ser.dumps(obj) + "\n")
    else:
        out.write("\n".join([r.line() for r in reports] + [summary]) + "\n")
    return 1 if failed else 0


def run(argv: Sequence[str] | None = None, stdin: TextIO | None = None,
        stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args, stdin, stdout)
    except InputError as exc:
        stderr.write(f"toricgf: input error: {exc}\n")
        return 2
    except (ToricError, ValueError) as exc:
        stderr.write(f"toricgf: {type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
