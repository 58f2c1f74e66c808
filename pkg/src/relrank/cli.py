"""Command-line front end.

Exit codes: 0 pass, 1 semantic violation, 2 parse error, 3 unknown label,
4 precondition failure.
"""

from __future__ import annotations

import argparse
import sys

from . import fincof
from .enumeration import MAX_ENUMERATE, canonical_form, converse_fuzz, enumerate_matroids
from .formats import MatroidSpec, SpecError, format_table, load, parse_set
from .matroid import AxiomError, check_independence_axioms
from .sets import GroundSetMismatch, GroundSetTooLarge, UnknownLabel
from .table import (
    AXIOMS,
    RelRankTable,
    check_axioms,
    duality_violation,
    reconstruct,
    redundancy_report,
    table_from_matroid,
)

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_LABEL, EXIT_PRECONDITION = range(5)


class Precondition(Exception):
    pass


class Output:
    """Collects ``(key, value)`` records and renders them as text or key=value."""

    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: list[str] = []

    def record(self, key: str, value, text: str | None = None):
        if self.machine:
            self.lines.append(f"{key}={value}")
        else:
            self.lines.append(text if text is not None else f"{key}: {value}")

    def write(self, stream=None):
        stream = stream or sys.stdout
        for line in self.lines:
            stream.write(line + "\n")


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _load_matroid_spec(path) -> MatroidSpec:
    spec = load(path)
    if not isinstance(spec, MatroidSpec):
        raise SpecError(f"{path} is a table, a matroid spec was expected")
    return spec


def _build(spec: MatroidSpec):
    try:
        return spec.build()
    except AxiomError as exc:
        raise Precondition(f"{spec.name or 'spec'} is not a matroid: {exc}") from None


def _subset(E, text: str | None) -> int:
    return E.full if text is None else parse_set(E, text)


def cmd_rank(args, out: Output) -> int:
    M = _build(_load_matroid_spec(args.spec))
    X = _subset(M.ground, args.X)
    I = M.max_independent_extension(0, X)
    out.record("rank", I.bit_count(), str(I.bit_count()))
    out.record("witness", M.ground.format(I))
    return EXIT_OK


def cmd_relrank(args, out: Output) -> int:
    M = _build(_load_matroid_spec(args.spec))
    A, B = parse_set(M.ground, args.A), parse_set(M.ground, args.B)
    if B & ~A:
        raise Precondition(f"{M.ground.format(B)} is not a subset of {M.ground.format(A)}")
    I, J = M.relative_rank_witness(A, B)
    value = (I & ~J).bit_count()
    out.record("relrank", value, str(value))
    out.record("I", M.ground.format(I))
    out.record("J", M.ground.format(J))
    return EXIT_OK


def _report_table(t: RelRankTable, out: Output) -> bool:
    report = check_axioms(t)
    for a in AXIOMS:
        c = report.counts[a]
        out.record(a, "ok" if c == 0 else f"fail:{c}", f"{a}: ok" if c == 0 else f"{a}: {c} violations")
    for v in report.all_violations():
        out.record("violation", v.describe(t.ground), v.describe(t.ground))
    return report.passed


def cmd_check(args, out: Output) -> int:
    spec = load(args.file)
    if isinstance(spec, MatroidSpec):
        if spec.kind == "explicit":
            ireport = check_independence_axioms(spec.ground, spec.family)
            out.record("independence", "ok" if ireport.passed else "failed",
                       "independence axioms: " + ("ok" if ireport.passed else "failed"))
            for line in ireport.lines():
                out.record("violation", line, line)
            if not ireport.passed:
                return EXIT_VIOLATION
        else:
            out.record("independence", "ok", "independence axioms: ok")
        M = spec.build()
        if M.n > 12:
            raise Precondition("relative-rank tables are limited to 12 elements")
        return EXIT_OK if _report_table(table_from_matroid(M), out) else EXIT_VIOLATION
    ok = _report_table(spec, out)
    red = redundancy_report(spec)
    out.record("redundancy", f"r1_r3={_yn(red.r1_to_r3)},finite={_yn(red.finite)},"
               f"r4={_yn(red.r4)},r5={_yn(red.r5)},contradiction={_yn(red.contradiction)}",
               f"redundancy: R1-R3 {'hold' if red.r1_to_r3 else 'fail'}, "
               f"finite {_yn(red.finite)}, R4 {_yn(red.r4)}, R5 {_yn(red.r5)}"
               + (", CONTRADICTION" if red.contradiction else ""))
    return EXIT_OK if ok and not red.contradiction else EXIT_VIOLATION


def _load_table(path) -> RelRankTable:
    spec = load(path)
    if isinstance(spec, MatroidSpec):
        raise SpecError(f"{path} is a matroid spec, a table was expected")
    return spec


def cmd_roundtrip(args, out: Output) -> int:
    t = _load_table(args.table)
    rec = reconstruct(t)
    E = t.ground
    if rec.matroid is None:
        table = "n/a"
    elif rec.mismatch is None:
        table = "match"
    else:
        A, B = rec.mismatch
        table = f"mismatch at ({E.format(A)},{E.format(B)})"
    axioms = "ok" if rec.family_report.passed else "failed"
    if out.machine:
        out.record("independents", len(rec.family))
        out.record("axioms", axioms)
        out.record("table", table)
    else:
        out.lines.append(f"independents={len(rec.family)}, axioms={axioms}, table={table}")
    for line in rec.family_report.lines():
        out.record("violation", line, line)
    return EXIT_OK if rec.roundtrip_ok else EXIT_VIOLATION


def cmd_dualcheck(args, out: Output) -> int:
    M = _build(_load_matroid_spec(args.spec1))
    M2 = _build(_load_matroid_spec(args.spec2))
    if M.ground != M2.ground:
        raise Precondition("the two matroids have different ground sets")
    M.ground.require_exhaustive()
    bad = duality_violation(M, M2)
    if bad is None:
        out.record("dual", "yes", "dual: yes")
        return EXIT_OK
    A, B, lhs, size = bad
    f = M.ground.format
    out.record("dual", "no", "dual: no")
    out.record("first_violation", f"A={f(A)},B={f(B)},sum={lhs},size={size}",
               f"first violation: A={f(A)}, B={f(B)}: r_M(A|B) + r_M2(E-B|E-A) = {lhs} != |A-B| = {size}")
    return EXIT_VIOLATION


def cmd_counterexample(args, out: Output) -> int:
    A, B, v1, v2 = fincof.distinguishing_witness()
    kinds = (fincof.FREE_Z, fincof.ALMOST_FREE_Z)
    rows = [(f"rank({S})", [fincof.sym_rank(k, S) for k in kinds]) for S in (A, B)]
    rows.append((f"relrank({A}|{B})", [v1, v2]))
    for what, values in rows:
        if out.machine:
            for k, v in zip(kinds, values):
                out.record(f"{what}.{k}", v)
        else:
            out.lines.append(f"{what}: " + " ".join(f"{k}={v}" for k, v in zip(kinds, values)))
    for k in kinds:
        member = fincof.sym_r_independent(k, A, probes=range(-8, 9))
        out.record(f"z_r_independent.{k}", _yn(member), f"Z r-independent in {k}: {_yn(member)}")
    return EXIT_OK


def cmd_enumerate(args, out: Output) -> int:
    if not 0 <= args.n <= MAX_ENUMERATE:
        raise Precondition(f"enumeration is limited to 0 <= n <= {MAX_ENUMERATE}")
    classes = []
    for n in range(args.n + 1):
        labelled = list(enumerate_matroids(n))
        k = len({canonical_form(M) for M in labelled})
        classes.append(k)
        out.record(f"n{n}", f"labeled={len(labelled)},classes={k}", f"n={n} labeled={len(labelled)} classes={k}")
    out.record("classes", " ".join(map(str, classes)))
    return EXIT_OK


def cmd_table(args, out: Output) -> int:
    M = _build(_load_matroid_spec(args.spec))
    if M.n > 12:
        raise Precondition("relative-rank tables are limited to 12 elements")
    out.lines.extend(format_table(table_from_matroid(M)).splitlines())
    return EXIT_OK


def cmd_fuzz(args, out: Output) -> int:
    if not 0 <= args.n <= 4:
        raise Precondition("converse fuzzing is limited to 0 <= n <= 4")
    report = converse_fuzz(args.n, args.trials, seed=args.seed)
    for key, value in report.records():
        out.record(key, value)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relrank", description="Relative-rank matroid toolkit.")
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", parents=[common], help="rank of a subset with a greedy witness")
    p.add_argument("spec")
    p.add_argument("X", nargs="?", help="subset such as {a,b}; defaults to the whole ground set")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("relrank", parents=[common], help="relative rank r(A|B) with witnesses")
    p.add_argument("spec")
    p.add_argument("A")
    p.add_argument("B")
    p.set_defaults(func=cmd_relrank)

    p = sub.add_parser("check", parents=[common], help="check a matroid spec or a table")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("roundtrip", parents=[common], help="table -> independents -> matroid -> table")
    p.add_argument("table")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("dualcheck", parents=[common], help="test the duality identity")
    p.add_argument("spec1")
    p.add_argument("spec2")
    p.set_defaults(func=cmd_dualcheck)

    p = sub.add_parser("counterexample", parents=[common], help="ranks agree, relative ranks differ")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("enumerate", parents=[common], help="count matroids on 0..n elements")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("table", parents=[common], help="print the relative-rank table of a matroid spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("fuzz", parents=[common], help="mutate tables and test the round trip")
    p.add_argument("n", type=int)
    p.add_argument("trials", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format == "machine")
    try:
        code = args.func(args, out)
    except SpecError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnknownLabel as exc:
        print(f"unknown label: {exc.args[0]}", file=sys.stderr)
        return EXIT_LABEL
    except (Precondition, GroundSetMismatch, GroundSetTooLarge) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    out.write()
    return code


if __name__ == "__main__":
    sys.exit(main())
