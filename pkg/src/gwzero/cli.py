"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (validation, WDVV),
2 missing inputs (seeds, table coverage), 3 I/O or parse errors.
"""
from __future__ import annotations

import argparse
import re
import sys
from math import ceil

from .bundled import resolve_target
from .correlators import (UnknownCorrelator, audit_selection, format_key, read_table,
                          table_to_csv, table_to_json)
from .quantum import (QuantumElement, build_potential, potential_to_json, quantum_mul,
                      wdvv_check)
from .reconstruct import (MissingSeeds, ReconstructionError, explain, reconstruct_all,
                          reconstructor_for)
from .target import (Cutoff, TargetError, TargetParseError, format_rational, parse_rational,
                     validate_target)

EXIT_OK, EXIT_MATH, EXIT_MISSING, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, path, out):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def _cutoff(args, t, default_n=3, table=None) -> Cutoff:
    max_c1 = args.max_c1
    max_n = args.max_n
    if table is not None and table.cutoff is not None:
        max_c1 = table.cutoff.max_c1 if max_c1 is None else max_c1
        max_n = table.cutoff.max_n if max_n is None else max_n
    if max_c1 is None:
        max_c1 = t.dim + 1
    if max_n is None:
        max_n = default_n
    return Cutoff(max_c1, max_n)


def _inferred_cutoff(t, table) -> Cutoff:
    # largest cell present in the table; an empty table means the classical part only
    if table.cutoff is not None:
        return table.cutoff
    max_c1, max_n = 0, 3
    for beta, classes in table:
        max_c1 = max(max_c1, t.c1_degree(beta))
        max_n = max(max_n, len(classes))
    return Cutoff(max_c1, max_n)


def parse_key(t, text: str):
    """``"BETA:CLASSES"``, e.g. ``3:H2,H2,H2`` or ``1;0:pt^3``; returns ``(beta, classes)``."""
    if ":" not in text:
        raise UsageError("key %r: expected BETA:CLASSES" % text)
    b, c = text.split(":", 1)
    try:
        beta = tuple(int(x) for x in re.split(r"[;,()\s]+", b) if x)
    except ValueError:
        raise UsageError("key %r: bad curve class" % text) from None
    if len(beta) != t.lattice.rank:
        raise UsageError("key %r: curve class needs %d entries" % (text, t.lattice.rank))
    classes = []
    for sym in (s for s in c.split(",") if s.strip()):
        base, _, power = sym.partition("^")
        try:
            k = t.class_index(base)
            classes += [k] * (int(power) if power else 1)
        except (KeyError, ValueError):
            raise UsageError("unknown basis symbol %r" % sym) from None
    return beta, tuple(classes)


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args, out):
    t = resolve_target(args.target)
    rep = validate_target(t)
    for line in rep.lines():
        out.write(line + "\n")
    out.write("%s: %s\n" % (t.name, "ok" if rep.ok else "invalid"))
    return EXIT_OK if rep.ok else EXIT_MATH


def cmd_reconstruct(args, out):
    t = resolve_target(args.target)
    cutoff = _cutoff(args, t)
    table = reconstruct_all(t, cutoff=cutoff)
    bad = audit_selection(t, table)
    if bad:
        for beta, classes in bad:
            out.write("selection rule violated: %s\n" % format_key(t, beta, classes))
        return EXIT_MATH
    text = table_to_csv(table) if args.format == "csv" else table_to_json(table)
    _emit(text, args.output, out)
    seeds = sum(1 for _, e in table.items() if e.provenance == "seed")
    summary = "%s: %d irreducible entries (%d seeds used) for beta.c1 <= %d, n <= %d\n" % (
        t.name, len(table), seeds, cutoff.max_c1, cutoff.max_n)
    (out if args.output else sys.stderr).write(summary)
    return EXIT_OK


def cmd_potential(args, out):
    t = resolve_target(args.target)
    table = read_table(args.table) if args.table else None
    cutoff = _cutoff(args, t, table=table)
    if table is None:
        table = reconstruct_all(t, cutoff=cutoff)
    p = build_potential(t, table, cutoff)
    if args.format == "json":
        text = potential_to_json(p)
    else:
        lines = ["t_exponents,beta,coefficient"]
        for m, c in sorted(p.series.terms.items()):
            lines.append("%s,%s,%s" % (";".join(map(str, m.t)), ";".join(map(str, m.beta)),
                                       format_rational(c)))
        text = "\n".join(lines) + "\n"
    _emit(text, args.output, out)
    return EXIT_OK


def cmd_qmul(args, out):
    t = resolve_target(args.target)
    try:
        factors = [t.class_index(s) for s in args.symbols]
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    point = {}
    for item in args.at or []:
        sym, _, val = item.partition("=")
        try:
            point[t.class_index(sym)] = parse_rational(val, "--at")
        except KeyError:
            raise UsageError("unknown basis symbol %r" % sym) from None
    table = read_table(args.table) if args.table else None
    total_deg = sum(t.st_degree(k) for k in factors)
    if args.max_c1 is None and (table is None or table.cutoff is None):
        args.max_c1 = max(2 * t.dim, ceil(total_deg / 2))
    cutoff = _cutoff(args, t, default_n=3 if not point else 6, table=table)
    if table is None:
        table = reconstruct_all(t, cutoff=cutoff)
    p = build_potential(t, table, cutoff)
    x = QuantumElement.basis(p, factors[0])
    for k in factors[1:]:
        x = quantum_mul(p, x, QuantumElement.basis(p, k))
    x = x.substitute(point) if point else x.at_origin()
    out.write(x.format() + "\n")
    return EXIT_OK


def cmd_wdvv(args, out):
    t = resolve_target(args.target)
    table = read_table(args.table)
    base = _inferred_cutoff(t, table)
    cutoff = Cutoff(base.max_c1 if args.max_c1 is None else args.max_c1,
                    base.max_n if args.max_n is None else args.max_n)
    p = build_potential(t, table, cutoff)
    rep = wdvv_check(p)
    if rep.ok:
        out.write("WDVV holds: %d quadruples, beta.c1 <= %d, n <= %d\n"
                  % (rep.checked, cutoff.max_c1, cutoff.max_n))
        return EXIT_OK
    i, j, h, l = rep.witness
    out.write("WDVV fails at (i,j,h,l) = (%d,%d,%d,%d): coefficient %s of t^%s q^%s\n"
              % (i, j, h, l, format_rational(rep.coefficient), list(rep.monomial.t),
                 list(rep.monomial.beta)))
    return EXIT_MATH


def cmd_explain(args, out):
    t = resolve_target(args.target)
    if not args.trace:
        raise UsageError("explain needs --trace KEY")
    beta, classes = parse_key(t, args.trace)
    cutoff = Cutoff(max(t.c1_degree(beta), t.dim + 1), max(len(classes), 3))
    rec = reconstructor_for(t, cutoff)
    out.write(explain(rec, classes, beta).render() + "\n")
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "reconstruct": cmd_reconstruct,
    "potential": cmd_potential,
    "qmul": cmd_qmul,
    "wdvv": cmd_wdvv,
    "explain": cmd_explain,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-c1", type=int, default=None, help="largest beta.c1 (default dim+1)")
    common.add_argument("--max-n", type=int, default=None, help="largest number of insertions")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    common.add_argument("--jobs", type=int, default=1,
                        help="accepted for compatibility; evaluation is sequential")
    common.add_argument("--trace", default=None, metavar="KEY",
                        help="correlator to explain, BETA:CLASSES")

    ap = argparse.ArgumentParser(prog="gwzero", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", parents=[common], help="check a target file")
    p.add_argument("target")
    p = sub.add_parser("reconstruct", parents=[common], help="reconstruct a correlator table")
    p.add_argument("target")
    p = sub.add_parser("potential", parents=[common], help="print the truncated potential")
    p.add_argument("target")
    p.add_argument("--table", default=None)
    p = sub.add_parser("qmul", parents=[common], help="quantum product of basis classes")
    p.add_argument("target")
    p.add_argument("symbols", nargs="+")
    p.add_argument("--table", default=None)
    p.add_argument("--at", action="append", metavar="SYM=p/q",
                   help="evaluate at a t-point instead of t=0 (truncated polynomial)")
    p = sub.add_parser("wdvv", parents=[common], help="check WDVV on a table")
    p.add_argument("target")
    p.add_argument("table")
    p = sub.add_parser("explain", parents=[common], help="derivation tree of one correlator")
    p.add_argument("target")
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except MissingSeeds as exc:
        sys.stderr.write("error: %s\n" % exc)
        for label in exc.labels:
            out.write("missing seed: %s\n" % label)
        return EXIT_MISSING
    except UnknownCorrelator as exc:
        sys.stderr.write("error: insufficient table coverage: %s\n" % exc)
        return EXIT_MISSING
    except (TargetParseError, OSError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_IO
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_IO
    except (ReconstructionError, TargetError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
