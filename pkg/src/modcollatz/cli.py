"""Command-line interface: ``modcollatz <command> ...``.

Exit codes: 0 ok, 1 usage error, 2 mismatch between formula and oracle
(or a failed verification suite).
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
import time
from typing import Optional, Sequence, TextIO

from .detvalue import DetValue
from .errors import ModCollatzError
from .exactla import charpoly, det_exact, poly_divides
from .formulas import conway_X_matrix, det_collatz_formula, det_conway_formula, det_pnq_formula
from .graphs import adjacency_matrix, build_collatz, build_conway, build_pnq, dump_edges, special_edges
from .numtheory import is_prime
from .permgraph import census_pi0, census_pi2, collatz_permutations, cycles, format_cycles
from .scan import RecordTracker, ScanRecord, iter_records, scan_blocks, write_csv
from .verify import SUITES, run_suites

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2
ORACLE_BOUND = 1200
DECIMAL_LIMIT = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    # accepted both before and after the command name
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for scans")
    p.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="modcollatz", description="Determinants and structure of modular Collatz graphs.")
    parser.add_argument("--json", action="store_true", default=False, help="machine-readable output")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for scans")
    parser.add_argument("--out", default=None, help="write output to this file")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("det", parents=[common], help="determinant of an adjacency matrix")
    p.add_argument("kind", choices=("collatz", "pnq", "conway"))
    p.add_argument("N", type=int)
    p.add_argument("-p", type=int, default=3, help="multiplier for pnq (default 3)")
    p.add_argument("-q", type=int, default=1, help="offset for pnq (default 1)")
    p.add_argument("--method", choices=("formula", "oracle", "both"), default="formula")
    p.add_argument("--order-exponent-hint", type=int, default=None,
                   help="a multiple of ord_N(3), to avoid factoring phi(N)")
    p.add_argument("--oracle-bound", type=int, default=ORACLE_BOUND)
    p.add_argument("--decimal", action="store_true", help="also print the integer value")

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial")
    p.add_argument("kind", choices=("collatz", "pnq", "conway", "conway-x"))
    p.add_argument("N", type=int)
    p.add_argument("-p", type=int, default=3)
    p.add_argument("-q", type=int, default=1)
    p.add_argument("--eval", type=int, default=None, dest="at", help="evaluate at this integer")
    p.add_argument("--check-divisor", type=int, default=None, metavar="N0",
                   help="check that the polynomial for N0 divides this one")
    p.add_argument("--oracle-bound", type=int, default=ORACLE_BOUND)

    p = sub.add_parser("edges", parents=[common], help="loops and multiple edges of the Collatz graph")
    p.add_argument("N", type=int)
    p.add_argument("--dump", action="store_true", help="print every edge as i<TAB>j<TAB>multiplicity")
    p.add_argument("--kind", choices=("collatz", "conway"), default="collatz", help="graph for --dump")

    p = sub.add_parser("cycles", parents=[common], help="cycle census of a permutation of Z_N")
    p.add_argument("N", type=int)
    p.add_argument("--perm", choices=("pi2", "pi0"), default="pi2")
    p.add_argument("--no-list", action="store_true", help="omit the explicit cycle list")

    p = sub.add_parser("scan", parents=[common], help="formula determinants over a range of odd N")
    p.add_argument("--kind", choices=("collatz", "conway"), default="collatz")
    p.add_argument("--from", dest="lo", type=int, default=1)
    p.add_argument("--to", dest="hi", type=int, required=True)
    p.add_argument("--nonzero-only", action="store_true")
    p.add_argument("--primes-only", action="store_true")
    p.add_argument("--records", action="store_true", help="summarize the largest exponents")
    p.add_argument("--records-only", action="store_true", help="skip the rows, print only the records")

    p = sub.add_parser("verify", parents=[common], help="run cross-check suites")
    p.add_argument("--max", type=int, default=None, help="override each suite's upper bound")
    p.add_argument("--suites", default=",".join(SUITES), help="comma-separated suite names")

    p = sub.add_parser("plotdata", parents=[common], help="signed log2 of determinants as CSV")
    p.add_argument("--kind", choices=("collatz", "conway"), default="collatz")
    p.add_argument("--from", dest="lo", type=int, default=3)
    p.add_argument("--to", dest="hi", type=int, required=True)
    return parser


# --- helpers ---------------------------------------------------------------


def _graph(kind: str, N: int, p: int, q: int):
    if kind == "collatz":
        return build_collatz(N)
    if kind == "pnq":
        return build_pnq(p, q, N)
    return build_conway(N)


def _check_bound(N: int, bound: int) -> None:
    if N > bound:
        raise UsageError(f"N={N} exceeds the oracle bound {bound}; raise it with --oracle-bound")


def _emit(out: TextIO, args, payload: dict, text: str) -> None:
    if args.json:
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(text + "\n")


def _det_payload(d: DetValue, decimal: bool) -> dict:
    out = {"det": str(d), "sign": d.sign, "exp2": d.exp2, "factor3": d.factor3}
    if decimal or d.exp2 <= DECIMAL_LIMIT:
        out["value"] = str(d.to_int())
    return out


# --- commands --------------------------------------------------------------


def cmd_det(args, out: TextIO) -> int:
    N, kind = args.N, args.kind
    if N < 1:
        raise UsageError("N must be positive")
    t0 = time.perf_counter()
    formula = oracle = None
    if args.method in ("formula", "both"):
        if kind == "collatz":
            formula = det_collatz_formula(N, hint=args.order_exponent_hint)
        elif kind == "pnq":
            formula = det_pnq_formula(args.p, args.q, N)
        else:
            formula = det_conway_formula(N)
    if args.method in ("oracle", "both"):
        _check_bound(N, args.oracle_bound)
        if kind == "conway" and N % 2 == 0:
            raise UsageError("Conway graphs are only built for odd N")
        oracle = DetValue.from_int(det_exact(adjacency_matrix(_graph(kind, N, args.p, args.q))))
    elapsed = time.perf_counter() - t0
    d = formula if formula is not None else oracle
    assert d is not None
    rec = ScanRecord(N, kind, d, is_prime(N), elapsed)
    payload = rec.as_dict() | _det_payload(d, args.decimal) | {"method": args.method}
    lines = [str(d)]
    if args.decimal:
        lines.append(str(d.to_int()))
    status = EXIT_OK
    if args.method == "both":
        agree = formula == oracle
        payload |= {"formula": str(formula), "oracle": str(oracle), "agree": agree}
        if agree:
            lines.append("agree")
        else:
            lines = [f"formula {formula}", f"oracle {oracle}", "MISMATCH"]
            status = EXIT_MISMATCH
    _emit(out, args, payload, "\n".join(lines))
    return status


def cmd_charpoly(args, out: TextIO) -> int:
    N, kind = args.N, args.kind
    if N < 1:
        raise UsageError("N must be positive")
    _check_bound(N, args.oracle_bound)

    def poly_for(n: int):
        if kind == "conway-x":
            return charpoly(conway_X_matrix(n))
        return charpoly(adjacency_matrix(_graph(kind, n, args.p, args.q)))

    P = poly_for(N)
    payload: dict = {"kind": kind, "N": N, "charpoly": str(P), "coefficients": [str(c) for c in P.coeffs]}
    lines = [] if (args.at is not None or args.check_divisor is not None) else [str(P)]
    if args.at is not None:
        v = P(args.at)
        payload["eval"] = {"x": args.at, "value": str(v)}
        lines.append(str(v))
    if args.check_divisor is not None:
        n0 = args.check_divisor
        if n0 < 1 or N % n0:
            raise UsageError(f"{n0} is not a divisor of {N}")
        ok, quotient = poly_divides(poly_for(n0), P)
        payload["check_divisor"] = {"N0": n0, "divides": ok, "quotient": str(quotient) if ok else None}
        lines.append(f"P_{n0} {'divides' if ok else 'does not divide'} P_{N}")
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def _fmt_pairs(pairs) -> str:
    return " ".join(f"({a},{b})" for a, b in sorted(pairs)) or "none"


def cmd_edges(args, out: TextIO) -> int:
    N = args.N
    if N < 2:
        raise UsageError("N must be at least 2")
    if args.dump:
        g = build_collatz(N) if args.kind == "collatz" else build_conway(N)
        out.write(dump_edges(g))
        return EXIT_OK
    observed, predicted = special_edges(N)
    agree = observed == predicted
    payload = {"N": N, "observed": observed.as_dict(), "predicted": predicted.as_dict(), "agree": agree}
    lines = [
        f"loops: {' '.join(map(str, sorted(observed.loops))) or 'none'}",
        f"strongly double: {_fmt_pairs(observed.strongly_double)}",
        f"weakly double: {_fmt_pairs(observed.weakly_double)}",
        f"triple: {_fmt_pairs(observed.triple)}",
        "matches closed forms" if agree else "MISMATCH with closed forms",
    ]
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_cycles(args, out: TextIO) -> int:
    N = args.N
    perms = collatz_permutations(N, require_coprime3=args.perm == "pi0")
    perm = perms.pi2 if args.perm == "pi2" else perms.pi0
    census = census_pi2(N) if args.perm == "pi2" else census_pi0(N)
    cycs = cycles(perm)
    payload = {
        "N": N,
        "perm": args.perm,
        "census": [{"divisor": r.divisor, "cycle_length": r.cycle_length, "count": r.count} for r in census.rows],
        "total_cycles": census.total_cycles,
    }
    if not args.no_list:
        payload["cycles"] = [list(c) for c in cycs]
    lines = ["divisor\tlength\tcount"]
    lines += [f"{r.divisor}\t{r.cycle_length}\t{r.count}" for r in census.rows]
    lines.append(f"total cycles: {census.total_cycles}")
    if not args.no_list:
        lines.append(format_cycles(cycs))
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK if census.total_cycles == len(cycs) else EXIT_MISMATCH


def cmd_scan(args, out: TextIO) -> int:
    if args.lo > args.hi:
        raise UsageError(f"--from {args.lo} is larger than --to {args.hi}")
    blocks = scan_blocks(args.kind, args.lo, args.hi, jobs=args.jobs,
                         primes_only=args.primes_only, nonzero_only=args.nonzero_only)
    tracker = RecordTracker(args.kind) if (args.records or args.records_only) else None
    if args.records_only:
        assert tracker is not None
        for blk in blocks:
            tracker.update(blk)
    elif args.json:
        for rec in _iter_blocks(blocks, args.kind, tracker):
            out.write(json.dumps(rec.as_dict()) + "\n")
    else:
        write_csv(blocks, args.kind, out, tracker)
    if tracker is not None:
        # the summary goes to stdout when rows went to a file, else after the rows on stderr
        dest = sys.stdout if (args.out or args.records_only) else sys.stderr
        if args.json:
            recs = {
                f"{'prime' if q[1] else 'composite'}{'+' if q[0] > 0 else '-'}": r.as_dict()
                for q, r in tracker.records().items()
            }
            dest.write(json.dumps({"records": recs}) + "\n")
        else:
            dest.write("\n".join(tracker.summary_lines()) + "\n")
    return EXIT_OK


def _iter_blocks(blocks, kind, tracker):
    for blk in blocks:
        if tracker is not None:
            tracker.update(blk)
        yield from iter_records([blk], kind)


def cmd_verify(args, out: TextIO) -> int:
    names = [s.strip() for s in args.suites.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suites {unknown}; choose from {', '.join(SUITES)}")
    results = run_suites(names, args.max)
    if args.json:
        out.write(json.dumps([r.as_dict() for r in results]) + "\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


def cmd_plotdata(args, out: TextIO) -> int:
    if args.hi < 3:
        raise UsageError("--to must be at least 3")
    if args.lo > args.hi:
        raise UsageError(f"--from {args.lo} is larger than --to {args.hi}")
    blocks = scan_blocks(args.kind, args.lo, args.hi, jobs=args.jobs)
    write_csv(blocks, args.kind, out, plot=True)
    return EXIT_OK


COMMANDS = {
    "det": cmd_det,
    "charpoly": cmd_charpoly,
    "edges": cmd_edges,
    "cycles": cmd_cycles,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "plotdata": cmd_plotdata,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("modcollatz: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        with contextlib.ExitStack() as stack:
            out = stack.enter_context(open(args.out, "w")) if args.out else sys.stdout
            return COMMANDS[args.command](args, out)
    except (UsageError, ModCollatzError) as e:
        print(f"modcollatz: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"modcollatz: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
