"""Command-line interface: ``ac-lattice <command> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 violated precondition,
3 failed verification.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time

from .core import LatticeError, PreconditionError, Universe, UsageError, direct_product, format_set, join, leq, meet, parse_antichain
from .counting import canonical_decomposition, dedekind_levels, interval_size, parse_method
from .decomp import dedekind_product, largest_nondominating
from .interval import Interval, underlying_poset
from .oracle import BudgetError, enumerate_all
from .verify import ORACLE_MAX_N, run_suite

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Stdin:
    """Hands out stdin lines to every ``-`` argument, in order."""

    def __init__(self, stream):
        self.stream = stream

    def read(self) -> str:
        line = self.stream.readline()
        if not line:
            raise UsageError("expected an antichain on stdin, got end of input")
        return line.strip()


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("AC_LATTICE_THREADS")
    if not env:
        return 1
    try:
        t = int(env)
    except ValueError:
        raise UsageError(f"AC_LATTICE_THREADS must be an integer, got {env!r}") from None
    if t < 1:
        raise UsageError("AC_LATTICE_THREADS must be at least 1")
    return t


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _universe(n: int) -> Universe:
    try:
        return Universe(n)
    except LatticeError as e:
        raise UsageError(str(e)) from None


def _read(text: str, u: Universe, stdin: _Stdin, from_family: bool = False):
    if text == "-":
        text = stdin.read()
    return parse_antichain(text, u, from_family=from_family)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def cmd_normalize(args, stdin) -> str:
    u = _universe(args.n)
    return str(_read(args.antichain, u, stdin, from_family=args.from_family))


def cmd_op(args, stdin) -> str:
    u = _universe(args.n)
    arity = {"join": 2, "meet": 2, "prod": 2, "leq": 2, "check": 1}[args.op]
    if len(args.operands) != arity:
        raise UsageError(f"op {args.op} takes {arity} operand(s), got {len(args.operands)}")
    xs = [_read(t, u, stdin) for t in args.operands]
    if args.op == "join":
        return str(join(*xs))
    if args.op == "meet":
        return str(meet(*xs))
    if args.op == "prod":
        return str(direct_product(*xs))
    if args.op == "leq":
        return "true" if leq(*xs) else "false"
    return str(largest_nondominating(xs[0]))


def cmd_interval(args, stdin) -> str:
    u = _universe(args.n)
    bottom = _read(args.bottom, u, stdin)
    top = _read(args.top, u, stdin)
    i = Interval(bottom, top)
    if args.action == "size":
        parse_method(args.method)
        if i.is_empty:
            size = 0
        else:
            size = interval_size(i, args.method, workers=_threads(args))
        return _csv([["method", "size"], [args.method, size]]) if args.format == "csv" else str(size)
    if i.is_empty:
        raise PreconditionError(f"bottom {bottom} is not below top {top}")
    if args.action == "poset":
        p = underlying_poset(i)
        if args.format == "csv":
            return _csv([["level", "set"]] + [[bin(x).count("1"), format_set(x)] for x in p.sets])
        return "\n".join(p.format_levels())
    if args.chi is None:
        raise UsageError("interval decompose needs --chi")
    chi = _read(args.chi, u, stdin)
    d = canonical_decomposition(i, chi)
    if args.format == "csv":
        return _csv([["level", "layer"]] + [[d.m + j, str(layer)] for j, layer in enumerate(d.layers)])
    return str(d)


def _parse_split(text: str, n: int) -> tuple[int, int]:
    try:
        s1, s2 = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--split expects two comma-separated sizes, got {text!r}") from None
    if s1 < 0 or s2 < 0 or s1 + s2 != n:
        raise UsageError(f"--split {text} does not add up to n={n}")
    return s1, s2


def dedekind(n: int, method: str, split: tuple[int, int] | None = None, threads: int = 1) -> int:
    if method == "brute":
        try:
            return sum(1 for _ in enumerate_all(n))
        except BudgetError as e:
            raise PreconditionError(f"{e}; use --method levels or --method product") from None
    if method == "levels":
        return dedekind_levels(n, workers=threads)
    if method == "product":
        if n > 12:
            raise PreconditionError("product needs both halves enumerable; use n <= 12")
        if split is not None and max(split) > ORACLE_MAX_N:
            raise PreconditionError(f"product split parts must have at most {ORACLE_MAX_N} elements")
        if split is None and (n + 1) // 2 > ORACLE_MAX_N:
            raise PreconditionError(f"n={n} needs a split part above {ORACLE_MAX_N}; out of reach")
        return dedekind_product(n, split, workers=threads)
    raise UsageError(f"unknown dedekind method {method!r}")


def cmd_dedekind(args, stdin) -> str:
    if args.n < 0 or args.n > 64:
        raise UsageError("n must be in 0..64")
    split = _parse_split(args.split, args.n) if args.split else None
    value = dedekind(args.n, args.method, split, _threads(args))
    return _csv([["method", "n", "count"], [args.method, args.n, value]]) if args.format == "csv" else str(value)


def cmd_verify(args, stdin) -> tuple[str, int]:
    if not 0 <= args.n <= ORACLE_MAX_N:
        raise PreconditionError(f"verification suites use the oracle and need n <= {ORACLE_MAX_N}")
    results = run_suite(args.suite, args.n, args.seed, args.scale)
    ok = all(r.ok for r in results)
    if args.format == "csv":
        body = _csv([["check", "trials", "failures", "counterexample"]]
                    + [[r.name, r.trials, r.failures, r.counterexample or ""] for r in results])
    else:
        body = "\n".join(r.line() for r in results)
    return body, EXIT_OK if ok else EXIT_VERIFY


BENCH_METHODS = ("brute", "levels", "product", "even", "odd", "auto")


def _bench_one(method: str, n: int, threads: int) -> int:
    if method in ("brute", "levels", "product"):
        return dedekind(n, method, threads=threads)
    u = Universe(n)
    return interval_size(Interval.full(u), method, workers=threads)


def cmd_bench(args, stdin) -> tuple[str, int]:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in BENCH_METHODS:
            raise UsageError(f"unknown bench method {m!r}; choose from {', '.join(BENCH_METHODS)}")
    threads = _threads(args)
    rows = [["method", "n", "result", "seconds"]]
    results = set()
    for m in methods:
        best = None
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            value = _bench_one(m, args.n, threads)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        results.add(value)
        rows.append([m, args.n, value, f"{best:.6f}"])
    body = _csv(rows)
    if len(results) > 1:
        return body + "\nmismatch: methods disagree", EXIT_VERIFY
    return body, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=None,
                        help="worker processes (default: $AC_LATTICE_THREADS or 1)")
    common.add_argument("--format", choices=("text", "csv"), default="text")

    p = _Parser(prog="ac-lattice", description="Antichain lattices, intervals and Dedekind numbers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("normalize", parents=[common], help="print the canonical form of an antichain")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--from-family", action="store_true", help="keep maximal sets instead of rejecting comparable ones")
    s.add_argument("antichain", help="antichain text, or - for stdin")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("op", parents=[common], help="join, meet, prod, leq, or check (largest nondominating)")
    s.add_argument("op", choices=("join", "meet", "prod", "leq", "check"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("operands", nargs="+")
    s.set_defaults(func=cmd_op)

    s = sub.add_parser("interval", parents=[common], help="size, poset or canonical decomposition of an interval")
    s.add_argument("action", choices=("size", "poset", "decompose"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--bottom", required=True)
    s.add_argument("--top", required=True)
    s.add_argument("--method", default="auto", help="brute | even | odd | auto | pivot:k | multi:k1,k2,...")
    s.add_argument("--chi")
    s.set_defaults(func=cmd_interval)

    s = sub.add_parser("dedekind", parents=[common], help="number of antichains on n elements")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=("brute", "product", "levels"), default="levels")
    s.add_argument("--split", help="part sizes for --method product, e.g. 3,3")
    s.set_defaults(func=cmd_dedekind)

    s = sub.add_parser("verify", parents=[common], help="run randomized theorem checks")
    s.add_argument("--suite", choices=("partitions", "directjoin", "updown", "sizes", "all"), default="all")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--scale", type=float, default=1.0, help="multiply trial counts")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", parents=[common], help="time counting methods on the full lattice")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--methods", default="levels,product")
    s.add_argument("--repeats", type=_positive, default=1)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        out = args.func(args, _Stdin(stdin or sys.stdin))
    except UsageError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE
    except (PreconditionError, BudgetError) as e:
        print(f"precondition failed: {e}", file=stderr)
        return EXIT_PRECONDITION
    except ValueError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE
    code = EXIT_OK
    if isinstance(out, tuple):
        out, code = out
    print(out, file=stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
