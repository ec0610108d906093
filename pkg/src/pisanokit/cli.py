"""Command-line entry point: ``pisano {period,roots,fib,verify,classify}``.

Exit codes: 0 success, 1 verification or consistency failure, 2 result
outside the root method's hypothesis (5 not a unit) or unverified, 64 usage
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from math import gcd

from .errors import (
    CapExceeded,
    HypothesisViolated,
    IncompleteFactorization,
    InternalInconsistency,
)
from .numtheory import factor
from .pisano import (
    ITERATIVE_LIMIT,
    CaseTag,
    FibMethod,
    LocalPeriod,
    elem_to_json,
    elem_to_text,
    fib,
    classify_primes,
    pisano_period,
    solve_E,
    sweep,
    verify_lemma1,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_SCOPE = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _modulus(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError(f"modulus must be >= 2, got {n}")
    return n


def _nonneg(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if k < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {k}")
    return k


def _positive(text: str) -> int:
    k = _nonneg(text)
    if k < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return k


def emit(record: dict) -> None:
    print(json.dumps(record, ensure_ascii=False))


def _component_line(c: LocalPeriod) -> str:
    head = f"  {c.prime}^{c.exponent}: local period {c.period}, case {c.case.value}"
    if c.case is CaseTag.FALLBACK:
        return head + f" (5 is not a unit mod {c.modulus}; {c.method.value})"
    return (
        head + f", ord(r)={c.ord_r}, ord(s)={c.ord_s}, "
        f"r={elem_to_text(c.pair.r)}, s={elem_to_text(c.pair.s)} ({c.pair.location.value})"
    )


def cmd_period(args) -> int:
    try:
        cert = pisano_period(args.n, method=args.method, cap=args.cap)
    except HypothesisViolated as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (IncompleteFactorization, CapExceeded, InternalInconsistency) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        emit(cert.to_json())
    else:
        print(f"π({cert.n}) = {cert.period}")
        print(f"  method {cert.method.value}, verified {'yes' if cert.verified else 'no'}")
        for c in cert.components:
            print(_component_line(c))
    if not cert.verified or cert.fallback:
        return EXIT_SCOPE
    return EXIT_OK


_ROOT_CHECKS = {
    1: "s = 1 - r solves x^2 = x + 1",
    2: "r*(-s) = 1",
    3: "(r - s)^2 = 5",
}


def cmd_roots(args) -> int:
    n = args.n
    if gcd(n, 5) != 1:
        msg = f"hypothesis violated: 5 is not a unit mod {n}"
        if args.json:
            emit({"n": n, "error": msg})
        else:
            print(msg)
        return EXIT_SCOPE
    status = EXIT_OK
    for q in factor(n).prime_powers():
        pair = solve_E(q, validate=False)
        report = verify_lemma1(q)
        checks = {str(i): report.items[i].status for i in _ROOT_CHECKS}
        if any(v != "pass" for v in checks.values()):
            status = EXIT_FAIL
        if args.json:
            emit({
                "n": q,
                "root_location": pair.location.value,
                "r": elem_to_json(pair.r),
                "s": elem_to_json(pair.s),
                "sqrt5": elem_to_json(pair.sqrt5),
                "checks": checks,
            })
            continue
        print(f"roots of x^2 - x - 1 mod {q}: {pair.location.value}")
        print(f"  r = {elem_to_text(pair.r)}")
        print(f"  s = {elem_to_text(pair.s)}")
        print(f"  sqrt5 = r - s = {elem_to_text(pair.sqrt5)}")
        for i, label in _ROOT_CHECKS.items():
            print(f"  item {i} ({label}): {checks[str(i)]}")
    return status


def cmd_fib(args) -> int:
    k, n = args.k, args.mod
    if args.method == "all":
        methods = list(FibMethod)
    else:
        methods = [FibMethod(args.method)]
    values: dict[str, int | None] = {}
    for m in methods:
        if args.method == "all" and m is FibMethod.ITERATIVE and k > ITERATIVE_LIMIT:
            values[m.value] = None
            continue
        try:
            values[m.value] = fib(k, n, m).value
        except HypothesisViolated as exc:
            print(f"hypothesis violated: {exc}", file=sys.stderr)
            return EXIT_SCOPE
    computed = {v for v in values.values() if v is not None}
    agree = len(computed) == 1
    if args.json:
        record = {"k": k, "n": n, "values": values}
        if len(methods) > 1:
            record["agree"] = agree
        emit(record)
    elif len(methods) == 1:
        print(f"F({k}) mod {n} = {values[methods[0].value]}")
    else:
        for name, v in values.items():
            print(f"  {name}: {'skipped' if v is None else v}")
        print(f"F({k}) mod {n}: methods {'agree' if agree else 'DISAGREE'}")
    return EXIT_OK if agree else EXIT_FAIL


def cmd_verify(args) -> int:
    rows = sweep(args.max)
    bad = [row for row in rows if not row.ok]
    for row in rows:
        if args.json:
            emit({
                "n": row.n,
                "period": row.period,
                "brute": row.brute,
                "verified": row.verified,
                "cases": row.cases,
                "ok": row.ok,
                "failures": row.lemma_failures,
            })
        else:
            mark = "ok" if row.ok else "MISMATCH " + "; ".join(row.lemma_failures)
            print(f"n={row.n} period={row.period} brute={row.brute} "
                  f"cases={','.join(row.cases)} {mark}")
    summary = f"{len(rows)} moduli checked, {len(bad)} mismatches"
    if bad:
        summary += ": " + ", ".join(str(row.n) for row in bad)
    print(summary, file=sys.stderr if args.json else sys.stdout)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_classify(args) -> int:
    try:
        rows = classify_primes(args.primes_up_to)
    except InternalInconsistency as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    counts = Counter(row.case.value for row in rows)
    for row in rows:
        if args.json:
            emit({
                "prime": row.prime,
                "case": row.case.value,
                "ord_r": row.ord_r,
                "ord_s": row.ord_s,
                "period": row.period,
            })
        else:
            print(f"p={row.prime} case={row.case.value} ord(r)={row.ord_r} "
                  f"ord(s)={row.ord_s} period={row.period}")
    summary = ", ".join(f"{case}: {count}" for case, count in sorted(counts.items()))
    print(f"{len(rows)} primes; {summary}", file=sys.stderr if args.json else sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", dest="json_local", action="store_true",
                        help="line-delimited JSON output")

    parser = _Parser(prog="pisano", description="Pisano periods via roots of x^2 - x - 1.")
    parser.add_argument("--json", dest="json_global", action="store_true",
                        help="line-delimited JSON output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("period", parents=[common], help="certified Pisano period of n")
    p.add_argument("n", type=_modulus)
    p.add_argument("--method", choices=["auto", "roots", "matrix", "brute"], default="auto")
    p.add_argument("--cap", type=_positive, default=None,
                   help="iteration cap for brute force (default 6n)")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("roots", parents=[common], help="roots of x^2 - x - 1 mod n")
    p.add_argument("n", type=_modulus)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("fib", parents=[common], help="F_k mod n")
    p.add_argument("k", type=_nonneg)
    p.add_argument("--mod", type=_modulus, required=True)
    p.add_argument("--method", choices=[m.value for m in FibMethod] + ["all"],
                   default=FibMethod.MATRIX.value)
    p.set_defaults(func=cmd_fib)

    p = sub.add_parser("verify", parents=[common],
                       help="sweep 2..N against brute force and the root identities")
    p.add_argument("--max", type=_modulus, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="case table over primes p <= P")
    p.add_argument("--primes-up-to", type=_modulus, required=True)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.json = args.json_global or args.json_local
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
