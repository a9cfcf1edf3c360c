"""Command-line entry point.

Every subcommand prints one JSON document (or a short text rendering) and
exits 0 only when everything it was asked to check passed.  Failures print a
structured error object instead.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import arith, verify
from .charspace import (
    CharSpaceError,
    min_working_degree,
    psi,
    search_subspace,
    special_subspace,
    zero_pattern,
)
from .discform import BudgetExceeded, DiscFormError, build_disc_space
from .ffield import FieldError
from .oracle import OracleError, enumerate_index
from .strata import ZeroPattern, nonsymplectic_index, render_table, table1

SCHEMA = "ssk3/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_NOT_FOUND = 4


class CliError(Exception):
    def __init__(self, kind, message, code=EXIT_USAGE):
        super().__init__(message)
        self.kind = kind
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def _is_prime(n):
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise CliError("usage", "missing required option(s): " + ", ".join("--" + n for n in missing))


def _check_p(p):
    if not _is_prime(p) or p <= 3:
        raise CliError("bad_p", f"p must be a prime > 3, got {p}")


def _check_sigma(sigma):
    if not 1 <= sigma <= 10:
        raise CliError("bad_sigma", f"sigma must be in 1..10, got {sigma}")


def _pattern(args):
    if args.special:
        if args.pattern:
            raise CliError("usage", "--special and --pattern are exclusive")
        return ZeroPattern.all_zero(args.sigma)
    try:
        return ZeroPattern.parse(args.pattern, args.sigma)
    except ValueError as exc:
        raise CliError("bad_pattern", str(exc)) from None


def _construct(args, pattern):
    """Special subspace for --special, otherwise a searched one."""
    D = args.working_degree
    if D is None:
        D = 2 * args.sigma if args.special else min_working_degree(args.sigma, pattern)
    space = build_disc_space(args.p, args.sigma, D)
    if args.special:
        return special_subspace(space)
    K = search_subspace(space, pattern, seed=args.seed, budget=args.budget or 20_000)
    if K is None:
        raise CliError("not_found", f"no subspace with pattern {pattern.to_json()} found "
                       f"at working degree {D}", EXIT_NOT_FOUND)
    return K


def cmd_table(args):
    if args.p is not None:
        _check_p(args.p)
    rows = [{"sigma": s, "strata": [st.to_json(args.p) for st in strata]} for s, strata in table1(args.p)]
    return {"p": args.p, "rows": rows}, render_table(args.p), True


def cmd_index(args):
    _require(args, "p", "sigma")
    _check_p(args.p)
    _check_sigma(args.sigma)
    r = nonsymplectic_index(args.p, args.sigma, _pattern(args))
    return r.to_json(), f"index {r.index}", True


def cmd_oracle(args):
    _require(args, "p", "sigma")
    _check_p(args.p)
    _check_sigma(args.sigma)
    pattern = _pattern(args)
    K = _construct(args, pattern)
    r = enumerate_index(K, budget=args.budget or 100_000)
    crit = nonsymplectic_index(args.p, args.sigma, zero_pattern(psi(K).canonical))
    out = {
        "p": args.p,
        "sigma": args.sigma,
        "working_degree": K.space.working_degree,
        "pattern": zero_pattern(K.a).to_json(),
        "index": r.index,
        "kept_orders": sorted(r.kept_orders),
        "criterion_index": crit.index,
        "agrees": r.index == crit.index,
        "contains_minus_id": r.contains_minus_id,
    }
    return out, f"index {r.index} (criterion {crit.index})", out["agrees"] and out["contains_minus_id"]


def cmd_classify(args):
    _require(args, "N")
    if args.N < 2:
        raise CliError("bad_N", "N must be >= 2")
    if args.all_residues:
        out = arith.residue_partition(args.N)
        out["discrepancies"] = arith.literature_discrepancies(args.N)
        lines = [f"m={m}: {rs}" for m, rs in out["supersingular"].items()]
        return out, "\n".join(lines), True
    _require(args, "p")
    r = arith.classify_reduction(args.N, args.p)
    text = r.outcome + (f" (Artin invariant {r.artin})" if r.artin else "")
    return r.to_json(), text, True


def cmd_psi(args):
    _require(args, "p", "sigma")
    _check_p(args.p)
    _check_sigma(args.sigma)
    K = _construct(args, _pattern(args))
    res = psi(K)
    out = {"p": args.p, "sigma": args.sigma, "working_degree": K.space.working_degree, **res.to_json(),
           "pattern": zero_pattern(res.canonical).to_json()}
    return out, "a = " + json.dumps(out["a"]), True


def cmd_search(args):
    _require(args, "p", "sigma")
    _check_p(args.p)
    _check_sigma(args.sigma)
    pattern = _pattern(args)
    K = _construct(args, pattern)
    out = {"subspace": K.to_json(), "a": [x.to_json() for x in K.a], "pattern": zero_pattern(K.a).to_json()}
    return out, f"found K with pattern {out['pattern']}", zero_pattern(K.a) == pattern


def cmd_verify(args):
    if args.p is not None:
        _check_p(args.p)
    try:
        suites = verify.run_suite(args.suite, p=args.p, sigma=args.sigma, d=args.d, seed=args.seed,
                                  quick=args.quick)
    except ValueError as exc:
        raise CliError("usage", str(exc)) from None
    results = [r for s in suites for r in s.results]
    failed = [r for r in results if not r["passed"]]
    out = {"suite": args.suite, "passed": not failed, "checks": len(results), "failed": len(failed),
           "results": results}
    lines = []
    for r in results:
        extra = " ".join(f"{k}={v}" for k, v in r.items() if k not in ("suite", "check", "passed"))
        lines.append(f"{'PASS' if r['passed'] else 'FAIL'} {r['suite']}:{r['check']} {extra}".rstrip())
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return out, "\n".join(lines), not failed


COMMANDS = {
    "table": cmd_table,
    "index": cmd_index,
    "oracle": cmd_oracle,
    "classify": cmd_classify,
    "psi": cmd_psi,
    "search": cmd_search,
    "verify": cmd_verify,
}


def build_parser():
    parser = _Parser(prog="ssk3", description="Non-symplectic indices of supersingular K3 surfaces.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="include elapsed seconds in the output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def geometry(p):
        p.add_argument("--p", type=int)
        p.add_argument("--sigma", type=int)
        p.add_argument("--pattern", help="comma list of 0/1, 1 meaning a_i != 0")
        p.add_argument("--special", action="store_true")
        p.add_argument("--working-degree", type=int)

    t = sub.add_parser("table", parents=[common], help="strata table for sigma = 1..10")
    t.add_argument("--p", type=int)
    for name in ("index", "oracle", "psi", "search"):
        geometry(sub.add_parser(name, parents=[common]))
    c = sub.add_parser("classify", parents=[common])
    c.add_argument("--N", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--all-residues", action="store_true")
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", choices=verify.SUITES + ("all",))
    v.add_argument("--p", type=int)
    v.add_argument("--sigma", type=int)
    v.add_argument("--d", type=int)
    v.add_argument("--quick", action="store_true")
    return parser


def _emit(obj, fmt, text, stream):
    if fmt == "text" and text is not None:
        print(text.rstrip("\n"), file=stream)
    else:
        print(json.dumps(obj, indent=2), file=stream)


def run(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        start = time.perf_counter()
        try:
            result, text, ok = COMMANDS[args.command](args)
        except BudgetExceeded as exc:
            raise CliError("budget", str(exc), EXIT_BUDGET) from None
        except OracleError as exc:
            raise CliError("oracle_inconsistent", str(exc), EXIT_CHECK_FAILED) from None
        except (FieldError, DiscFormError, CharSpaceError) as exc:
            raise CliError("invalid_input", str(exc)) from None
        out = {"schema": SCHEMA, "command": args.command, "ok": ok, "result": result}
        if args.timing:
            out["elapsed"] = round(time.perf_counter() - start, 3)
        _emit(out, fmt, text, stream)
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    except CliError as exc:
        err = {"schema": SCHEMA, "ok": False, "error": {"kind": exc.kind, "message": str(exc)}}
        _emit(err, fmt, f"error ({exc.kind}): {exc}", stream)
        return exc.code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
