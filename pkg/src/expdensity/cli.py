"""Command-line front end: ``expdensity density|coeffs|count|verify|presets``."""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Optional, Sequence

from .census import count_members, empirical_density_check
from .coefficients import M_explicit, coeff_table, f_partition
from .density import DEFAULT_DIGITS, DEFAULT_PRIME_CUTOFF, density_hybrid
from .errors import BudgetError, SetSpecError
from .exponent_set import PRESETS, _is_prime, make_set, v_seq
from .verify import run_all

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3

MAX_N_RECURSION = 10_000
MAX_N_PARTITION = 60


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage already; keep that but route through our handler
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SetSpecError(message)


def next_prime(n: int) -> int:
    while not _is_prime(n):
        n += 1
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--set", dest="set_spec", default="preset:squarefree",
                        help="preset:NAME | list:1,a,b,... | mask:BITS (default preset:squarefree)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--verbose", action="store_true")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    p = _Parser(prog="expdensity", description="Density of exponentially S-numbers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("density", parents=[common], help="compute h(E(S))")
    d.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
    d.add_argument("--prime-cutoff", type=int, default=DEFAULT_PRIME_CUTOFF)
    d.add_argument("--terms", type=int, default=None, help="series terms N (default: automatic)")

    c = sub.add_parser("coeffs", parents=[common], help="print f_n and M_n")
    c.add_argument("--max-n", type=int, default=20)
    c.add_argument("--method", choices=("recursion", "partition", "both"), default="recursion")

    n = sub.add_parser("count", parents=[common], help="brute-force census up to --limit")
    n.add_argument("--limit", type=int, required=True)
    n.add_argument("--h-from-engine", action="store_true", help="compare with the computed density")
    n.add_argument("--digits", type=int, default=DEFAULT_DIGITS)

    sub.add_parser("verify", parents=[common], help="run all cross-checks")
    sub.add_parser("presets", parents=[common], help="list preset sets")
    return p


@contextmanager
def _output(path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            yield fh
    else:
        yield sys.stdout


def run_density(args, out) -> int:
    s = make_set(args.set_spec)
    B = args.prime_cutoff
    if B < 3:
        raise SetSpecError(f"--prime-cutoff must be >= 3, got {B}")
    nb = next_prime(B)
    if nb != B:
        print(f"warning: prime cutoff {B} raised to next prime {nb}", file=sys.stderr)
    res = density_hybrid(s, args.digits, prime_cutoff=nb, terms=args.terms)
    if args.json:
        print(res.to_json(), file=out)
    else:
        print(res.h_string(), file=out)
        if args.verbose:
            d = res.to_dict()
            print(f"error_bound {d['error_bound']}", file=out)
            print(f"B {res.prime_cutoff_B}", file=out)
            print(f"N {res.series_terms_N}", file=out)
    return EXIT_OK


def run_coeffs(args, out) -> int:
    s = make_set(args.set_spec)
    max_n = args.max_n
    if max_n < 2:
        raise SetSpecError(f"--max-n must be >= 2, got {max_n}")
    cap = MAX_N_RECURSION if args.method == "recursion" else MAX_N_PARTITION
    if max_n > cap:
        raise BudgetError(f"--max-n {max_n} exceeds {cap} for method {args.method}")
    v = v_seq(s, max_n)
    table = coeff_table(v, max_n)
    rows = table.to_json()
    if args.method in ("partition", "both"):
        for row in rows:
            n = row["n"]
            fp = f_partition(v, n)
            Mp = M_explicit(v, n) if n >= 4 else 0
            if args.method == "partition":
                row["f"] = str(fp)
                row["M"] = {"num": str(Mp.numerator), "den": str(Mp.denominator)} if n >= 4 else row["M"]
            else:
                same = str(fp) == row["f"] and (n < 4 or Mp == table.M[n - 2])
                row["agree"] = "ok" if same else "MISMATCH"
    if args.json:
        print(json.dumps(rows), file=out)
    else:
        header = ["n", "f_n", "M_n"] + (["agree"] if args.method == "both" else [])
        print("\t".join(header), file=out)
        for row in rows:
            M = row["M"]
            Ms = M["num"] if M["den"] == "1" else f"{M['num']}/{M['den']}"
            cols = [str(row["n"]), row["f"], Ms] + ([row["agree"]] if "agree" in row else [])
            print("\t".join(cols), file=out)
    if args.method == "both" and any(r["agree"] != "ok" for r in rows):
        return EXIT_CHECK_FAILED
    return EXIT_OK


def run_count(args, out) -> int:
    s = make_set(args.set_spec)
    if args.limit < 1:
        raise SetSpecError(f"--limit must be >= 1, got {args.limit}")
    if args.h_from_engine:
        h = density_hybrid(s, args.digits).h
        rep = empirical_density_check(s, args.limit, h)
    else:
        rep = count_members(s, args.limit)
    if args.json:
        print(rep.to_json(), file=out)
    else:
        d = rep.to_dict()
        print(f"count {rep.count}", file=out)
        print(f"empirical_density {d['empirical_density']}", file=out)
        if rep.reference_h is not None:
            print(f"h {d['h']}", file=out)
            print(f"deviation {d['deviation']}", file=out)
            print("pass" if rep.passed else "FAIL", file=out)
    return EXIT_OK


def run_verify(args, out) -> int:
    s = make_set(args.set_spec)
    results = run_all(s)
    if args.json:
        print(json.dumps([{"check": r.name, "pass": r.ok, "detail": r.detail} for r in results]), file=out)
    else:
        for r in results:
            print(r.line(), file=out)
    failed = [r for r in results if not r.ok]
    if failed:
        print(f"verify failed: {failed[0].name}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def run_presets(args, out) -> int:
    if args.json:
        print(json.dumps(PRESETS), file=out)
    else:
        for name, desc in PRESETS.items():
            print(f"preset:{name}\t{desc}", file=out)
    return EXIT_OK


COMMANDS = {
    "density": run_density,
    "coeffs": run_coeffs,
    "count": run_count,
    "verify": run_verify,
    "presets": run_presets,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        with _output(args.out) as out:
            return COMMANDS[args.command](args, out)
    except SetSpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
