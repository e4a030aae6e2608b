"""Command-line front end.

Exit codes: 0 success, 1 an identity failed, 2 usage or parse error,
3 a configured cap was exceeded.  Runtimes go to stderr so that stdout is
reproducible for a fixed configuration and seed.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from math import factorial

from .bernoulli import bernoulli_numbers, cycle_integral, cycle_weight_formula
from .chernweil import ahat_components_sp
from .cocycle import count_plans, tau_family_build
from .config import CAPS, caps
from .errors import CapExceeded, DegreeError, DimensionError, ParseError
from .hochschild import Chain, WeylAlgebra, wedge_embed
from .parsing import parse_chain_lines, parse_chain_terms
from .suites import SUITES, RunConfig, random_rational_matrix, run_suite
from .weyl import WeylPoly, fmt_rational, gl_embed, quad_to_sp_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser():
    parser = _Parser(prog="weylcyc", description="Exact cyclic cocycles of the Weyl algebra.")
    parser.add_argument("--degree-cap", type=_positive, help="maximum polynomial degree")
    parser.add_argument("--expansion-cap", type=_positive, help="maximum expansion size")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval-tau", help="evaluate a cocycle component on a chain")
    ev.add_argument("--n", type=_positive, required=True)
    ev.add_argument("--r", type=_positive, default=1)
    ev.add_argument("--k", type=_nonnegative, help="component index, default n")
    src = ev.add_mutually_exclusive_group(required=True)
    src.add_argument("--chain", help='inline chain, e.g. "[1; p1; q1] - [1; q1; p1]"')
    src.add_argument("--chain-file", help="file with one chain per line")
    ev.add_argument("--format", choices=("json", "text"), default="text")

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", choices=tuple(SUITES), required=True)
    ver.add_argument("--n", type=_positive, default=1)
    ver.add_argument("--r", type=_positive, default=1)
    ver.add_argument("--k", type=_nonnegative)
    ver.add_argument("--m", type=_nonnegative)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--samples", type=_positive)
    ver.add_argument("--format", choices=("json", "text"), default="json")

    tab = sub.add_parser("table", help="print an exact table")
    tab.add_argument("kind", choices=("bernoulli", "cycle-weights", "ahat-components"))
    tab.add_argument("size", type=_nonnegative)
    tab.add_argument("--seed", type=int, default=0)
    tab.add_argument("--matrix", help='gl_n matrix for ahat-components, e.g. "1,2;-1,3"')
    tab.add_argument("--format", choices=("json", "text"), default="text")
    return parser


# -- eval-tau -------------------------------------------------------------------

def _fundamental_cycle(n):
    vs = []
    for j in range(1, n + 1):
        vs += [WeylPoly.p(n, j), WeylPoly.q(n, j)]
    return wedge_embed(vs, None, WeylAlgebra(n))


def _eval_one(args, terms, phi):
    chain = Chain.from_terms(terms, phi.algebra)
    if chain.length != phi.degree + 1:
        raise DegreeError(f"component tau_{2 * args.k} takes chains of length {phi.degree + 1}, "
                          f"got length {chain.length}")
    value = phi(chain)
    out = {"value": value, "length": chain.length, "words": len(chain.terms)}
    if args.r == 1 and args.k == args.n:
        out["plans"] = count_plans(args.n, chain)
        if chain == _fundamental_cycle(args.n):
            ref = factorial(2 * args.n)
            out["note"] = (f"fundamental cycle: kappa_{args.n} = {fmt_rational(value)}; "
                           f"(2n)! = {ref}; ratio = {fmt_rational(value / ref)}")
    return out


def cmd_eval(args):
    if args.k is None:
        args.k = args.n
    if args.k > args.n:
        raise DegreeError(f"component index k={args.k} exceeds n={args.n}")
    phi = tau_family_build(args.n, args.r).component(args.k)
    r = args.r if args.r > 1 else None
    if args.chain is not None:
        chains = [parse_chain_terms(args.chain, args.n, r)]
    else:
        with open(args.chain_file) as fh:
            chains = parse_chain_lines(fh.read(), args.n, r)
        if not chains:
            raise ParseError(f"{args.chain_file} contains no chains")
    results = [_eval_one(args, terms, phi) for terms in chains]
    meta = {"n": args.n, "r": args.r, "k": args.k}
    if args.format == "json":
        print(json.dumps({**meta, "results": [_to_json(x) for x in results]}, indent=2))
    else:
        for res in results:
            extra = "".join(f"  {key}={res[key]}" for key in ("length", "words", "plans") if key in res)
            print(f"{fmt_rational(res['value'])}{extra}")
            if "note" in res:
                print(f"  note: {res['note']}")
    return EXIT_OK


def _to_json(x):
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, dict):
        return {k: _to_json(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_to_json(v) for v in x]
    return x


# -- verify ---------------------------------------------------------------------

def cmd_verify(args):
    config = RunConfig(n=args.n, r=args.r, k=args.k, m=args.m, seed=args.seed, samples=args.samples)
    cert = run_suite(args.suite, config)
    print(cert.to_json() if args.format == "json" else cert.to_text())
    return EXIT_OK if cert.passed else EXIT_FAIL


# -- table ----------------------------------------------------------------------

def _parse_matrix(text):
    try:
        rows = [[Fraction(x.strip()) for x in row.split(",")] for row in text.split(";")]
    except ValueError as exc:
        raise ParseError(f"bad matrix {text!r}: {exc}") from None
    if any(len(row) != len(rows) for row in rows):
        raise ParseError(f"matrix {text!r} is not square")
    return rows


def _table_rows(args):
    if args.kind == "bernoulli":
        return ["j", "B_j"], [[j, b] for j, b in enumerate(bernoulli_numbers(args.size))]
    if args.kind == "cycle-weights":
        if args.size > CAPS.chambers:
            raise CapExceeded(f"cycle length {args.size} exceeds chamber cap {CAPS.chambers}")
        rows = []
        for l in range(2, args.size + 1):
            integral, formula = cycle_integral(l), cycle_weight_formula(l)
            rows.append([l, integral, formula, integral == formula])
        return ["l", "cube_integral", "(-1)^l B_l / l!", "match"], rows
    if args.size > CAPS.series:
        raise CapExceeded(f"series degree {args.size} exceeds series cap {CAPS.series}")
    x = _parse_matrix(args.matrix) if args.matrix else random_rational_matrix(random.Random(args.seed), 2)
    comps = ahat_components_sp(quad_to_sp_matrix(gl_embed(x, len(x))), args.size)
    label = ";".join(",".join(fmt_rational(v) for v in row) for row in x)
    return ["k", f"A-hat_k(x), x = [{label}]"], [[k, c] for k, c in enumerate(comps)]


def cmd_table(args):
    header, rows = _table_rows(args)
    cells = [[fmt_rational(v) if isinstance(v, Fraction) else str(v) for v in row] for row in rows]
    if args.format == "json":
        print(json.dumps({"table": args.kind, "size": args.size, "columns": header, "rows": cells}, indent=2))
        return EXIT_OK
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    print("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for row in cells:
        print("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return EXIT_OK


COMMANDS = {"eval-tau": cmd_eval, "verify": cmd_verify, "table": cmd_table}


def main(argv=None):
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        with caps(degree=args.degree_cap, expansion=args.expansion_cap):
            code = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc.diagnostic()}", file=sys.stderr)
        code = EXIT_USAGE
    except (DegreeError, DimensionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        code = EXIT_CAP
    print(f"runtime: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
