"""Command-line interface.

Exit codes: 0 success, 1 domain error (bad input, unknown command), 2
resource budget exceeded. Results go to stdout in the format picked by
--format (text, json, or csv); diagnostics go to stderr. Identical
invocations print identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import BasisKey, Ideal, ResourceBudgetError, format_word
from .cache import cache_from_env
from .coverage import all_certificates, certify_dimension, final_remark_instance, MoriParams, mori_check
from .differential import d
from .fparith import PrimeContext, is_odd_prime
from .homology import chart_csv, chart_text, e2_page
from .hopf import lemma_matrix, lemma_verdict, proposition_check, ses_dimension_check
from .rewrite import Element, format_element, parse_element
from . import algebra, hopf


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; domain errors here are exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _add_common(sp, *, fmt=True, budget=False):
    sp.add_argument("--p", type=int, required=True, help="odd prime")
    if fmt:
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    if budget:
        sp.add_argument("--term-budget", type=int, default=10_000_000,
                        help="max intermediate terms per straightening call")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lambdaalg", description=__doc__)
    parser.add_argument("--version", action="version", version=f"lambdaalg {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    sp = sub.add_parser("basis", parser_class=_Parser, help="admissible monomials of one cell")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True, help="bound on the first index")
    sp.add_argument("--m", type=int, required=True, help="degree")
    sp.add_argument("--l", type=int, required=True, help="length")
    sp.add_argument("--ideal", choices=("full", "lambda"), default="full")

    sp = sub.add_parser("reduce", parser_class=_Parser, help="straighten an element")
    _add_common(sp, budget=True)
    sp.add_argument("element", help="element in text grammar, e.g. 'm0 l2'")

    sp = sub.add_parser("diff", parser_class=_Parser, help="differential of an element")
    _add_common(sp, budget=True)
    sp.add_argument("element")

    sp = sub.add_parser("e2", parser_class=_Parser, help="homology chart of a sphere-level span")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True, help="bound on the first index")
    sp.add_argument("--max-deg", type=int, required=True)
    sp.add_argument("--max-len", type=int, default=None)
    sp.add_argument("--ideal", choices=("full", "lambda"), default="lambda")
    sp.add_argument("--include-empty", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--cache-dir", default=None, help="defaults to LAMBDA_CACHE_DIR")

    sp = sub.add_parser("lemma2", parser_class=_Parser,
                        help="tridiagonal span matrix of d, with determinant verdict")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("hopf-check", parser_class=_Parser,
                        help="dimension count of the Hopf short exact sequence, plus chain-map sweep")
    _add_common(sp)
    sp.add_argument("--max-deg", type=int, default=20)

    sp = sub.add_parser("prop-check", parser_class=_Parser,
                        help="does the homology cell of mu2 mu1^(k-3) lam1 hit its Hopf target")
    _add_common(sp)
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("certify", parser_class=_Parser,
                        help="nonvanishing certificate(s) for pi_n of the 2-sphere")
    sp.add_argument("--n", type=int, help="one dimension")
    sp.add_argument("--upto", type=int, help="sweep 2..N, one JSON line per n")
    sp.add_argument("--all", action="store_true", help="emit every certificate for n")
    sp.add_argument("--p-bound", type=int, default=50)
    sp.add_argument("--format", choices=("text", "json", "csv"), default="json")

    sp = sub.add_parser("mori", parser_class=_Parser, help="composition criterion arithmetic")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, help="final-remark family instance")
    sp.add_argument("--f", type=int)
    sp.add_argument("--g", type=int)
    sp.add_argument("--i", type=int)
    sp.add_argument("--j", type=int)
    sp.add_argument("--n", type=int, help="explicit n for a direct check")
    return parser


def _require_prime(p: int) -> None:
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime >= 3, got {p}")


def _emit_element(el: Element, fmt: str) -> None:
    if fmt == "json":
        print(_dumps(el.to_json()))
    elif fmt == "csv":
        print("coeff,word")
        for w, c in el.sorted_terms():
            print(f"{c},{format_word(w)}")
    else:
        print(format_element(el))


def _cmd_basis(args) -> int:
    _require_prime(args.p)
    key = BasisKey(args.p, args.n, args.m, args.l, Ideal(args.ideal))
    words = algebra.basis(key)
    if args.format == "json":
        print(_dumps([format_word(w) for w in words]))
    elif args.format == "csv":
        print("p,n,ideal,m,l,word")
        for w in words:
            print(f"{args.p},{args.n},{args.ideal},{args.m},{args.l},{format_word(w)}")
    else:
        for w in words:
            print(format_word(w))
    return 0


def _cmd_reduce(args) -> int:
    _require_prime(args.p)
    ctx = PrimeContext(args.p, term_budget=args.term_budget)
    _emit_element(parse_element(args.element, ctx), args.format)
    return 0


def _cmd_diff(args) -> int:
    _require_prime(args.p)
    ctx = PrimeContext(args.p, term_budget=args.term_budget)
    _emit_element(d(parse_element(args.element, ctx)), args.format)
    return 0


def _cmd_e2(args) -> int:
    _require_prime(args.p)
    cells = e2_page(
        args.p,
        args.n,
        args.max_deg,
        Ideal(args.ideal),
        max_length=args.max_len,
        include_empty=args.include_empty,
        jobs=args.jobs,
        cache=cache_from_env(args.cache_dir),
    )
    if args.format == "json":
        print(_dumps([c.to_json() for c in cells]))
    elif args.format == "csv":
        sys.stdout.write(chart_csv(cells))
    else:
        sys.stdout.write(chart_text(cells))
    return 0


def _cmd_lemma2(args) -> int:
    _require_prime(args.p)
    if args.k < 1:
        raise ValueError(f"k must be >= 1, got {args.k}")
    ctx = PrimeContext(args.p)
    mat = lemma_matrix(args.k, ctx)
    det, iso = lemma_verdict(args.k, ctx)
    det_formula = ((-1) ** (args.k + 1) * (args.k + 2)) % args.p
    print(_dumps({
        "k": args.k,
        "p": args.p,
        "matrix": [[mat.get(r, c) for c in range(mat.cols)] for r in range(mat.rows)],
        "det": det,
        "det_formula": det_formula,
        "is_isomorphism": iso,
    }))
    return 0


def _cmd_hopf_check(args) -> int:
    _require_prime(args.p)
    ctx = PrimeContext(args.p)
    report = ses_dimension_check(args.p, args.max_deg)
    chain_ok, checked = _chain_map_sweep(ctx, args.max_deg)
    payload = {
        "p": args.p,
        "max_degree": args.max_deg,
        "ses_ok": report.ok,
        "ses_cells": len(report.cells),
        "ses_failures": [
            {"m": c.m, "l": c.l, "total": c.dim_total,
             "low": c.dim_low, "lam2": c.dim_lam2, "image": c.dim_image}
            for c in report.failures
        ],
        "chain_map_ok": chain_ok,
        "chain_map_checked": checked,
    }
    if args.format == "csv":
        print("m,l,dim_total,dim_low,dim_lam2,dim_image,ok")
        for c in report.cells:
            print(f"{c.m},{c.l},{c.dim_total},{c.dim_low},{c.dim_lam2},{c.dim_image},{c.ok}")
    elif args.format == "text":
        status = "ok" if report.ok and chain_ok else "FAILED"
        print(f"hopf check p={args.p} max_deg={args.max_deg}: {status} "
              f"({len(report.cells)} cells, {checked} chain-map monomials)")
        for c in report.failures:
            print(f"  cell ({c.m},{c.l}): {c.dim_total} != {c.dim_low}+{c.dim_lam2}+{c.dim_image}")
    else:
        print(_dumps(payload))
    return 0


def _chain_map_sweep(ctx: PrimeContext, max_degree: int) -> tuple[bool, int]:
    # mu_0 tails beyond two add nothing: d skips mu_0 and the tail rides along
    cap = max_degree // (2 * ctx.p - 3) + 2
    table = algebra.enumerate_up_to(ctx.p, 2, max_degree, Ideal.FULL, max_length=cap)
    checked = 0
    ok = True
    for cell in table.values():
        for word in cell:
            el = Element(ctx, {word: 1})
            if hopf.hopf_map(d(el)) != d(hopf.hopf_map(el)):
                ok = False
            checked += 1
    return ok, checked


def _cmd_prop_check(args) -> int:
    _require_prime(args.p)
    if args.k < 2:
        raise ValueError(f"k must be >= 2, got {args.k}")
    ctx = PrimeContext(args.p)
    hit = proposition_check(args.k, ctx)
    m = 2 * (args.p - 1) * args.k - 1
    payload = {"p": args.p, "k": args.k, "m": m, "l": args.k - 1, "hits_target": hit}
    if args.format == "text":
        print(f"p={args.p} k={args.k}: cell (m={m}, l={args.k - 1}) "
              f"{'hits' if hit else 'does not hit'} the Hopf target")
    else:
        print(_dumps(payload))
    return 0


def _cmd_certify(args) -> int:
    if args.n is None and args.upto is None:
        raise ValueError("certify needs --n or --upto")
    ns = [args.n] if args.n is not None else list(range(2, args.upto + 1))
    rows = []
    for n in ns:
        if args.all:
            certs = all_certificates(n, args.p_bound)
        else:
            certs = [certify_dimension(n)]
        for cert in certs:
            cert.validate()
            rows.append(cert)
    if args.format == "csv":
        print("n,kind,residue,p,k,statement")
        for c in rows:
            print(f"{c.n},{c.kind},{c.residue if c.residue is not None else ''},"
                  f"{c.p if c.p else ''},{c.k if c.k else ''},{c.statement or ''}")
    elif args.format == "text":
        for c in rows:
            if c.kind == "CURTIS_RESIDUE":
                print(f"n={c.n}: residue family (n mod 8 = {c.residue})")
            else:
                print(f"n={c.n}: Z/{c.p} via k={c.k} (statement {c.statement})")
    else:
        for c in rows:
            print(_dumps(c.to_json()))
    return 0


def _cmd_mori(args) -> int:
    _require_prime(args.p)
    explicit = [args.f, args.g, args.i, args.j]
    if args.k is not None:
        res = final_remark_instance(args.p, args.k)
        print(_dumps(res.to_json()))
        return 0
    if any(v is None for v in explicit) or args.n is None:
        raise ValueError("mori needs either --k, or all of --f --g --i --j --n")
    params = MoriParams(args.p, args.f, args.g, args.i, args.j)
    print(_dumps({
        "p": args.p, "f": args.f, "g": args.g, "i": args.i, "j": args.j,
        "u": params.u, "n": args.n, "holds": mori_check(params, args.n),
    }))
    return 0


_COMMANDS = {
    "basis": _cmd_basis,
    "reduce": _cmd_reduce,
    "diff": _cmd_diff,
    "e2": _cmd_e2,
    "lemma2": _cmd_lemma2,
    "hopf-check": _cmd_hopf_check,
    "prop-check": _cmd_prop_check,
    "certify": _cmd_certify,
    "mori": _cmd_mori,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except ResourceBudgetError as exc:
        print(f"lambdaalg: resource budget exceeded: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"lambdaalg: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
