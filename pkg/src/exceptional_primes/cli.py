"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 factorization timeout (a partial
report is still written), 4 internal invariant violation. ``sieve`` and
``rideal`` also exit 3 when a displayed factorization is left unsplit.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import arith
from .arith import FactorizationTimeout
from .config import RunConfig, parse_config
from .criteria import (
    PhiInput,
    factor_r,
    factor_sieve,
    ideal_traces,
    legal_phi_orders,
    p_ell_star,
    phi_order_from_valuation,
    phi_uniform_test,
    r_ideal_data,
    reduced_forms,
)
from .errors import (
    BadDiscriminant,
    BadReductionPrime,
    ConfigError,
    ExceptionalPrimesError,
    IllegalPhiOrder,
    IndexDivisor,
    InvariantViolation,
    NoUsablePrimes,
)
from .pipeline import TraceCache, render_text, run_pipeline, serialize

EXIT_OK, EXIT_INVALID, EXIT_TIMEOUT, EXIT_INTERNAL = 0, 2, 3, 4

log = logging.getLogger("exceptional_primes")


def _ells(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of primes, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized factoring")
    common.add_argument("--cache", metavar="PATH", help="JSON-lines trace cache")
    common.add_argument("--verify-cache", action="store_true", help="recompute a sample of cache hits")
    common.add_argument("-v", "--verbose", action="store_true")

    cfg = argparse.ArgumentParser(add_help=False)
    cfg.add_argument("--config", required=True, metavar="PATH", help="TOML run configuration")
    group = cfg.add_mutually_exclusive_group()
    group.add_argument("--ells", type=_ells, metavar="L1,L2", help="primes ell to sieve with")
    group.add_argument("--ell-bound", type=int, metavar="N", help="sieve with every prime ell <= N")
    cfg.add_argument("--eliminate-bound", type=int, metavar="N", help="search bound for certificates")

    parser = argparse.ArgumentParser(
        prog="exceptional-primes",
        description="Sieve for the primes p with a reducible mod-p representation of an elliptic curve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("traces", parents=[common, cfg], help="Frobenius traces at every prime above each ell")
    sub.add_parser("sieve", parents=[common, cfg], help="P_ell* and B_ell with factorizations")
    sub.add_parser("rideal", parents=[common, cfg], help="R_q for the configured gamma data")
    sub.add_parser("candidates", parents=[common, cfg], help="full pipeline with elimination and witnesses")
    forms = sub.add_parser("forms", parents=[common], help="reduced binary quadratic forms")
    forms.add_argument("D", type=int, help="negative discriminant")
    phi = sub.add_parser("phi", parents=[common], help="uniform criteria from |Phi_q|")
    phi.add_argument("--ell", type=int, required=True)
    phi.add_argument("--f", type=int, default=1, help="residue degree of q")
    order = phi.add_mutually_exclusive_group(required=True)
    order.add_argument("--order", type=int, help="|Phi_q|")
    order.add_argument("--valuation", type=int, help="v_q(Delta) of a minimal model (ell >= 5 only)")
    return parser


def _colour(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _sieve_ells(args, config: RunConfig) -> list[int]:
    if args.ells is not None:
        return sorted(set(args.ells))
    if args.ell_bound is not None:
        return list(arith.primes_up_to(args.ell_bound))
    return config.sieve_primes()


def _cmd_traces(args, config, cache) -> int:
    seed = config.seed if args.seed is None else args.seed
    curve = config.working_curve
    rows, lines = [], []
    for ell in _sieve_ells(args, config):
        try:
            data = ideal_traces(curve, ell, seed, cache)
        except (BadReductionPrime, IndexDivisor) as exc:
            rows.append({"ell": str(ell), "skipped": str(exc)})
            lines.append(f"ell = {ell}: skipped ({exc})")
            continue
        rows.append({
            "ell": str(ell),
            "ideals": [
                {"gen": [str(c) for c in fd.ideal.gen.coeffs], "e": fd.ideal.e, "f": fd.ideal.f,
                 "trace": str(fd.trace), "norm": str(fd.norm)}
                for fd in data
            ],
        })
        for fd in data:
            lines.append(f"ell = {ell}  q = {fd.ideal.label}  N(q) = {fd.norm}  t_q = {fd.trace}")
    _emit(args, {"traces": rows}, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_sieve(args, config, cache) -> int:
    seed = config.seed if args.seed is None else args.seed
    curve = config.working_curve
    rows, lines, status = [], [], EXIT_OK
    for ell in _sieve_ells(args, config):
        try:
            res = factor_sieve(p_ell_star(curve, ell, seed, cache), **config.budget)
        except (BadReductionPrime, IndexDivisor) as exc:
            rows.append({"ell": str(ell), "skipped": str(exc)})
            lines.append(f"ell = {ell}: skipped ({exc})")
            continue
        if res.unsplit:
            status = EXIT_TIMEOUT
        row = {
            "ell": str(ell),
            "p_ell_star": [str(c) for c in res.p_ell_star.coeffs],
            "b_ell": str(res.b_ell),
            "factored": str(res.factorization) if res.factorization else ("0" if res.b_ell == 0 else None),
            "unsplit": [str(c) for c in res.unsplit],
        }
        rows.append(row)
        lines.append(f"ell = {ell}")
        lines.append(f"  P* = {res.p_ell_star}")
        lines.append(f"  B  = {res.b_ell}")
        if row["factored"]:
            tail = f" * [unsplit {', '.join(row['unsplit'])}]" if res.unsplit else ""
            lines.append(f"     = {row['factored']}{tail}")
    _emit(args, {"sieve": rows}, "\n".join(lines) + "\n")
    return status


def _cmd_rideal(args, config, cache) -> int:
    curve = config.working_curve
    rows, lines, status = [], [], EXIT_OK
    for ri in config.r_inputs():
        rr = factor_r(r_ideal_data(curve, ri.ideal, ri.h, ri.m_gamma, cache), **config.budget)
        if rr.unsplit:
            status = EXIT_TIMEOUT
        rows.append({
            "ideal": ri.ideal.label,
            "h": ri.h,
            "h_defaulted": ri.h_defaulted,
            "m_gamma": [str(c) for c in ri.m_gamma.coeffs],
            "trace": str(rr.frobenius.trace),
            "value": str(rr.value),
            "factored": str(rr.factorization) if rr.factorization else None,
            "unsplit": [str(c) for c in rr.unsplit],
        })
        lines.append(f"q = {ri.ideal.label}  t_q = {rr.frobenius.trace}  h = {ri.h} (asserted)")
        lines.append(f"  R = {rr.value}")
        if rr.factorization:
            lines.append(f"    = {rr.factorization}")
    if not rows:
        lines.append("no gamma data in the configuration")
    _emit(args, {"r_ideals": rows}, "\n".join(lines) + "\n")
    return status


def _cmd_candidates(args, config, cache) -> int:
    ells = _sieve_ells(args, config)
    result = run_pipeline(config, seed=args.seed, cache=cache, eliminate_bound=args.eliminate_bound, ells=ells)
    report = result.report
    if args.json:
        sys.stdout.write(serialize(report))
    else:
        text = render_text(report)
        text = text.replace("EXCEPTIONAL", _colour("EXCEPTIONAL", "1;31"))
        sys.stdout.write(text)
    # gaps here are display factorizations only; the candidate set comes from
    # a fully factored gcd, and a timeout there raises instead
    return EXIT_OK


def _cmd_forms(args) -> int:
    forms = reduced_forms(args.D)
    text = "\n".join(f"({a}, {b}, {c})" for a, b, c in forms) + "\n"
    _emit(args, {"D": str(args.D), "forms": [list(f) for f in forms]}, text)
    return EXIT_OK


def _cmd_phi(args) -> int:
    order = args.order
    if order is None:
        if args.ell < 5:
            raise IllegalPhiOrder("--valuation is only meaningful for ell >= 5")
        order = phi_order_from_valuation(args.valuation)
    conclusion = phi_uniform_test(PhiInput(args.ell, args.f, order))
    payload = {"ell": args.ell, "f": args.f, "phi_order": order, "order_asserted": args.order is None,
               "conclusion": conclusion.value, "legal_orders": sorted(legal_phi_orders(args.ell))}
    _emit(args, payload, f"{conclusion.value}\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "forms":
            return _cmd_forms(args)
        if args.command == "phi":
            return _cmd_phi(args)
        config = parse_config(args.config)
        cache = None
        if args.cache:
            cache = TraceCache(args.cache, verify=args.verify_cache, seed=config.seed)
        handler = {"traces": _cmd_traces, "sieve": _cmd_sieve, "rideal": _cmd_rideal,
                   "candidates": _cmd_candidates}[args.command]
        return handler(args, config, cache)
    except (ConfigError, IllegalPhiOrder, BadDiscriminant, NoUsablePrimes, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FactorizationTimeout as exc:
        json.dump({"error": "factorization timeout", "n": str(exc.n), "partial": str(exc.partial),
                   "unsplit": [str(c) for c in exc.composites]}, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return EXIT_TIMEOUT
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ExceptionalPrimesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
