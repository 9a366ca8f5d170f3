"""khovlab command line.

Exit codes: 0 success, 1 a verification or check failed, 2 bad usage,
3 a size guard or precondition was violated.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import serialize as ser
from .bounds import default_kmax, threshold_report
from .cache import ResultCache, mn_ehrhart, mn_sequence
from .errors import GuardExceeded
from .lattice import build_mn, primes_upto, vector_value
from .polynomials import InsufficientData, default_window, detect_stabilization, finite_differences
from .polytope import DegenerateHullError, HullSpec, closedness_report, sandwich_check
from .verify import LEVELS, Verification


class CommandError(Exception):
    """Precondition failure reported with exit code 3."""


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _halfspace(text: str) -> tuple[list[int], int]:
    """Parse 'c1,c2,...:rhs'."""
    try:
        lhs, rhs = text.split(":")
        coeffs = [int(c) for c in lhs.split(",")]
        bound = int(rhs)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected COEFFS:RHS like 6,10,15:30, got {text!r}")
    if not coeffs or any(c <= 0 for c in coeffs) or bound <= 0:
        raise argparse.ArgumentTypeError("coefficients and right-hand side must be positive")
    return coeffs, bound


def _fmt_table(headers: list[str], rows: list[list]) -> str:
    cells = [headers] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


# -- subcommands ------------------------------------------------------------------
# each returns (payload, text, exit code)

def cmd_mn(args, cache):
    basis = primes_upto(args.n)
    mn = build_mn(args.n)
    elements = [{"value": vector_value(v, basis), "vector": list(v)} for v in mn]
    payload = {"n": args.n, "d": basis.d, "primes": list(basis.primes), "size": len(mn), "elements": elements}
    text = f"M_{args.n} over primes {list(basis.primes)} ({len(mn)} vectors)\n"
    text += _fmt_table(["value", "vector"], [[e["value"], tuple(e["vector"])] for e in elements])
    return payload, text, 0


def cmd_pkn(args, cache):
    seq = mn_sequence(args.n, args.k, cache)
    return {"n": args.n, "k": args.k, "p": seq[args.k]}, str(seq[args.k]), 0


def cmd_sequence(args, cache):
    seq = mn_sequence(args.n, args.kmax, cache)
    d = primes_upto(args.n).d
    diffs = {
        str(order): finite_differences(seq, order) for order in range(1, min(d + 1, len(seq)) + 1)
    }
    payload = {"n": args.n, "d": d, "kmax": args.kmax, "values": list(seq), "differences": diffs}
    rows = [[k, v] + [diffs[o][k] if k < len(diffs[o]) else "" for o in diffs] for k, v in enumerate(seq)]
    text = _fmt_table(["k", f"p(k,{args.n})"] + [f"D^{o}" for o in diffs], rows)
    return payload, text, 0


def cmd_fit(args, cache):
    d = primes_upto(args.n).d
    window = args.window if args.window is not None else default_window(d)
    seq = mn_sequence(args.n, args.kmax, cache)
    try:
        fit = detect_stabilization(seq, d, window)
    except InsufficientData as exc:
        raise CommandError(f"{exc}; increase --kmax to at least {2 * d + window}") from exc
    payload = {"n": args.n, "d": d, "kmax": args.kmax, "window": window, "stabilized": fit is not None,
               "fit": ser.stabilization(fit)}
    if fit is None:
        return payload, f"no polynomial of degree <= {d} fits p(k,{args.n}) within k <= {args.kmax}", 0
    text = "\n".join([
        f"q_{args.n}(t) = {fit.polynomial}",
        f"          = {fit.polynomial.binomial_str()}",
        f"degree {fit.polynomial.degree}, empirical threshold k0 = {fit.threshold}, "
        f"confirmed up to k = {fit.confirmed_upto}",
        "(empirical: agreement beyond the confirmed range is only guaranteed past the proven threshold)",
    ])
    return payload, text, 0


def cmd_ehrhart(args, cache):
    res = mn_ehrhart(args.n, cache)
    payload = {"n": args.n, "d": primes_upto(args.n).d, **ser.ehrhart(res)}
    text = "\n".join([
        f"L(Q_{args.n}, t) = {res.polynomial}",
        f"counts t=0..{len(res.counts) - 1}: {list(res.counts)}",
        f"volume = {res.volume}",
    ])
    return payload, text, 0


def cmd_sandwich(args, cache):
    rows = sandwich_check(args.n, args.kmax)
    ok = all(r.ok for r in rows)
    d = primes_upto(args.n).d
    payload = {"n": args.n, "d": d, "rows": ser.sandwich(rows), "ok": ok}
    text = _fmt_table(
        ["k", "p(k,n)", "L(Q_n,k)", f"p(k+{d},n)", "ok"],
        [[r.k, r.p_k, r.lattice_count, r.p_k_plus_d, "yes" if r.ok else "NO"] for r in rows],
    )
    return payload, text, 0 if ok else 1


def cmd_closedness(args, cache):
    if args.halfspace is not None:
        coeffs, rhs = args.halfspace
        if any(rhs % c for c in coeffs):
            raise CommandError("the simplex needs integral vertices: every coefficient must divide the right-hand side")
        dim = len(coeffs)
        vertices = [(0,) * dim] + [tuple(rhs // c if i == j else 0 for j in range(dim)) for i, c in enumerate(coeffs)]
        spec = HullSpec.from_points(vertices)
    else:
        spec = HullSpec.for_n(args.n)
    kmax = args.kmax if args.kmax is not None else max(1, spec.d - 1)
    report = closedness_report(spec, kmax)
    payload = ser.closedness(report)
    lines = [f"{spec.describe()}, k = 1..{kmax}"]
    lines.append(_fmt_table(
        ["k", "|k*Q|", "|int(kQ)|", "closed", "witnesses"],
        [[r.k, r.star_count, r.lattice_count, "yes" if r.closed else "no", r.witness_count] for r in report.rows],
    ))
    for r in report.rows:
        if r.witness_count:
            shown = ", ".join(str(w) for w in r.witnesses)
            more = f" ... ({r.witness_count} total)" if r.witness_count > len(r.witnesses) else ""
            lines.append(f"k={r.k} gap witnesses: {shown}{more}")
    lines.append("verdicts cover only the tested k")
    return payload, "\n".join(lines), 0


def cmd_threshold(args, cache):
    d = primes_upto(args.n).d
    kmax = args.kmax if args.kmax is not None else default_kmax(d)
    report = threshold_report(args.n, kmax, sequence=mn_sequence(args.n, kmax, cache),
                              ehrhart_result=mn_ehrhart(args.n, cache))
    payload = ser.threshold(report)
    cache.update(args.n, threshold_report=payload)
    emp = report.empirical
    lines = [
        f"n = {report.n}, d = {report.d}, |M_n| = {report.n}",
        f"Vol(Q_n)                  = {report.volume}",
        f"volume bound              in [{float(report.volume_bound.lo):.6f}, {float(report.volume_bound.hi):.6f}]",
        f"GSW threshold (exact)     = {report.gsw_exact}",
        f"log-simplex threshold     in [{float(report.log_simplex_bound.lo):.6f}, "
        f"{float(report.log_simplex_bound.hi):.6f}] -> k >= {report.threshold_ceiling}",
        "empirical threshold       = "
        + (f"{emp.threshold} (confirmed up to k = {emp.confirmed_upto})" if emp else f"unavailable (kmax = {kmax} too small)"),
    ]
    lines += [f"  {name:32s} {'pass' if ok else 'FAIL'}" for name, ok in sorted(report.verdicts.items())]
    return payload, "\n".join(lines), 0


def cmd_verify(args, cache):
    results = Verification(args.nmax, args.level, cache).run()
    passed = all(r.passed for r in results)
    payload = {"nmax": args.nmax, "level": args.level, "passed": passed,
               "criteria": [r.as_dict() for r in results]}
    text = "\n".join([r.line() for r in results] + [f"{'ALL PASSED' if passed else 'FAILURES'}"])
    return payload, text, 0 if passed else 1


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--cache", metavar="DIR", help="result cache directory (default: $KHOVLAB_CACHE)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="khovlab", description="Products of k factors from {1..n}, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mn", parents=[common], help="list M_n")
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_mn)

    p = sub.add_parser("pkn", parents=[common], help="p(k, n)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_nonnegative, required=True)
    p.set_defaults(func=cmd_pkn)

    p = sub.add_parser("sequence", parents=[common], help="p(k, n) for k <= kmax with finite differences")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--kmax", type=_nonnegative, required=True)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("fit", parents=[common], help="stabilized polynomial q_n and empirical threshold")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--kmax", type=_nonnegative, required=True)
    p.add_argument("--window", type=_positive)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("ehrhart", parents=[common], help="Ehrhart polynomial and volume of Q_n")
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("sandwich", parents=[common], help="p(k,n) <= L(Q_n,k) <= p(k+d,n)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--kmax", type=_positive, required=True)
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("closedness", parents=[common], help="integral closedness up to kmax")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--n", type=_positive)
    target.add_argument("--halfspace", type=_halfspace, metavar="C1,...,Cd:RHS",
                        help="simplex {x >= 0, sum c_i x_i <= rhs}")
    p.add_argument("--kmax", type=_positive, help="default: max(1, d - 1)")
    p.set_defaults(func=cmd_closedness)

    p = sub.add_parser("threshold", parents=[common], help="effective and empirical thresholds")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--kmax", type=_nonnegative, help="default: 2d + 2")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--level", choices=LEVELS, default="fast")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cache = ResultCache.from_env(args.cache)
        payload, text, code = args.func(args, cache)
    except (GuardExceeded, InsufficientData, DegenerateHullError, CommandError) as exc:
        print(f"khovlab {args.command}: {exc}", file=sys.stderr)
        return 3
    if args.format == "json":
        print(ser.dumps(ser.document(args.command, payload)))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
