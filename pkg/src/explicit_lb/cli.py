"""Command-line front end.

Exit codes: 0 success, 1 a claimed verification failed (or an explicit-formula
check did not close), 2 usage or evaluation error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .config import FORMATS, RunConfig, load_config
from .errors import ExplicitLBError
from .reports import envelope, render

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2
VERIFY_TARGETS = ("all", "lemma31a", "lemma31b", "psi", "ramare", "lambda", "constants")
THEOREMS = ("1.1", "1.3", "1.5", "1.6", "cor1.2")
CAMPAIGN_CEILING = 4e6
RAMARE_CEILING = 1e6


class _Context:
    def __init__(self, args, config: RunConfig, argv):
        self.args = args
        self.config = config
        self.argv = list(argv)
        self.exit_code = EXIT_OK

    def emit(self, kind: str, data: dict, fmt: str | None = None):
        doc = envelope(kind, data, command=self.argv, config=self.config.to_dict())
        text = render(doc, fmt or self.config.output_format)
        if self.args.output:
            Path(self.args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return doc


def _table(limit: int):
    from .arith_primes import build_lambda_table

    return build_lambda_table(int(limit))


# --------------------------------------------------------------------------
# sieve


def cmd_sieve(ctx: _Context):
    from .arith_primes import load_table, save_table

    a = ctx.args
    table = load_table(a.load) if a.load else _table(a.limit or ctx.config.sieve_limit)
    if a.save:
        save_table(table, a.save)
    rows = []
    for x in a.x:
        k = table.count_upto(x)
        if ctx.config.summation == "fsum":
            psi = math.fsum(table.log_p[:k].tolist())
            mert = math.fsum((table.log_p[:k] / table.prime_powers[:k]).tolist())
        else:
            psi = table.psi(x)
            mert = table.mertens_lambda_sum(x)
        rows.append({"x": x, "prime_powers": k, "psi": psi, "lambda_over_n": mert})
    ctx.emit("sieve", {"limit": table.limit, "prime_powers": int(table.prime_powers.size),
                       "summation": ctx.config.summation, "points": rows})


# --------------------------------------------------------------------------
# characters


def _char_row(chi) -> dict:
    from .characters import is_primitive

    return {"label": chi.label, "order": chi.order, "parity": chi.parity_a,
            "conductor": chi.conductor(), "primitive": is_primitive(chi), "real": chi.is_real}


def cmd_char(ctx: _Context):
    from .characters import character_from_label, enumerate_characters, primitive_characters

    a = ctx.args
    if a.label:
        chi = character_from_label(a.label)
        data = _char_row(chi)
        data["values"] = [{"n": n, "value": chi.evaluate(n)} for n in a.n]
        ctx.emit("character", data)
        return
    chars = primitive_characters(a.q) if a.primitive else enumerate_characters(a.q)
    ctx.emit("characters", {"modulus": a.q, "primitive_only": a.primitive,
                            "characters": [_char_row(c) for c in chars]})


# --------------------------------------------------------------------------
# L-functions


def cmd_lfunc_eval(ctx: _Context):
    from .characters import character_from_label, is_primitive
    from .lfunctions import L_value, b_chi, log_deriv_L, zeta_logderiv_one_line, zeta_value

    a = ctx.args
    s = complex(a.sigma, a.t)
    if a.chi is None:
        data = {"function": "zeta", "s": s}
        z = zeta_value(s)
        data.update(value=z.value, value_error=z.est_error, method=z.method)
        if a.sigma == 1:
            r = zeta_logderiv_one_line(a.t)
            data.update(log_derivative=r.value, log_derivative_error=r.est_error)
    else:
        chi = character_from_label(a.chi)
        data = {"function": "L", "character": chi.label, "s": s}
        v = L_value(s, chi)
        r = log_deriv_L(s, chi)
        data.update(value=v.value, value_error=v.est_error, log_derivative=r.value,
                    log_derivative_error=r.est_error, method=r.method)
        if s == 1 and is_primitive(chi):
            b = b_chi(chi)
            data.update(b=b.value, b_error=b.est_error)
    ctx.emit("lfunc", data)


def cmd_lfunc_desk(ctx: _Context):
    from .desk import desk_report

    a = ctx.args
    data = desk_report(q_max=a.q_max, q_min=a.q_min, parallelism=ctx.config.parallelism)
    ctx.emit("desk_report", data)


# --------------------------------------------------------------------------
# bounds


def _bound_report(theorem: str, q: str, sigma: float | None, lam: float | None):
    from . import bounds as B

    L = B.parse_magnitude(q)
    if theorem == "1.1":
        return B.thm11_bound(log_q=L, lam=lam or B.LAMBDA_THM11)
    if theorem == "1.6":
        return B.thm16_bound(log_t=L, lam=lam or B.LAMBDA_THM11)
    if theorem == "cor1.2":
        return B.corollary_b_report(log_q=L)
    if sigma is None:
        raise ExplicitLBError(f"theorem {theorem} needs --sigma")
    if theorem == "1.3":
        return B.thm13_bound(sigma, log_q=L)
    value = B.thm15_main_term(sigma, log_q=L)
    return B.BoundReport(
        "thm15", {"sigma": sigma, "log_q": L},
        [B.Term("c(s) L^(2-2s)", "imaginary part: main term", value)],
        validity_note="main term only; the lower-order term is not included",
        extras={"coefficient": B.thm15_coefficient(sigma)},
    )


def cmd_bounds_eval(ctx: _Context):
    a = ctx.args
    rep = _bound_report(a.theorem, a.q, a.sigma, a.lam)
    ctx.emit("bound_report", rep.to_dict())


def _thresholds(ctx: _Context, kind: str):
    from .bounds import threshold_search

    kinds = ("dirichlet", "zeta") if kind == "both" else (kind,)
    ctx.emit("thresholds", {"thresholds": [threshold_search(k) for k in kinds]})


def cmd_bounds_threshold(ctx: _Context):
    _thresholds(ctx, ctx.args.kind)


def cmd_thresholds(ctx: _Context):
    _thresholds(ctx, ctx.args.kind)


# --------------------------------------------------------------------------
# verification campaigns


def cmd_verify(ctx: _Context):
    from . import verify_campaigns as V
    from .arith_primes import DEFAULT_LIMIT

    a = ctx.args
    target = a.target
    ceiling = a.limit or CAMPAIGN_CEILING
    if ceiling > CAMPAIGN_CEILING:
        print(f"warning: campaigns extended to {ceiling:.6g}; expect longer runtime", file=sys.stderr)
    data: dict = {}
    campaigns = []
    failed = False
    needs_table = target in ("all", "lemma31a", "lemma31b", "psi", "ramare")
    table = None
    if target == "lemma31a":
        table = _table(100)
    elif needs_table:
        table = _table(max(int(ceiling) + 1, DEFAULT_LIMIT))
    if target in ("all", "lemma31a"):
        campaigns.append(V.verify_lemma31_first(table))
        if a.explore:
            campaigns.append(V.verify_lemma31_first(table, lo=2, hi=60, claimed=False))
    if target in ("all", "lemma31b"):
        campaigns.append(V.verify_lemma31_second(table, hi=ceiling))
        if a.explore:
            campaigns.append(V.verify_lemma31_second(table, lo=2, hi=32, claimed=False))
    if target in ("all", "psi"):
        campaigns.extend(V.verify_psi_schoenfeld(table, limit=ceiling))
        if a.explore:
            probe = V.verify_psi_schoenfeld(table, limit=59, two_sided_from=2)[0]
            probe.claimed = False
            probe.claim_id = "psi_two_sided_below_59"
            campaigns.append(probe)
    for c in campaigns:
        if c.claimed and c.status != "verified":
            failed = True
    if target in ("all", "ramare"):
        r = V.find_ramare_counterexamples(table, x_max=min(RAMARE_CEILING, ceiling))
        # the expected outcome is a refutation: counterexamples at and above 10^4
        d = r.to_dict()
        large = [x for x in r.violations if x >= 1e4]
        d["counterexamples_at_or_above_1e4"] = len(large)
        if a.recheck:
            rc = V.recheck_ramare(table, r.violations)
            d["recheck"] = {"points": len(rc), "confirmed": sum(p["confirmed"] for p in rc),
                            "all_confirmed": all(p["confirmed"] for p in rc)}
            failed |= not d["recheck"]["all_confirmed"]
        failed |= r.status != "violated" or not large
        campaigns.append(d)
    if campaigns:
        data["campaigns"] = [c if isinstance(c, dict) else c.to_dict() for c in campaigns]
    if target in ("all", "lambda"):
        lam, const = V.optimize_lambda()
        data["lambda"] = {"lambda_star": lam, "constant": const, "residual": V.first_order_residual(lam)}
    if target in ("all", "constants"):
        from .bounds import bound_constants

        checks = bound_constants() + V.quadrature_constants()
        data["constants"] = [{"name": k.name, "computed": k.computed, "displayed": k.displayed,
                              "direction": k.direction, "margin": k.margin, "ok": k.ok, "route": k.route}
                             for k in checks]
        failed |= not all(k.ok for k in checks)
    ctx.emit("campaign_report", data, "json" if a.json else None)
    ctx.exit_code = EXIT_VIOLATION if failed else EXIT_OK


# --------------------------------------------------------------------------
# explicit formula


def _zeros_path(ctx: _Context) -> str:
    path = ctx.args.zeros or ctx.config.zeta_zeros
    if not path:
        raise ExplicitLBError("no zero table: pass --zeros or set zeta_zeros in the config")
    return path


def cmd_ef_check(ctx: _Context):
    from .bandlimited import MajorantParams
    from .explicit_formula import arch_prime_components, load_zeros, zero_side

    a = ctx.args
    zeros = load_zeros(_zeros_path(ctx))
    params = MajorantParams(a.a, a.delta)
    table = _table(max(int(math.exp(2 * math.pi * a.delta)) + 2, 100))
    rows = []
    for shift in a.shift:
        value, tail = zero_side(params, shift, zeros)
        comp = arch_prime_components(params, shift, table)
        diff = value - comp.total
        tol = tail + a.tolerance
        rows.append({"shift": shift, "zero_side": value, "tail_bound": tail,
                     "pole_term": comp.pole_term, "conductor_term": comp.conductor_term,
                     "gamma_integral": comp.gamma_integral, "prime_sum": comp.prime_sum,
                     "arch_prime_side": comp.total, "difference": diff, "closes": abs(diff) <= tol})
    ctx.emit("explicit_formula", {"a": a.a, "delta": a.delta, "zeros": zeros.count, "height": zeros.height,
                                  "tolerance": a.tolerance, "checks": rows})
    if not all(r["closes"] for r in rows):
        ctx.exit_code = EXIT_VIOLATION


def cmd_ef_reciprocal(ctx: _Context):
    from .explicit_formula import ZERO_RECIPROCAL_TARGET, load_zeros, zero_reciprocal_sum

    zeros = load_zeros(_zeros_path(ctx))
    value, tail = zero_reciprocal_sum(zeros)
    ok = abs(value + tail / 2 - ZERO_RECIPROCAL_TARGET) <= tail / 2 + 1e-9
    ctx.emit("zero_reciprocal", {"zeros": zeros.count, "height": zeros.height, "value": value,
                                 "tail_bound": tail, "target": ZERO_RECIPROCAL_TARGET, "within_band": ok})
    if not ok:
        ctx.exit_code = EXIT_VIOLATION


# --------------------------------------------------------------------------
# parser


def _common_options(p: argparse.ArgumentParser, default=None):
    p.add_argument("--config", default=default, help="key = value configuration file")
    p.add_argument("--format", choices=FORMATS, default=default, help="output format (default from config: json)")
    p.add_argument("--output", "-o", default=default, help="write the report here instead of stdout")
    p.add_argument("--parallelism", type=int, default=default, help="worker processes for grid scans")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="explicit-lb", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common_options(p)
    # the same options after the subcommand; SUPPRESS keeps the top-level value when absent
    common = argparse.ArgumentParser(add_help=False)
    _common_options(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sieve", parents=[common], help="von Mangoldt table, psi(x) and sum Lambda(n)/n")
    s.add_argument("--limit", type=int)
    s.add_argument("--x", type=float, nargs="*", default=[10.0])
    s.add_argument("--save", help="write the binary table cache")
    s.add_argument("--load", help="read a binary table cache instead of sieving")
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("char", parents=[common], help="Dirichlet characters")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--q", type=int, help="list the characters mod q")
    g.add_argument("--label", help="one character, as q.index")
    s.add_argument("--primitive", action="store_true", help="only primitive characters")
    s.add_argument("--n", type=int, nargs="*", default=[], help="evaluate at these n (with --label)")
    s.set_defaults(func=cmd_char)

    s = sub.add_parser("lfunc", help="L-function values")
    lsub = s.add_subparsers(dest="lfunc_command", required=True)
    e = lsub.add_parser("eval", parents=[common], help="L(s, chi) and L'/L(s, chi), or zeta without --chi")
    e.add_argument("--chi", help="character label q.index")
    e.add_argument("--sigma", type=float, required=True)
    e.add_argument("--t", type=float, default=0.0)
    e.set_defaults(func=cmd_lfunc_eval)
    e = lsub.add_parser("desk-report", parents=[common], help="exploratory table for small moduli")
    e.add_argument("--q-max", type=int, default=200)
    e.add_argument("--q-min", type=int, default=3)
    e.set_defaults(func=cmd_lfunc_desk)

    s = sub.add_parser("bounds", help="evaluate the closed-form bounds")
    bsub = s.add_subparsers(dest="bounds_command", required=True)
    e = bsub.add_parser("eval", parents=[common])
    e.add_argument("--theorem", choices=THEOREMS, required=True)
    e.add_argument("--q", required=True, help="modulus or height: 1e30, 10^40, e^70 ...")
    e.add_argument("--sigma", type=float)
    e.add_argument("--lam", type=float)
    e.set_defaults(func=cmd_bounds_eval)
    e = bsub.add_parser("threshold", parents=[common])
    e.add_argument("--kind", choices=("dirichlet", "zeta", "both"), default="both")
    e.set_defaults(func=cmd_bounds_threshold)

    s = sub.add_parser("verify", parents=[common], help="machine-check the prime-sum claims and constants")
    s.add_argument("target", choices=VERIFY_TARGETS)
    s.add_argument("--json", action="store_true", help="force JSON output")
    s.add_argument("--recheck", action="store_true", help="recompute each counterexample independently")
    s.add_argument("--limit", type=float, help="campaign ceiling (default 4e6)")
    s.add_argument("--explore", action="store_true", help="add unclaimed scans below the stated ranges")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("explicit-formula", help="check the explicit formula on a zero table")
    esub = s.add_subparsers(dest="ef_command", required=True)
    e = esub.add_parser("check", parents=[common])
    e.add_argument("--zeros")
    e.add_argument("--a", type=float, default=0.5)
    e.add_argument("--delta", type=float, default=1.0)
    e.add_argument("--shift", type=float, nargs="+", default=[0.0])
    e.add_argument("--tolerance", type=float, default=1e-6)
    e.set_defaults(func=cmd_ef_check)
    e = esub.add_parser("reciprocal", parents=[common], help="sum of 1/(1/4 + gamma^2)")
    e.add_argument("--zeros")
    e.set_defaults(func=cmd_ef_reciprocal)

    s = sub.add_parser("thresholds", parents=[common], help="first decade where the sigma = 1 bound drops below 2 log log")
    s.add_argument("--kind", choices=("dirichlet", "zeta", "both"), default="both")
    s.set_defaults(func=cmd_thresholds)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        config = load_config(args.config, output_format=args.format, parallelism=args.parallelism)
        ctx = _Context(args, config, argv)
        args.func(ctx)
        return ctx.exit_code
    except (ExplicitLBError, ValueError, OSError) as exc:
        print(f"explicit-lb: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
