"""Command-line front end: ``modunits <command> ...``.

Exit codes: 0 success, 1 a verification suite reported failures,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from modunits.arith import TieError, fmt_rational
from modunits.minformula import UnitExpr

__all__ = ["ParseError", "parse_unit", "main", "SUITES"]

ENV_DEPTH = "MODUNITS_VERIFY_MAX"


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def parse_unit(text: str) -> UnitExpr:
    """Parse ``F7/F8``, ``F2^2*F3``, ``F7*F8^-1`` ... into a :class:`UnitExpr`.

    Duplicate indices are merged; a product that collapses to nothing is
    rejected as a constant unit.
    """
    if not text or not text.strip():
        raise ParseError("empty unit expression", 0)
    pos, n = 0, len(text)
    exps: dict[int, int] = {}

    def skip(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    def term(p, sign):
        p = skip(p)
        if p >= n or text[p] != "F":
            raise ParseError("expected 'F'", p)
        m = re.compile(r"\d+").match(text, p + 1)
        if not m:
            raise ParseError("expected an index after 'F'", p + 1)
        k = int(m.group())
        if k < 2:
            raise ValueError(f"F{k}: index must be >= 2 (position {p})")
        p = skip(m.end())
        e = 1
        if p < n and text[p] == "^":
            m = re.compile(r"\s*([+-]?\d+)").match(text, p + 1)
            if not m:
                raise ParseError("expected an integer exponent after '^'", p + 1)
            e = int(m.group(1))
            p = m.end()
        exps[k] = exps.get(k, 0) + sign * e
        return skip(p)

    pos = term(pos, 1)
    while pos < n:
        op = text[pos]
        if op not in "*/":
            raise ParseError(f"unexpected {op!r}", pos)
        pos = term(pos + 1, 1 if op == "*" else -1)
    u = UnitExpr.of(exps)
    if not u:
        raise ValueError("unit expression is constant (all exponents cancel)")
    return u


# -- verification suites ------------------------------------------------------

def _depth(args_max, default):
    if args_max is not None:
        return args_max
    env = os.environ.get(ENV_DEPTH)
    return int(env) if env else default


def suite_minformula(max_n=None) -> dict:
    from modunits.minformula import degree_zero_defect, divisor, q_order, unit_matrix_rank, vk, vk_alt

    N_max = _depth(max_n, 60)
    bad_deg = [[k, N] for k in range(2, 21) for N in range(3, N_max + 1)
               if k != N and degree_zero_defect(k, N) != 0]
    bad_int = [k for k in range(2, 31) if vk(k).integrate() != 0]
    bad_alt = [k for k in range(3, 31) if vk(k) != vk_alt(k)]
    bad_rank = [N for N in range(5, min(N_max, 40) + 1) if unit_matrix_rank(N) != N // 2]
    for N in range(3, N_max + 1):
        for k in range(2, 21):
            if k != N:
                divisor({k: 1}, N)  # asserts integrality
    ok8_3 = q_order(8, 3, 1) == 16
    return {"degree_zero_failures": bad_deg, "integral_zero_failures": bad_int,
            "vk_alt_failures": bad_alt, "rank_failures": bad_rank, "q_order_8_3_1": ok8_3,
            "pass": not (bad_deg or bad_int or bad_alt or bad_rank) and ok8_3}


def suite_siegel(max_n=None) -> dict:
    from modunits.siegel import crosscheck, piecewise_identity_check

    N_max = _depth(max_n, 60)
    cc = crosscheck(20, N_max)
    pw = piecewise_identity_check(12)
    return {"crosscheck": cc, "piecewise_identity": pw,
            "pass": not cc["mismatches"] and not pw["mismatches"]}


def suite_divpoly(max_n=None) -> dict:
    from modunits.arith import divisors, exact_order_count
    from modunits.divpoly import (GENERIC, DivisionPolynomials, min_monomial_check,
                                  recursion_check, relation_check, tate_form_check, tate_P)

    k_max = _depth(max_n, 30)
    num = DivisionPolynomials.numeric(1, 1)
    div_fail = [[d, k] for k in range(2, min(k_max, 20) + 1) for d in divisors(k)
                if not GENERIC.bigQ(d).body.divides(GENERIC.bigQ(k).body)]
    deg_fail = [k for k in range(2, k_max + 1)
                if 2 * num.smallq(k).degree_x() != exact_order_count(k)]
    rel_fail = [k for k in range(2, 9) if not relation_check(k)["ok"]]
    mono = [min_monomial_check(k) for k in range(2, k_max + 1)]
    mono_fail = [m["k"] for m in mono if not m["ok"]]
    content_fail = [k for k in range(1, k_max + 1) if tate_P(k).body.content() != 1]
    rec_fail = [n for n in range(5, 13) if not recursion_check(n)["ok"]]
    tate = tate_form_check()
    return {
        "divisibility_failures": div_fail,
        "degree_failures": deg_fail,
        "relation_failures": rel_fail,
        "min_monomial_failures": mono_fail,
        "min_monomial_signs": {str(m["k"]): m["observed_sign"] for m in mono},
        "content_failures": content_fail,
        "recursion_failures": rec_fail,
        "tate_normal_form": tate,
        "pass": not (div_fail or deg_fail or rel_fail or mono_fail or content_fail or rec_fail)
        and all(tate.values()),
    }


def suite_lemma420(max_n=None) -> dict:
    from modunits.gonality import verify_lemma

    r = verify_lemma(_depth(max_n, 2100))
    r["pass"] = not r["failures"] and 49 in r["sharp"] and 91 in r["sharp"]
    return r


def suite_periodicity(max_n=None) -> dict:
    from modunits.gonality import offset_periodicity

    r = offset_periodicity(_depth(max_n, 3))
    r["pass"] = not r["failures"]
    return r


def suite_puiseux(max_n=None) -> dict:
    from modunits.puiseux import epsilon_series_check, lucky_check, verify_observations

    top = min(_depth(max_n, 9), 9)
    levels = [verify_observations(N) for N in range(2, top + 1)]
    eps = epsilon_series_check()
    lucky = lucky_check()
    return {"levels": levels, "epsilon": eps, "lucky": lucky,
            "pass": all(r["pass"] for r in levels) and eps["pass"] and lucky["pass"]}


SUITES = {
    "minformula": suite_minformula,
    "siegel": suite_siegel,
    "divpoly": suite_divpoly,
    "lemma420": suite_lemma420,
    "periodicity": suite_periodicity,
    "puiseux": suite_puiseux,
}


# -- commands -----------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_default)


def _default(o):
    if isinstance(o, Fraction):
        return fmt_rational(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def cmd_divisor(args, out):
    from modunits.minformula import divisor

    d = divisor(parse_unit(args.unit), args.level)
    if args.json:
        print(_dump(d.to_dict()), file=out)
        return 0
    print(f"div({d.unit}) on X_1({d.level})", file=out)
    print(f"{'c':>4} {'e':>4} {'f':>4} {'order':>7}", file=out)
    for o, v in d.entries:
        print(f"{o.c:>4} {o.e:>4} {o.f:>4} {v:>7}", file=out)
    print(f"degree_qbar {d.degree_qbar}", file=out)
    return 0


def cmd_vk(args, out):
    from modunits.minformula import vk

    f = vk(args.k)
    if args.json:
        print(_dump(f.to_dict()), file=out)
    else:
        for t, v in zip(f.breakpoints, f.values):
            print(f"{fmt_rational(t)}\t{fmt_rational(v)}", file=out)
    return 0


def cmd_gonality_table(args, out):
    from modunits.gonality import gonality_table, table_csv, table_json

    rows = gonality_table(args.start, args.stop)
    if args.json:
        print(table_json(rows), file=out)
    else:
        out.write(table_csv(rows))
    return 0


def cmd_verify(args, out):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    report = {name: SUITES[name](args.max) for name in names}
    ok = all(r["pass"] for r in report.values())
    report["pass"] = ok
    print(_dump(report), file=out)
    return 0 if ok else 1


def cmd_divpoly(args, out):
    from modunits.divpoly import GENERIC, tate_P

    p = GENERIC.bigQ(args.k) if args.ring == "xab" else tate_P(args.k)
    if args.stats:
        print(_dump(p.stats()), file=out)
    elif args.ring == "xab" and p.y_parity:
        print(f"(2*y) * ({p.body.to_text()})", file=out)
    else:
        print(p.body.to_text(), file=out)
    return 0


def cmd_puiseux(args, out):
    from modunits.puiseux import verify_observations

    r = verify_observations(args.level, tol=args.tol, s0=Fraction(args.s0))
    print(_dump(r), file=out)
    return 0 if r["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modunits", description="Divisors and gonality bounds of modular units on X_1(N).")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("divisor", help="divisor of a product of F_k")
    d.add_argument("--level", type=int, required=True)
    d.add_argument("--unit", required=True, help="e.g. F7/F8 or F2^2*F3")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_divisor)

    v = sub.add_parser("vk", help="order function v_k as breakpoints/values")
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_vk)

    g = sub.add_parser("gonality-table", help="B0, B1 and the bound per level")
    g.add_argument("--from", dest="start", type=int, required=True)
    g.add_argument("--to", dest="stop", type=int, required=True)
    fmt = g.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gonality_table)

    ve = sub.add_parser("verify", help="run a property suite")
    ve.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    ve.add_argument("--max", type=int, default=None,
                    help=f"suite depth (default from ${ENV_DEPTH} or the suite's own)")
    ve.set_defaults(func=cmd_verify)

    dp = sub.add_parser("divpoly", help="division polynomial Q_k or Tate-form P_k")
    dp.add_argument("--k", type=int, required=True)
    dp.add_argument("--ring", choices=["xab", "BC"], default="xab")
    dp.add_argument("--stats", action="store_true")
    dp.set_defaults(func=cmd_divpoly)

    pu = sub.add_parser("puiseux", help="numeric dominant terms of q_N at s = 0 (approximate)")
    pu.add_argument("--level", type=int, required=True)
    pu.add_argument("--s0", default="1e-8")
    pu.add_argument("--tol", type=float, default=1e-3)
    pu.set_defaults(func=cmd_puiseux)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args, out)
    except (ValueError, TieError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
