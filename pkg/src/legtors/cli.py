"""Command-line front end: ``legtors <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import ast
import json
import random
import sys


from . import config
from . import divpoly as dp
from .arith import fmt_rational, parse_rational
from .census import census, format_table
from .errors import LegtorsError, ParseError
from .poly import bi_degrees, format_bipoly
from .quotring import FieldElem, parse_field
from .resultants import R_M_CAP, r_m, verify_squarefree, verify_table1
from .screen import cw_verify, decide_T_rational, roots_of_unity_T, screen_rational
from .suite import SUITES, run_suite
from .torsion import nontorsion_certificate, order_bounded
from .tset import t_set_bounded

SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt_value(x):
    if isinstance(x, FieldElem):
        return x.to_str()
    if x is dp.Infinity or isinstance(x, dp._Infinity):
        return "infinity"
    if hasattr(x, "to_str"):
        return x.to_str()
    return fmt_rational(x)


# ---------------------------------------------------------------- value parsing


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _field(desc):
    """Field descriptor; each named entry may use t and the names before it."""
    if desc is None:
        return None, {}
    parts = [p.strip() for p in desc.split(";") if p.strip()]
    try:
        K, _ = parse_field(parts[0] if parts else "")
    except (ParseError, ValueError) as exc:
        raise UsageError(f"bad field descriptor: {exc}") from None
    named = {}
    for item in parts[1:]:
        name, sep, text = item.partition("=")
        if not sep or not name.strip().isidentifier():
            raise UsageError(f"bad field entry {item!r}")
        named[name.strip()] = _value(text.strip(), K, named)
    return K, named


_OPS = {ast.Add: lambda u, v: u + v, ast.Sub: lambda u, v: u - v, ast.Mult: lambda u, v: u * v,
        ast.Div: lambda u, v: u / v}


def _field_expr(node, K, env):
    if isinstance(node, ast.Expression):
        return _field_expr(node.body, K, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return K.coerce(node.value)
    if isinstance(node, ast.Name) and node.id in env:
        return env[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _field_expr(node.operand, K, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow) and isinstance(node.right, ast.Constant) \
                and isinstance(node.right.value, int):
            return _field_expr(node.left, K, env) ** node.right.value
        if type(node.op) in _OPS:
            return _OPS[type(node.op)](_field_expr(node.left, K, env), _field_expr(node.right, K, env))
    raise UsageError("unsupported expression")


def _value(text, K, named):
    """Rational, or an expression over the field's named elements and t."""
    if K is None:
        return _rational(text)
    env = {K.var: K.gen(), **named}
    try:
        return _field_expr(ast.parse(text.replace("^", "**"), mode="eval"), K, env)
    except (SyntaxError, UsageError, ZeroDivisionError, LegtorsError) as exc:
        raise UsageError(f"cannot read {text!r} in the field: {exc}") from None


def _keyvals(text, keys):
    out = {}
    for part in text.split(","):
        k, sep, v = part.partition("=")
        if not sep or k.strip() not in keys:
            raise UsageError(f"expected {','.join(k + '=Q' for k in keys)}, got {text!r}")
        out[k.strip()] = _rational(v.strip())
    if set(out) != set(keys):
        raise UsageError(f"missing values in {text!r}")
    return out


# ---------------------------------------------------------------- commands


def cmd_psi(a):
    n = a.n
    if n < 1:
        raise UsageError("--n must be positive")
    out = {"family": a.family, "n": n}
    if a.family == "legendre":
        out["d"], out["e"] = dp.d(n), dp.e(n)
        if a.eval:
            kv = _keyvals(a.eval, ("lambda", "x"))
            out["lambda"], out["x"] = fmt_rational(kv["lambda"]), fmt_rational(kv["x"])
            out["value"] = fmt_rational(dp.legendre_psi_eval(n, kv["lambda"], kv["x"]))
        elif a.check:
            out["check"] = a.check
            if a.check == "congruence":
                if n < 3:
                    raise UsageError("congruence check needs n >= 3")
                out["pass"] = dp.congruence_check_legendre(n)
            elif a.check == "degrees":
                out["pass"] = dp.degree_check_legendre(n)
            elif a.check == "special":
                out["pass"] = dp.special_values_check(n)
            else:
                raise UsageError(f"check {a.check!r} does not apply to the Legendre family")
        else:
            p = dp.legendre_psi(n)
            dx, dl, dt = bi_degrees(p)
            out["degrees"] = {"lambda": dl, "x": dx, "total": dt}
            out["poly"] = format_bipoly(p)
    else:
        if a.eval:
            kv = _keyvals(a.eval, ("A", "B", "x"))
            out.update({k: fmt_rational(v) for k, v in kv.items()})
            out["value"] = fmt_rational(dp.weierstrass_psi_eval(n, kv["A"], kv["B"], kv["x"]))
        elif a.check:
            out["check"] = a.check
            if a.check == "congruence":
                if n < 3:
                    raise UsageError("congruence check needs n >= 3")
                out["pass"] = dp.congruence_check_weierstrass(n)
            elif a.check == "degrees":
                out["pass"] = dp.weierstrass_degree_check(n)
            elif a.check == "homogeneity":
                out["pass"] = dp.weierstrass_homogeneity_check(n)
            else:
                raise UsageError(f"check {a.check!r} does not apply to the Weierstrass family")
        else:
            P = dp.weierstrass_psi(n)
            out["degrees"] = {"A": P.degree("A"), "B": P.degree("B"), "x": P.degree("x")}
            out["poly"] = P.to_str()
    status = 1 if out.get("pass") is False else 0
    return out, status


def cmd_order(a):
    K, named = _field(a.field)
    lam, x = _value(a.lam, K, named), _value(a.x, K, named)
    res = order_bounded(lam, x, a.max)
    return {"lambda": fmt_value(lam), "x": fmt_value(x), "max": a.max, **res.to_json()}, 0


def _primes(text):
    try:
        ps = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad prime list {text!r}") from None
    if not ps:
        raise UsageError("empty prime list")
    return ps


def cmd_certify(a):
    lam, x = _rational(a.lam), _rational(a.x)
    cert = nontorsion_certificate(lam, x, _primes(a.primes) if a.primes else None)
    return {"lambda": fmt_rational(lam), "x": fmt_rational(x), **cert.to_json()}, 0


def cmd_tset(a):
    K, named = _field(a.field)
    alpha_t = a.alpha if a.alpha is not None else ("alpha" if "alpha" in named else None)
    beta_t = a.beta if a.beta is not None else ("beta" if "beta" in named else None)
    if alpha_t is None or beta_t is None:
        raise UsageError("--alpha and --beta are required unless the field names them")
    alpha, beta = _value(alpha_t, K, named), _value(beta_t, K, named)
    cands = [_value(c, K, named) for c in a.candidate] or None
    rep = t_set_bounded(alpha, beta, a.max_order, cands)
    out = {"alpha": fmt_value(alpha), "beta": fmt_value(beta), "max_order": a.max_order}
    if K is not None:
        out["modulus"] = K.modulus.to_str()
    out.update(rep.to_json(fmt_value))
    return out, 0


def cmd_screen(a):
    alpha, beta = _rational(a.alpha), _rational(a.beta)
    out = {"alpha": fmt_rational(alpha), "beta": fmt_rational(beta),
           "screen": screen_rational(alpha, beta).to_json()}
    if a.decide:
        out["decision"] = decide_T_rational(alpha, beta, a.max).to_json()
        out["max"] = a.max
    return out, 0


def cmd_roots(a):
    if a.order < 2:
        raise UsageError("--order must be at least 2")
    rep = roots_of_unity_T(a.order, verify=a.verify, N=a.max)
    out = {"k": rep["k"], "branch": rep["branch"], "members": rep["members"]}
    if a.verify:
        out["orders"] = [r.to_json() if r is not None else None for r in rep["orders"]]
        out["verified"] = rep["verified"]
        return out, 0 if rep["verified"] else 1
    return out, 0


def cmd_wscreen(a):
    xs = [_rational(v) for v in (a.x1, a.x2, a.x3)]
    rows, dropped = cw_verify(*xs, N=a.max)
    return {"x": [fmt_rational(v) for v in xs], "max": a.max,
            "rows": [{"A": fmt_rational(r["A"]), "B": fmt_rational(r["B"]),
                      "orders": [o.to_json() for o in r["orders"]]} for r in rows],
            "dropped": [{"A": fmt_rational(r["A"]), "B": fmt_rational(r["B"]), "reason": r["reason"]}
                        for r in dropped]}, 0


def cmd_resultant(a):
    if not 3 <= a.m <= R_M_CAP:
        raise UsageError(f"--m must lie in [3, {R_M_CAP}]")
    rec = r_m(a.m)
    out = {"m": a.m, "bidegree": list(rec.bidegree), "removed_power": rec.removed,
           "terms": rec.to_json()["terms"]}
    status = 0
    if a.check_squarefree:
        out["squarefree"] = verify_squarefree(a.m)
        status = 0 if out["squarefree"] else 1
    return out, status


def cmd_table1(a):
    rep = verify_table1(a.corpus, seed=a.seed)
    return {"corpus": a.corpus or "bundled", "passed": len(rep.passed),
            "entries": rep.passed, "failed": rep.failed, "ok": rep.ok}, 0 if rep.ok else 1


def cmd_census(a):
    if a.max_bidegree < 1:
        raise UsageError("--max-bidegree must be positive")
    res = census(a.max_bidegree)
    out = res.to_json()
    out["_table"] = format_table(res)
    return out, 0 if not res.violations else 1


def cmd_verify(a):
    if a.suite not in SUITES:
        raise UsageError(f"unknown suite {a.suite!r}; choose from {', '.join(SUITES)}")
    rep = run_suite(a.suite, a.seed)
    out = rep.to_json()
    for c in out["checks"]:
        c.pop("seconds", None)
    return out, 0 if rep.ok else 1


# ---------------------------------------------------------------- parser and output


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED)

    p = _Parser(prog="legtors", description="Simultaneous torsion in the Legendre family.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("psi", parents=[common], help="division polynomials")
    s.add_argument("--family", choices=("legendre", "weierstrass"), default="legendre")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--eval")
    s.add_argument("--check", choices=("congruence", "degrees", "special", "homogeneity"))
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("order", parents=[common], help="bounded torsion order of a point")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--field")
    s.add_argument("--max", type=int, required=True)
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("certify-nontorsion", parents=[common], help="nontorsion via reduction")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--primes")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("tset", parents=[common], help="bounded simultaneous torsion set")
    s.add_argument("--alpha")
    s.add_argument("--beta")
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--field")
    s.add_argument("--candidate", action="append", default=[])
    s.set_defaults(func=cmd_tset)

    s = sub.add_parser("screen", parents=[common], help="2-adic screening over the rationals")
    s.add_argument("--alpha", required=True)
    s.add_argument("--beta", required=True)
    s.add_argument("--decide", action="store_true")
    s.add_argument("--max", type=int, default=16)
    s.set_defaults(func=cmd_screen)

    s = sub.add_parser("roots-of-unity", parents=[common], help="T(zeta) for roots of unity")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--verify", action="store_true")
    s.add_argument("--max", type=int, default=16)
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("weierstrass-screen", parents=[common], help="three x-coordinates")
    s.add_argument("--x1", required=True)
    s.add_argument("--x2", required=True)
    s.add_argument("--x3", required=True)
    s.add_argument("--max", type=int, default=16)
    s.set_defaults(func=cmd_wscreen)

    s = sub.add_parser("resultant", parents=[common], help="R_m with (a-b) removed")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--check-squarefree", action="store_true")
    s.set_defaults(func=cmd_resultant)

    s = sub.add_parser("verify-table1", parents=[common], help="check the component corpus")
    s.add_argument("--corpus")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("census", help="orbit census")
    s.add_argument("--max-bidegree", type=int, required=True)
    s.add_argument("--format", choices=("text", "json", "table"), default="table")
    s.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("--suite", required=True)
    s.set_defaults(func=cmd_verify)
    return p


def _text_lines(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _text_lines(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        if not obj:
            yield f"{prefix}: []"
        for i, v in enumerate(obj):
            yield from _text_lines(v, f"{prefix}[{i}]")
    else:
        yield f"{prefix}: {json.dumps(obj)}"


def render(payload, fmt):
    table = payload.pop("_table", None)
    body = {"schema": SCHEMA, **payload}
    if fmt == "json":
        return json.dumps(body, sort_keys=True)
    if fmt == "table" and table is not None:
        return table
    return "\n".join(_text_lines(body))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        random.seed(args.seed)
        payload, status = args.func(args)
        payload = {"command": args.command, **payload}
    except UsageError as exc:
        print(f"legtors: usage error: {exc}", file=sys.stderr)
        return 2
    except LegtorsError as exc:
        print(f"legtors: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(render(payload, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
