"""Command-line front end.

Examples::

    oresmooth normalize 'y*x' --q 2
    oresmooth d 'x*y' --q 1 --r 1
    oresmooth check dual-basis --bound 6 --q 3 --r 6 --p '5*x + 15'
    oresmooth check hopf --family b --q 2 --n 1

The algebra comes from a JSON document (``--config PATH`` or ``--config -``
for stdin) with keys ``base``, ``sign``, ``q``, ``r``, ``p`` (or ``c``),
``family``, ``n``; command-line flags override it.  Exit status is 0 on
success or a passing check, 1 when a check finds a counterexample and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .basering import BaseKind, BasePoly
from .calculus import (
    IntegralForm1,
    OneForm,
    TwoForm,
    calculus_for,
    check_divergence,
    check_dual_basis,
    kernel_of_d_report,
)
from .errors import OreSmoothError
from .hopf import HopfFamily, verify_hopf
from .morphisms import check_nu_x_constraint, check_nu_y_constraint, classify
from .ore import AlgebraSpec, OreElement
from .parsing import parse_base_poly, parse_value
from .reports import CheckReport
from .sampling import make_rng
from .scalar import format_scalar, parse_scalar

CHECKS = ("admissible", "dual-basis", "kernel-d", "divergence", "hopf")
NU_MAPS = ("x", "y", "x-inv", "y-inv", "omega", "omega-inv")


class ConfigError(OreSmoothError):
    pass


# configuration


def _scalar(value, key):
    if isinstance(value, bool) or isinstance(value, float):
        raise ConfigError(f"{key}: rationals must be given as strings like \"2/3\", not {value!r}")
    try:
        return parse_scalar(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{key}: {exc}") from None


def load_config(args) -> dict:
    cfg = {}
    path = getattr(args, "config", None)
    if path:
        try:
            if path == "-":
                cfg = json.load(sys.stdin)
            else:
                with open(path) as fh:
                    cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
    for key in ("base", "sign", "q", "r", "p", "c", "family", "n", "bound"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def spec_from_config(cfg: dict) -> AlgebraSpec:
    base = cfg.get("base", "laurent" if "sign" in cfg else "poly")
    if base not in ("poly", "laurent"):
        raise ConfigError(f"base must be 'poly' or 'laurent', got {base!r}")
    kind = BaseKind(base)
    q = _scalar(cfg.get("q", "1"), "q")
    if q == 0:
        raise ConfigError("q must be nonzero")
    r = _scalar(cfg.get("r", "0"), "r")
    sign = cfg.get("sign", "+")
    if base == "poly" and "sign" in cfg:
        raise ConfigError("sign only applies to the Laurent base")
    if base == "laurent" and r != 0:
        raise ConfigError("r must be 0 over the Laurent base (x -> qx + r is not an automorphism)")
    if sign not in ("+", "-"):
        raise ConfigError(f"sign must be '+' or '-', got {sign!r}")

    p = cfg.get("p")
    if p is not None and "c" in cfg:
        raise ConfigError("give either p or c, not both")
    try:
        if p is None and "c" in cfg:
            c = _scalar(cfg["c"], "c")
            if base != "laurent" or sign != "-":
                raise ConfigError("c is shorthand for p = c(x - q x^-1) over the Laurent-minus base")
            poly = BasePoly({1: c, -1: -c * q}, kind)
        elif p is None:
            poly = BasePoly.zero(kind)
        elif isinstance(p, str):
            poly = parse_base_poly(p, kind)
        elif isinstance(p, list):
            coeffs = {}
            for item in p:
                if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)):
                    raise ConfigError(f"p entries must be [exponent, \"rational\"], got {item!r}")
                coeffs[item[0]] = coeffs.get(item[0], 0) + _scalar(item[1], "p")
            poly = BasePoly(coeffs, kind)
        else:
            raise ConfigError("p must be an expression string or a list of [exponent, rational] pairs")
    except OreSmoothError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"p: {exc}") from None

    if base == "poly":
        return AlgebraSpec.poly(q, r, poly)
    return AlgebraSpec.laurent(q, sign, poly)


def family_from_config(cfg: dict) -> HopfFamily:
    fam = cfg.get("family")
    if fam not in ("a", "b", "c"):
        raise ConfigError("check hopf needs --family a, b or c")
    n = cfg.get("n", 1)
    if isinstance(n, str):
        if not n.lstrip("-").isdigit():
            raise ConfigError(f"n must be an integer, got {n!r}")
        n = int(n)
    if not isinstance(n, int) or n < 1:
        raise ConfigError("n must be a positive integer")
    q = _scalar(cfg.get("q", "2" if fam == "b" else "1"), "q")
    if fam == "b" and q in (0, 1):
        raise ConfigError("family b needs q != 0, 1")
    return HopfFamily(fam, q if fam == "b" else 1, n)


# serialization


def element_json(e: OreElement) -> dict:
    return {"terms": [{"k": k, "l": l, "coeff": format_scalar(c)} for (k, l), c in e.sorted_terms()]}


def value_json(v) -> dict:
    if isinstance(v, OneForm):
        return {"degree": 1, "text": str(v), "dx": element_json(v.a), "dy": element_json(v.b)}
    if isinstance(v, TwoForm):
        vol = "dy*dx" if v.spec.sign == "-" else "dx*dy"
        return {"degree": 2, "text": str(v), "volume": vol, "coeff": element_json(v.c)}
    return {"degree": 0, "text": str(v), **element_json(v)}


def _emit(args, value):
    if getattr(args, "json", False):
        print(json.dumps(value_json(value), sort_keys=True))
    else:
        print(value)


def _emit_report(report: CheckReport, extra=None):
    out = report.to_dict()
    if extra:
        out.update(extra)
    print(json.dumps(out, sort_keys=True, indent=2))
    return 0 if report.passed else 1


# commands


def _one_form(text, spec) -> OneForm:
    v = parse_value(text, spec)
    if isinstance(v, OreElement) and v.is_zero():
        return OneForm(spec.zero, spec.zero)
    if not isinstance(v, OneForm):
        raise ConfigError(f"expected a one-form, got {v}")
    return v


def _element(text, spec) -> OreElement:
    v = parse_value(text, spec)
    if not isinstance(v, OreElement):
        raise ConfigError(f"expected an algebra element, got {v}")
    return v


def cmd_normalize(args, spec):
    _emit(args, parse_value(args.expr, spec))
    return 0


def cmd_d(args, spec):
    a = _element(args.expr, spec)
    _emit(args, calculus_for(spec).d(a))
    return 0


def cmd_wedge(args, spec):
    u, v = _one_form(args.u, spec), _one_form(args.v, spec)
    _emit(args, calculus_for(spec).wedge(u, v))
    return 0


def cmd_apply_nu(args, spec):
    calc = calculus_for(spec)
    maps = {
        "x": calc.nus.nu_x,
        "y": calc.nus.nu_y,
        "x-inv": calc.nus.nu_x_inv,
        "y-inv": calc.nus.nu_y_inv,
        "omega": calc.nu_omega,
        "omega-inv": calc.nu_omega_inv,
    }
    _emit(args, maps[args.map](_element(args.expr, spec)))
    return 0


def cmd_divergence(args, spec):
    calc = calculus_for(spec)
    phi = IntegralForm1(_element(args.a, spec), _element(args.b, spec))
    value = calc.divergence_general(phi)
    if value != calc.divergence(phi):
        raise AssertionError("divergence formulas disagree")
    _emit(args, value)
    return 0


def cmd_check(args, cfg):
    name = args.name
    bound = cfg.get("bound", 6)
    if isinstance(bound, str) and bound.isdigit():
        bound = int(bound)
    if not isinstance(bound, int) or bound < 0:
        raise ConfigError(f"invalid bound {bound!r}")

    if name == "hopf":
        fam = family_from_config(cfg)
        return _emit_report(verify_hopf(fam, bound))

    spec = spec_from_config(cfg)
    adm = classify(spec)
    if name == "admissible":
        report = CheckReport(
            "admissible", str(spec), adm.admissible, None,
            None if adm.admissible else "NotAdmissible",
            {"nu_x_constraint": check_nu_x_constraint(spec),
             "nu_y_constraint": check_nu_y_constraint(spec)},
        )
        return _emit_report(report, adm.to_dict())
    if not adm.admissible:
        report = CheckReport(name, str(spec), False, bound, "NotAdmissible", adm.to_dict())
        return _emit_report(report, adm.to_dict())
    if name == "dual-basis":
        return _emit_report(check_dual_basis(spec, bound))
    if name == "kernel-d":
        return _emit_report(kernel_of_d_report(spec, bound))
    return _emit_report(check_divergence(spec, bound, rng=make_rng()))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--config", default=S, help="JSON config file, or - for stdin")
    common.add_argument("--json", action="store_true", default=S, help="machine-readable output")
    common.add_argument("--base", choices=("poly", "laurent"), default=S)
    common.add_argument("--sign", choices=("+", "-"), default=S)
    common.add_argument("--q", default=S)
    common.add_argument("--r", default=S)
    common.add_argument("--p", default=S, help="p(x) as an expression, e.g. '5*x + 15'")
    common.add_argument("--c", default=S, help="Laurent-minus shorthand for p = c(x - q x^-1)")
    common.add_argument("--bound", type=int, default=S)
    common.add_argument("--family", choices=("a", "b", "c"), default=S)
    common.add_argument("--n", type=int, default=S)

    parser = argparse.ArgumentParser(
        prog="oresmooth",
        parents=[common],
        description="Exact computation in Ore extensions and their integrable calculi.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="normal form of an expression")
    p.add_argument("expr")
    p = sub.add_parser("d", parents=[common], help="exterior derivative of an element")
    p.add_argument("expr")
    p = sub.add_parser("wedge", parents=[common], help="wedge product of two one-forms")
    p.add_argument("u")
    p.add_argument("v")
    p = sub.add_parser("apply-nu", parents=[common], help="apply a twisting automorphism")
    p.add_argument("map", choices=NU_MAPS)
    p.add_argument("expr")
    p = sub.add_parser("divergence", parents=[common], help="divergence of phi_x.A + phi_y.B")
    p.add_argument("a")
    p.add_argument("b", nargs="?", default="0")
    p = sub.add_parser("check", parents=[common], help="run a verification")
    p.add_argument("name", choices=CHECKS)
    return parser


COMMANDS = {
    "normalize": cmd_normalize,
    "d": cmd_d,
    "wedge": cmd_wedge,
    "apply-nu": cmd_apply_nu,
    "divergence": cmd_divergence,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        if args.command == "check":
            return cmd_check(args, cfg)
        spec = spec_from_config(cfg)
        return COMMANDS[args.command](args, spec)
    except OreSmoothError as exc:
        print(f"oresmooth: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
