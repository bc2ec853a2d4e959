"""Command-line front end.  Every verb prints one JSON object on stdout.

Exit status: 0 on success, 2 for invalid input (with ``{"error", "location"}``),
1 when an internal convention check fails.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from . import serialization as ser
from .audit import run_audit
from .autoeq import gamma_project, group_law
from .cocycle import lambda_cocycle, maslov_mu
from .errors import ConventionError, FMLatticeError, ValidationError
from .homs import VarietyModel, is_isometric, q_form_check
from .isometry import DEFAULT_BUDGET, factor_by_isogeny_y, to_gamma0
from .partners import partner_count
from .semihomog import SlopeClass, kernel_slope_from_isometry, proj_degrees, rank_chi, \
    sigma0_order, slope_correspondence


class InputError(Exception):
    def __init__(self, message: str, location: str):
        super().__init__(message)
        self.location = location


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message, "arguments")


def _at(location: str, fn: Callable, *args):
    """Run a parsing step, tagging validation failures with ``location``."""
    try:
        return fn(*args)
    except (ValidationError, TypeError, ValueError, KeyError) as exc:
        raise InputError(str(exc), location) from exc


def _model(args) -> VarietyModel:
    return _at("--model", ser.parse_model, args.model)


# verbs --------------------------------------------------------------------------

def cmd_check_isometry(args) -> dict:
    model = _model(args)
    target = _at("--target-model", ser.parse_model, args.target_model) if args.target_model else model
    f = _at("map", lambda: ser.doubled_from_json(ser.load_json(args.map), model, target))
    a, b = is_isometric(f), q_form_check(f)
    if a != b:
        raise ConventionError(f"block criterion says {a}, lattice criterion says {b}")
    return {"isometric": a}


def cmd_to_gamma0(args) -> dict:
    if args.level is None and args.model is None:
        raise InputError("give --level or --model", "arguments")
    model = VarietyModel.polarized_scalar(args.level) if args.model is None else _model(args)
    if args.level is not None and model.level != args.level:
        raise InputError("--level does not match --model", "--level")
    u = _at("map", lambda: ser.uelement_from_json(ser.load_json(args.map), model))
    g = to_gamma0(u)
    return {"a": str(g.a), "b": str(g.b), "c": str(g.c), "d": str(g.d), "level": g.level}


def cmd_factor(args) -> dict:
    model = _model(args)
    f = _at("map", lambda: ser.doubled_from_json(ser.load_json(args.map), model))
    fac = factor_by_isogeny_y(f, args.budget)
    return {"f1": ser.doubled_to_json(fac.f1), "f2": ser.doubled_to_json(fac.f2.underlying),
            "label": fac.label, "index": fac.index}


def cmd_cocycle(args) -> dict:
    model = _model(args)
    g1 = _at("g1", lambda: ser.uelement_from_json(ser.load_json(args.g1), model))
    g2 = _at("g2", lambda: ser.uelement_from_json(ser.load_json(args.g2), model))
    return {"lambda": lambda_cocycle(g1, g2, budget=args.budget),
            "mu": maslov_mu(g1, g2, budget=args.budget)}


def cmd_utilde_mul(args) -> dict:
    model = _model(args)
    u1 = _at("u1", lambda: ser.utilde_from_json(ser.load_json(args.u1), model))
    u2 = _at("u2", lambda: ser.utilde_from_json(ser.load_json(args.u2), model))
    return ser.utilde_to_json(u1 @ u2)


def cmd_autoeq_mul(args) -> dict:
    model = _model(args)
    a1 = _at("a1", lambda: ser.autoeq_from_json(ser.load_json(args.a1), model))
    a2 = _at("a2", lambda: ser.autoeq_from_json(ser.load_json(args.a2), model))
    prod = a1 @ a2
    out = ser.autoeq_to_json(prod)
    out["gamma"] = ser.doubled_to_json(gamma_project(prod).underlying)
    out["group_law"] = group_law(model)
    return out


def cmd_partners(args) -> dict:
    if args.N < 1:
        raise InputError("N must be positive", "--N")
    return partner_count(args.N).to_dict()


def cmd_slope(args) -> dict:
    model = _model(args)
    L = _at("--L", lambda: ser.matrix_from_json(ser.load_json(args.L)))
    mu = _at("--L", SlopeClass, model, L, args.l)
    d1, d2 = proj_degrees(slope_correspondence(mu))
    r, chi = rank_chi(mu)
    return {"r": r, "chi_abs": chi, "deg_q1": ser.degree_to_json(d1),
            "deg_q2": ser.degree_to_json(d2), "sigma0": sigma0_order(mu)}


def cmd_kernel_slope(args) -> dict:
    model = _model(args)
    target = _at("--target-model", ser.parse_model, args.target_model) if args.target_model else model
    f = _at("map", lambda: ser.doubled_from_json(ser.load_json(args.map), model, target))
    mu = kernel_slope_from_isometry(f)
    return {"L": ser.matrix_to_json(mu.L), "l": mu.l, "model": ser.model_to_json(mu.model)}


def cmd_audit(args) -> dict:
    return run_audit(args.seed, args.members, args.non_members, args.slopes)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fmlattice", description="Lattice invariants of derived equivalences of abelian varieties.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    model_help = "elliptic-power:n | polarized-scalar:N | lattice:<json or file>"

    def verb(name, fn, helptext, aliases=()):
        sp = sub.add_parser(name, help=helptext, aliases=list(aliases))
        sp.set_defaults(func=fn)
        return sp

    sp = verb("check-isometry", cmd_check_isometry, "is a map A x A^ -> B x B^ isometric", ["membership"])
    sp.add_argument("--model", required=True, help=model_help)
    sp.add_argument("--target-model", help="model of B (default: same as --model)")
    sp.add_argument("map", help="map as JSON or a file")

    sp = verb("to-gamma0", cmd_to_gamma0, "image of an isometry in Gamma_0(N)")
    sp.add_argument("--level", type=int)
    sp.add_argument("--model", help=model_help)
    sp.add_argument("map")

    sp = verb("factor", cmd_factor, "write f = f1 f2 with invertible y-blocks")
    sp.add_argument("--model", required=True, help=model_help)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("map")

    sp = verb("cocycle", cmd_cocycle, "lambda and mu on a pair of isometries")
    sp.add_argument("--model", required=True, help=model_help)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("g1")
    sp.add_argument("g2")

    sp = verb("utilde-mul", cmd_utilde_mul, "product in the central extension of U by Z")
    sp.add_argument("--model", required=True, help=model_help)
    sp.add_argument("u1")
    sp.add_argument("u2")

    sp = verb("autoeq-mul", cmd_autoeq_mul, "product of (shift, point, isometry) triples")
    sp.add_argument("--model", required=True, help=model_help)
    sp.add_argument("a1")
    sp.add_argument("a2")

    sp = verb("partners", cmd_partners, "Fourier-Mukai partners for End(A) = Z and type (1, N)")
    sp.add_argument("--N", type=int, required=True)

    sp = verb("slope", cmd_slope, "rank, |chi|, degrees and Sigma^0 order of a slope [L]/l")
    sp.add_argument("--model", required=True, help=model_help)
    sp.add_argument("--L", required=True, help="skew integer matrix as JSON or a file")
    sp.add_argument("--l", type=int, default=1)

    sp = verb("kernel-slope", cmd_kernel_slope, "slope on A x B attached to an isometry")
    sp.add_argument("--model", required=True, help=model_help)
    sp.add_argument("--target-model")
    sp.add_argument("map")

    sp = verb("audit", cmd_audit, "randomised convention audit")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--members", type=int, default=1000)
    sp.add_argument("--non-members", type=int, default=200)
    sp.add_argument("--slopes", type=int, default=200)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
    except InputError as exc:
        print(ser.dumps({"error": str(exc), "location": exc.location}), file=out)
        return 2
    except ValidationError as exc:
        print(ser.dumps({"error": str(exc), "location": type(exc).__name__}), file=out)
        return 2
    except (ConventionError, FMLatticeError) as exc:
        print(ser.dumps({"error": str(exc), "location": type(exc).__name__}), file=out)
        return 1
    print(ser.dumps(result), file=out)
    if args.verb == "audit" and not result["ok"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
