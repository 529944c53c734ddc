"""Command-line entry point. Every subcommand prints one JSON document to stdout.

JSON arguments may be given inline or as ``@path/to/file.json``.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .algebra import INVERT_TOLERANCE, AlgebraError, NotInvertible
from .beurling import BeurlingAlgebra, WindingUndefined, disc_closure_membership, gelfand_roots, obstruction_verdict
from .demos import DEMOS, demo
from .experiments import load_config, run
from .extension import ArensHoffman
from .perturb import PerturbConfig, matrix_perturb, perturb_to_invertible
from .poly import AlgebraPoly, MonicPoly, resultant, sylvester_matrix
from .serialize import (
    ConfigError,
    complex_from_json,
    descriptor_from_json,
    descriptor_to_json,
    element_from_json,
    element_to_json,
    matrix_from_json,
    to_jsonable,
    weight_from_json,
)

log = logging.getLogger("denseinv")


def _json_arg(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON argument: {exc}") from None


def _emit(obj) -> None:
    print(json.dumps(to_jsonable(obj), indent=2, sort_keys=True))


def _extension(args) -> ArensHoffman:
    alg = descriptor_from_json(_json_arg(args.algebra))
    if not isinstance(alg, ArensHoffman):
        raise ConfigError("--algebra must describe an 'arens-hoffman-over' extension")
    return alg


def cmd_resultant(args) -> int:
    base = descriptor_from_json(_json_arg(args.base))
    coeffs = [element_from_json(base, c) for c in _json_arg(args.alpha)]
    alpha = MonicPoly(AlgebraPoly(base, tuple(coeffs)))
    beta = [element_from_json(base, c) for c in _json_arg(args.beta)]
    r = resultant(alpha, beta)
    out = {"resultant": element_to_json(r), "invertible": base.is_invertible(r)}
    if args.show_matrix:
        out["sylvester"] = [[element_to_json(e) for e in row] for row in sylvester_matrix(alpha, beta)]
    _emit(out)
    return 0


def cmd_ah_invert(args) -> int:
    ext = _extension(args)
    u = element_from_json(ext, _json_arg(args.element))
    r = ext.resultant_of(u)
    out = {"algebra": descriptor_to_json(ext), "resultant": element_to_json(r)}
    try:
        cert = ext.invert(u, args.tol)
    except NotInvertible:
        out.update(invertible=False, inverse=None, residual=None)
    else:
        out.update(invertible=True, inverse=element_to_json(cert.inverse), residual=cert.residual)
    _emit(out)
    return 0


def cmd_perturb(args) -> int:
    ext = _extension(args)
    u = element_from_json(ext, _json_arg(args.element))
    cfg = PerturbConfig(epsilon=args.epsilon, max_samples_per_stage=args.max_samples,
                        rng_seed=args.seed, tol=args.tol)
    u_new, trace = perturb_to_invertible(u, cfg)
    _emit({"element": element_to_json(u_new), "inverse": element_to_json(trace.inverse.inverse),
           "trace": trace.to_json()})
    return 0


def cmd_matrix_perturb(args) -> int:
    base = descriptor_from_json(_json_arg(args.base))
    B = matrix_from_json(base, _json_arg(args.matrix))
    sigma = _json_arg(args.sigma) if args.sigma else list(range(len(B)))
    res = matrix_perturb(B, args.epsilon, sigma, np.random.default_rng(args.seed), tol=args.tol)
    _emit({"matrix": [[element_to_json(e) for e in row] for row in res.matrix],
           "shift": res.shift,
           "determinant": element_to_json(res.determinant),
           "residual": res.certificate.residual, "samples_used": res.samples_used})
    return 0


def cmd_beurling(args) -> int:
    B = BeurlingAlgebra(weight_from_json(_json_arg(args.weight)))
    x = element_from_json(B, _json_arg(args.element))
    info = gelfand_roots(x)
    s = B.spectrum
    out = {"annulus": [s.rho_minus, s.rho_plus], "roots": list(info.roots),
           "moduli": [float(m) for m in info.moduli], "invertible": info.invertible}
    try:
        v = obstruction_verdict(x)
    except WindingUndefined as exc:
        out.update(windings=None, verdict=None, note=str(exc))
    else:
        out.update(windings=list(v.windings), verdict=v.verdict.value, stability_radius=v.stability_radius)
    _emit(out)
    return 0


def cmd_disc_closure(args) -> int:
    coeffs = [complex_from_json(c) for c in _json_arg(args.coeffs)]
    _emit({"verdict": disc_closure_membership(coeffs, args.tol).value})
    return 0


def cmd_demo(args) -> int:
    print(demo(args.name, args.seed))
    return 0


def cmd_experiment(args) -> int:
    cfg = load_config(args.config, seed=args.seed_override, workers=args.workers)
    if args.tol_override is not None:
        cfg = replace(cfg, tol=args.tol_override)
    out_dir = args.out or cfg.output or "."
    report = run(cfg, out_dir)
    _emit({"kind": cfg.kind, "output": str(Path(out_dir)), "passed": report.passed,
           "success_rate": report.summary["success_rate"], "thresholds": report.summary["thresholds"]})
    return 0 if report.passed else 1


def _globals(parser: argparse.ArgumentParser, default) -> None:
    """Global flags; accepted before or after the subcommand."""
    parser.add_argument("--seed", type=int, default=default(0), help="random seed (default 0)")
    parser.add_argument("--tol", type=float, default=default(INVERT_TOLERANCE),
                        help="inversion certificate tolerance")
    parser.add_argument("--out", default=default(None), help="output directory for experiment reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="denseinv", description=__doc__.splitlines()[0])
    _globals(parser, lambda v: v)
    shared = argparse.ArgumentParser(add_help=False)
    _globals(shared, lambda v: argparse.SUPPRESS)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resultant", parents=[shared], help="resultant of alpha and beta over a base")
    p.add_argument("--base", required=True, help="base descriptor JSON")
    p.add_argument("--alpha", required=True, help="monic alpha, lowest coefficient first, unit included")
    p.add_argument("--beta", required=True, help="beta coefficients, lowest first, degree < deg alpha")
    p.add_argument("--show-matrix", action="store_true")
    p.set_defaults(func=cmd_resultant)

    p = sub.add_parser("ah-invert", parents=[shared], help="invert an element of an extension")
    p.add_argument("--algebra", required=True, help="arens-hoffman-over descriptor JSON")
    p.add_argument("--element", required=True, help="coefficient list JSON")
    p.set_defaults(func=cmd_ah_invert)

    p = sub.add_parser("perturb", parents=[shared], help="move an element into the invertible group")
    p.add_argument("--algebra", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--max-samples", type=int, default=200)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("matrix-perturb", parents=[shared], help="make a square matrix invertible")
    p.add_argument("--base", required=True)
    p.add_argument("--matrix", required=True, help="rows of element JSON")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--sigma", help="0-based permutation JSON (default identity)")
    p.set_defaults(func=cmd_matrix_perturb)

    p = sub.add_parser("beurling", parents=[shared], help="roots, invertibility and windings of a Laurent element")
    p.add_argument("--weight", required=True, help="weight JSON")
    p.add_argument("--element", required=True, help='{"lo": k, "coeffs": [...]} or {"terms": {...}}')
    p.set_defaults(func=cmd_beurling)

    p = sub.add_parser("disc-closure", parents=[shared],
                       help="is a polynomial in the closure of the disc-algebra invertibles")
    p.add_argument("coeffs", help="coefficient list JSON, lowest degree first")
    p.set_defaults(func=cmd_disc_closure)

    p = sub.add_parser("demo", parents=[shared], help="print a worked example")
    p.add_argument("name", choices=sorted(DEMOS))
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("experiment", help="batch experiments")
    esub = p.add_subparsers(dest="action", required=True)
    r = esub.add_parser("run", parents=[shared], help="run an experiment config")
    r.add_argument("config", help="experiment config JSON file")
    r.add_argument("--workers", type=int, default=None)
    r.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.func is cmd_experiment:
        # config values win unless the flag was given explicitly
        given = {a.split("=", 1)[0] for a in argv}
        args.seed_override = args.seed if "--seed" in given else None
        args.tol_override = args.tol if "--tol" in given else None
    try:
        return args.func(args)
    except (ConfigError, AlgebraError, KeyError, ValueError, OSError) as exc:
        print(f"denseinv: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
