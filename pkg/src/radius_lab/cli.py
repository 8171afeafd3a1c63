"""Command-line front end: ``radius``, ``xi``, ``bounds``, ``verify``, ``range-plot``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bounds import (
    CATALOG_VERSION,
    BoundContext,
    evaluate_radius_bound,
    expand_all,
    parse_bound_label,
)
from .errors import ConfigError, ParseError, RadiusLabError, SpecError
from .generators import KINDS, GeneratorSpec, generate
from .linalg import ScalarFn
from .matrixio import load_matrix, write_atomic
from .numrange import numerical_radius, numerical_range_boundary
from .sphere import (
    SphereOptions,
    inf_xi_quadratic_deviation,
    inf_xi_variance_ratio,
    kian_deficiency,
    xi_pencil,
)
from .sweep import SweepConfig, dumps17, run_sweep, write_report

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def resolve_matrix(text: str) -> np.ndarray:
    """A matrix file path, or a generator spec such as ``ginibre:4:42``."""
    path = Path(text)
    if path.exists():
        return load_matrix(path)
    if text.split(":")[0] in KINDS:
        try:
            return generate(GeneratorSpec.parse(text))
        except SpecError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"no such matrix file: {text}")


def _vec(x) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(x).ravel()]


def _emit(doc, out) -> None:
    text = dumps17(doc) + "\n"
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_radius(args) -> int:
    A = resolve_matrix(args.matrix)
    res = numerical_radius(A, tol=args.tol)
    print(f"omega = {res.omega!r}")
    print(f"theta_star = {res.theta_star!r}")
    print(f"certified_error = {res.certified_error!r}")
    print("witness = " + ("none" if res.witness is None else " ".join(f"{z:.12g}" for z in res.witness)))
    if args.out:
        doc = {
            "omega": res.omega,
            "theta_star": res.theta_star,
            "certified_error": res.certified_error,
            "witness": None if res.witness is None else _vec(res.witness),
        }
        write_atomic(args.out, dumps17(doc) + "\n")
    return EXIT_OK


def cmd_xi(args) -> int:
    opts = SphereOptions(starts=args.starts, seed=args.seed or 0, oracle=True if args.oracle else None)
    if args.functional == "kian":
        As = [resolve_matrix(m) for m in args.matrix]
        weights = [float(w) for w in args.weights.split(",")] if args.weights else [1.0 / len(As)] * len(As)
        res = kian_deficiency(As, weights, args.r, opts)
    else:
        if len(args.matrix) != 1:
            raise ParseError(f"{args.functional} takes exactly one matrix")
        A = resolve_matrix(args.matrix[0])
        if args.functional == "pencil":
            res = xi_pencil(A)
        elif args.functional == "thm29":
            res = inf_xi_quadratic_deviation(A, opts)
        else:
            res = inf_xi_variance_ratio(A, opts)
    doc = {
        "functional": args.functional,
        "value": res.value,
        "certified": bool(res.certified),
        "lower_bound": res.lower_bound,
        "oracle_value": res.oracle_value,
        "gradient_norm": res.gradient_norm,
        "starts_used": res.starts_used,
        "minimizer": _vec(res.minimizer),
    }
    _emit(doc, args.out)
    return EXIT_OK


def cmd_bounds(args) -> int:
    A = resolve_matrix(args.matrix)
    ctx = BoundContext(A, tol=args.tol)
    if args.bound == "all":
        rs = [args.r] if args.r is not None else None
        pairs = expand_all(rs) if rs else expand_all()
    else:
        try:
            bid, param = parse_bound_label(args.bound)
        except SpecError as exc:
            raise ParseError(str(exc)) from exc
        if param is None:
            param = ScalarFn.parse(args.f) if args.f else args.r
        pairs = [(bid, param)]
    reports = [evaluate_radius_bound(ctx.A, bid, p, ctx).to_doc() for bid, p in pairs]
    _emit({"version": CATALOG_VERSION, "reports": reports}, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = SweepConfig.load(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.tol is not None:
        cfg.radius_tol = args.tol
    cfg.validate()
    report = run_sweep(cfg)
    out = args.out or cfg.output
    if out:
        write_report(report, out)
    else:
        sys.stdout.write(dumps17(report.to_doc()) + "\n")
    for t in report.bounds:
        print(
            f"{t.id}: evaluated={t.evaluated} passed={t.passed} failed={t.failed} "
            f"not_applicable={t.not_applicable} worst_slack={t.worst_slack!r}",
            file=sys.stderr,
        )
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _svg(samples, eigs) -> str:
    pts = np.array([s.boundary_point for s in samples] + list(eigs))
    lo_x, hi_x = pts.real.min(), pts.real.max()
    lo_y, hi_y = pts.imag.min(), pts.imag.max()
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-12)
    size, margin = 400.0, 20.0
    k = (size - 2 * margin) / span

    def xy(z):
        return margin + (z.real - lo_x) * k, size - margin - (z.imag - lo_y) * k

    poly = " ".join("{:.6f},{:.6f}".format(*xy(s.boundary_point)) for s in samples)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:g}" height="{size:g}" viewBox="0 0 {size:g} {size:g}">',
        f'<polygon points="{poly}" fill="#dde8f4" stroke="#1f4e79" stroke-width="1.5"/>',
    ]
    for z in eigs:
        x, y = xy(z)
        parts.append(
            f'<path d="M{x - 5:.6f},{y - 5:.6f} L{x + 5:.6f},{y + 5:.6f} '
            f'M{x - 5:.6f},{y + 5:.6f} L{x + 5:.6f},{y - 5:.6f}" stroke="#b00020" stroke-width="1.5"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_range_plot(args) -> int:
    A = resolve_matrix(args.matrix)
    samples = numerical_range_boundary(A, args.samples)
    lines = ["theta,lambda_max,re,im"]
    for s in samples:
        z = s.boundary_point
        lines.append(f"{s.theta:.16e},{s.lambda_max:.16e},{z.real:.16e},{z.imag:.16e}")
    text = "\n".join(lines) + "\n"
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    if args.svg:
        write_atomic(args.svg, _svg(samples, np.linalg.eigvals(A)))
    return EXIT_OK


def _global_flags(p, default):
    p.add_argument("--tol", type=float, default=default, help="absolute tolerance for numerical radius")
    p.add_argument("--seed", type=int, default=default, help="seed override")
    p.add_argument("--out", default=default, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="radius-lab", description=__doc__)
    _global_flags(parser, None)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", parents=[common], help="numerical radius of one matrix")
    p.add_argument("matrix", help="matrix file or generator spec")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("xi", parents=[common], help="infimum functionals")
    p.add_argument("functional", choices=["pencil", "thm29", "thm35", "kian"])
    p.add_argument("matrix", nargs="+", help="matrix file(s) or generator spec(s)")
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--oracle", action="store_true", help="force the grid oracle (dim <= 3)")
    p.add_argument("--weights", help="comma-separated weights for kian")
    p.add_argument("--r", type=float, default=2.0, help="exponent for kian")
    p.set_defaults(func=cmd_xi)

    p = sub.add_parser("bounds", parents=[common], help="evaluate catalog bounds on one matrix")
    p.add_argument("--matrix", required=True, help="matrix file or generator spec")
    p.add_argument("--bound", default="all", help="bound id, e.g. thm29 or cor_power(r=1.5), or 'all'")
    p.add_argument("--r", type=float, help="exponent for the power corollaries")
    p.add_argument("--f", help="operator convex function for thm24: identity or power:R")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", parents=[common], help="run a seeded verification sweep")
    p.add_argument("config", help="sweep config (JSON)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("range-plot", parents=[common], help="numerical range boundary as CSV/SVG")
    p.add_argument("matrix", help="matrix file or generator spec")
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--svg", help="also write an SVG of the boundary with the spectrum")
    p.set_defaults(func=cmd_range_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConfigError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RadiusLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
