"""Command-line front end: problem ingestion, pipeline, exact/sampled export.

Exit codes: 0 success with exact regularity certificate, 2 empty residue
kernel, 3 positivity infeasible or indeterminate (including a failed hull
gate), 4 parse/usage errors.  All exact data is serialized as rational
strings; sampled data as floats.  Outputs are deterministic for a fixed
config and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyKernelError, ParseError, PhforgeError, RationalityError
from .geometry import (
    angle_parameters,
    convex_hull_contains_origin,
    sample_motion,
    speed_function,
    tangent_indicatrix,
)
from .polynomial import Polynomial
from .positivity import (
    average_solutions,
    build_gram_slice,
    certify_regular,
    sdp_feasible_point,
)
from .quaternion import Quaternion, QuaternionPolynomial, i_reduce
from .rationals import format_rational, parse_rational
from .ratfunc import PoleStructure, QuadraticFactor
from .synthesis import (
    RationalCurve,
    SynthesisProblem,
    build_residue_system,
    closure_point,
    synthesize_curve,
)

MARGIN_FLOOR = 1e-8
BUNDLE_SCHEMA = "phforge-bundle-v1"


# -- config ----------------------------------------------------------------


@dataclass
class ProblemConfig:
    a_poly: QuaternionPolynomial
    poles: PoleStructure
    margin: float = 1e-3
    samples: int = 256
    seed: int = 0
    weights: tuple = (Fraction(1),)
    view: tuple = (1.0, 2.0, 3.0)


def _rational(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


def parse_config(data) -> ProblemConfig:
    """Validate a config mapping; error messages carry the offending field."""
    if not isinstance(data, dict):
        raise ParseError("config must be a JSON object")
    quat = data.get("quaternion")
    if not isinstance(quat, list) or not quat:
        raise ParseError("expected a nonempty array of [w,x,y,z] entries", "quaternion")
    coeffs = []
    for i, entry in enumerate(quat):
        if not isinstance(entry, list) or len(entry) != 4:
            raise ParseError("expected [w,x,y,z]", f"quaternion[{i}]")
        coeffs.append(
            Quaternion(*(_rational(v, f"quaternion[{i}][{j}]") for j, v in enumerate(entry)))
        )
    a_poly = QuaternionPolynomial(coeffs)
    if a_poly.is_zero:
        raise ParseError("zero polynomial", "quaternion")

    poles_raw = data.get("poles")
    if not isinstance(poles_raw, list) or not poles_raw:
        raise ParseError("expected a nonempty array of {b, c, multiplicity}", "poles")
    factors = []
    for i, entry in enumerate(poles_raw):
        if not isinstance(entry, dict):
            raise ParseError("expected {b, c, multiplicity}", f"poles[{i}]")
        b = _rational(entry.get("b", 0), f"poles[{i}].b")
        c = _rational(entry.get("c"), f"poles[{i}].c") if "c" in entry else None
        if c is None:
            raise ParseError("missing field c", f"poles[{i}].c")
        mult = entry.get("multiplicity", 1)
        if not isinstance(mult, int) or mult < 1:
            raise ParseError("multiplicity must be a positive integer", f"poles[{i}].multiplicity")
        try:
            factors.append(QuadraticFactor(b, c, mult))
        except ValueError as exc:
            raise ParseError(str(exc), f"poles[{i}]") from None
    try:
        poles = PoleStructure(tuple(factors))
    except ValueError as exc:
        raise ParseError(str(exc), "poles") from None

    opts = data.get("options", {})
    if not isinstance(opts, dict):
        raise ParseError("options must be an object", "options")
    cfg = ProblemConfig(a_poly, poles)
    if "margin" in opts:
        try:
            cfg.margin = float(opts["margin"])
        except (TypeError, ValueError):
            raise ParseError("margin must be a number", "options.margin") from None
        if not (cfg.margin > 0):
            raise ParseError("margin must be positive", "options.margin")
    if "samples" in opts:
        if not isinstance(opts["samples"], int) or opts["samples"] < 16:
            raise ParseError("samples must be an integer >= 16", "options.samples")
        cfg.samples = opts["samples"]
    if "seed" in opts:
        if not isinstance(opts["seed"], int):
            raise ParseError("seed must be an integer", "options.seed")
        cfg.seed = opts["seed"]
    if "weights" in opts:
        if not isinstance(opts["weights"], list) or not opts["weights"]:
            raise ParseError("weights must be a nonempty array", "options.weights")
        ws = tuple(_rational(w, f"options.weights[{i}]") for i, w in enumerate(opts["weights"]))
        if any(w <= 0 for w in ws):
            raise ParseError("weights must be positive", "options.weights")
        cfg.weights = ws
    if "view" in opts:
        v = opts["view"]
        if not isinstance(v, list) or len(v) != 3:
            raise ParseError("view must be [x, y, z]", "options.view")
        cfg.view = tuple(float(c) for c in v)
        if all(c == 0.0 for c in cfg.view):
            raise ParseError("view direction must be nonzero", "options.view")
    return cfg


def canonical_config(cfg: ProblemConfig) -> dict:
    """Round-trip form: parse(canonical_config(parse(x))) == parse(x)."""
    return {
        "quaternion": [
            [format_rational(v) for v in (q.w, q.x, q.y, q.z)] for q in cfg.a_poly.coeffs
        ],
        "poles": [
            {"b": format_rational(f.b), "c": format_rational(f.c), "multiplicity": f.multiplicity}
            for f in cfg.poles.factors
        ],
        "options": {
            "margin": cfg.margin,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "weights": [format_rational(w) for w in cfg.weights],
            "view": list(cfg.view),
        },
    }


def load_config(path: str) -> ProblemConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    return parse_config(data)


# -- exact serialization helpers -------------------------------------------


def _poly_to_rats(p: Polynomial) -> list[str]:
    return [format_rational(c) for c in p.coeffs]


def _poly_from_rats(values, where: str) -> Polynomial:
    if not isinstance(values, list):
        raise ParseError("expected an array of rationals", where)
    return Polynomial([_rational(v, f"{where}[{i}]") for i, v in enumerate(values)])


def _finite_or_str(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _dump_json(obj, out_path: str | None):
    text = json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- check -----------------------------------------------------------------


def _hull_report(cert) -> dict:
    status = {True: True, False: False, None: "indeterminate"}[cert.status]
    report = {"status": status, "residual": cert.residual, "gap": cert.gap}
    if cert.weights is not None:
        weights = [
            (i, w) for i, w in enumerate(cert.weights) if w > 1e-12
        ]
        report["weights"] = [
            {"parameter": _finite_or_str(cert.parameters[i]), "weight": w} for i, w in weights
        ]
    if cert.direction is not None:
        report["separating_direction"] = list(cert.direction)
    return report


def cmd_check(cfg: ProblemConfig, out_path: str | None) -> int:
    reduced, right = i_reduce(cfg.a_poly)
    T = tangent_indicatrix(reduced)
    cert = convex_hull_contains_origin(T, samples=cfg.samples)
    report = {
        "i_reduced": right.degree <= 0,
        "right_factor_degree": max(right.degree, 0),
        "hull": _hull_report(cert),
        "indicatrix": {
            "numerators": [_poly_to_rats(n) for n in T.nums],
            "denominator": _poly_to_rats(T.den),
            "homogeneous_degree": T.homogeneous_degree,
        },
    }
    _dump_json(report, out_path)
    return 0


# -- synth -----------------------------------------------------------------


def _relaxation_margins(margin: float):
    out = [margin]
    while out[-1] / 10.0 >= MARGIN_FLOOR:
        out.append(out[-1] / 10.0)
    return out


def _solve_feasible(slice_, margin: float, bias=None):
    """Try the requested margin first, then geometric relaxation to the floor."""
    tried = []
    for m in _relaxation_margins(margin):
        res = sdp_feasible_point(slice_, m, objective_bias=bias)
        tried.append((m, res.status, res.min_eigenvalue))
        if res.is_feasible:
            return res, m, tried
    return res, None, tried


def cmd_synth(cfg: ProblemConfig, out_path: str, force: bool) -> int:
    reduced, right = i_reduce(cfg.a_poly)
    T = tangent_indicatrix(reduced)
    hull = convex_hull_contains_origin(T, samples=cfg.samples)
    if hull.status is not True and not force:
        status = "false" if hull.status is False else "indeterminate"
        print(
            f"hull test {status}: no bounded regular solution can exist "
            "(use --force to attempt anyway)",
            file=sys.stderr,
        )
        return 3
    problem = SynthesisProblem(reduced, cfg.poles)
    space = build_residue_system(problem)
    if space.dimension == 0:
        print(
            "residue conditions admit only the zero numerator; "
            "raise the pole multiplicities",
            file=sys.stderr,
        )
        return 2
    try:
        slice_ = build_gram_slice(space)
    except EmptyKernelError:
        return 2

    rng = random.Random(cfg.seed)
    results, attempts_log = [], []
    base, achieved, tried = _solve_feasible(slice_, cfg.margin)
    attempts_log.extend(tried)
    if not base.is_feasible:
        print(
            "no strictly positive numerator found "
            f"(best trace-normalized eigenvalue {base.min_eigenvalue:.3e})",
            file=sys.stderr,
        )
        return 3
    results.append(base)
    # additional solutions for weighted averaging: bias the objective so the
    # central path lands on different interior points, sized against the
    # base witness so the perturbation is a fraction of the margin scale
    x_base = [abs(v) for v in base.witness_x]
    x_ref = sum(x_base) / len(x_base) or 1.0
    for _ in range(len(cfg.weights) - 1):
        found = None
        for frac in (0.5, 0.05):
            bias = [
                rng.gauss(0.0, 1.0) * frac * achieved / (xb + x_ref)
                for xb in x_base
            ]
            res = sdp_feasible_point(slice_, achieved, objective_bias=bias)
            if res.is_feasible:
                found = res
                break
        results.append(found if found is not None else base)

    curves = [synthesize_curve(problem, r.witness_mu) for r in results]
    if len(curves) == 1:
        curve = curves[0] * cfg.weights[0]
    else:
        curve = average_solutions(curves, cfg.weights)
    cert = certify_regular(curve.mu)
    if not cert:
        print("combined numerator failed the exact regularity certificate", file=sys.stderr)
        return 3

    bundle = _build_bundle(cfg, problem, space, slice_, results, achieved, curve, cert, hull, attempts_log)
    _dump_json(bundle, out_path)
    return 0


def _build_bundle(cfg, problem, space, slice_, results, achieved, curve, cert, hull, attempts):
    poses = sample_motion(problem.a_poly, curve, cfg.samples)
    speed = speed_function(curve)
    speeds = [speed.eval_float(t) for t in angle_parameters(cfg.samples)]
    closure = closure_point(curve)
    return {
        "schema": BUNDLE_SCHEMA,
        "config": canonical_config(cfg),
        "generator": {
            "coefficients": [
                [format_rational(v) for v in (q.w, q.x, q.y, q.z)]
                for q in problem.a_poly.coeffs
            ],
            "i_reduced": True,
        },
        "alpha": _poly_to_rats(problem.alpha),
        "mu": _poly_to_rats(curve.mu),
        "curve": {
            "numerators": [_poly_to_rats(n) for n in curve.nums],
            "denominator": _poly_to_rats(curve.den),
        },
        "diagnostics": {
            "kernel_dimension": space.dimension,
            "slice_dimension": slice_.slice_dimension,
            "margin_requested": cfg.margin,
            "margin_achieved": achieved,
            "min_eigenvalue": results[0].min_eigenvalue,
            "relaxation_log": [
                {"margin": m, "status": s, "min_eigenvalue": lam} for m, s, lam in attempts
            ],
            "regularity": {
                "regular": cert.regular,
                "real_root_count": cert.real_root_count,
                "leading_coefficient": format_rational(cert.leading_coefficient),
            },
            "closure_point": [format_rational(v) for v in closure],
            "hull": _hull_report(hull),
            "speed_polar_minimum": min(speeds),
            "speed_polar_maximum": max(speeds),
        },
        "samples": {
            "count": cfg.samples,
            "angles": [2.0 * math.pi * j / cfg.samples for j in range(cfg.samples)],
            "parameters": [_finite_or_str(p.parameter) for p in poses],
            "positions": [list(p.position) for p in poses],
            "poses": [
                {
                    "parameter": _finite_or_str(p.parameter),
                    "position": list(p.position),
                    "rotation": list(p.rotation),
                    "frame": [list(col) for col in p.frame],
                }
                for p in poses
            ],
            "speed": speeds,
        },
    }


# -- sample / frames --------------------------------------------------------


@dataclass
class Bundle:
    config: ProblemConfig
    curve: RationalCurve
    generator: QuaternionPolynomial
    data: dict = field(repr=False, default_factory=dict)


def load_bundle(path: str) -> Bundle:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read bundle: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict) or data.get("schema") != BUNDLE_SCHEMA:
        raise ParseError(f"not a {BUNDLE_SCHEMA} file", "schema")
    cfg = parse_config(data.get("config", {}))
    curve_raw = data.get("curve")
    if not isinstance(curve_raw, dict):
        raise ParseError("missing curve", "curve")
    nums = curve_raw.get("numerators")
    if not isinstance(nums, list) or len(nums) != 3:
        raise ParseError("expected three numerators", "curve.numerators")
    curve = RationalCurve(
        tuple(_poly_from_rats(n, f"curve.numerators[{i}]") for i, n in enumerate(nums)),
        _poly_from_rats(curve_raw.get("denominator"), "curve.denominator"),
        generator=cfg.a_poly,
        poles=cfg.poles,
        mu=_poly_from_rats(data["mu"], "mu") if "mu" in data else None,
    )
    gen = QuaternionPolynomial(
        [
            Quaternion(*(_rational(v, f"generator[{i}]") for v in entry))
            for i, entry in enumerate(data.get("generator", {}).get("coefficients", []))
        ]
    ) if data.get("generator", {}).get("coefficients") else cfg.a_poly
    return Bundle(cfg, curve, gen, data)


def _sample_positions(bundle: Bundle, n: int):
    params = angle_parameters(n)
    return params, [bundle.curve.eval_float(t) for t in params]


def _write_csv(rows, header, out_path):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v) for v in row))
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_obj(positions, out_path):
    lines = [f"v {repr(x)} {repr(y)} {repr(z)}" for x, y, z in positions]
    closed = " ".join(str(i + 1) for i in range(len(positions)))
    lines.append(f"l {closed} 1")
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _project(positions, view):
    import numpy as np

    d = np.array(view, dtype=float)
    d = d / np.linalg.norm(d)
    probe = np.array([0.0, 0.0, 1.0]) if abs(d[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = np.cross(probe, d)
    e1 = e1 / np.linalg.norm(e1)
    e2 = np.cross(d, e1)
    pts = np.array(positions)
    return pts @ e1, pts @ e2


def _write_svg(bundle: Bundle, n: int, out_path):
    params, positions = _sample_positions(bundle, n)
    speed = speed_function(bundle.curve)
    angles = [2.0 * math.pi * j / n for j in range(n)]
    speeds = [speed.eval_float(t) for t in params]

    px, py = _project(positions, bundle.config.view)
    w, h, pad = 640.0, 880.0, 40.0
    span = max(px.max() - px.min(), py.max() - py.min()) or 1.0
    scale = (w - 2 * pad) / span
    cx = (px.max() + px.min()) / 2
    cy = (py.max() + py.min()) / 2

    def curve_pt(i):
        return (
            w / 2 + (px[i] - cx) * scale,
            h * 0.35 - (py[i] - cy) * scale,
        )

    smax = max(abs(s) for s in speeds) or 1.0
    rad = (w - 2 * pad) / 2.0
    polar_c = (w / 2, h * 0.78)

    def polar_pt(i):
        r = abs(speeds[i]) / smax * rad * 0.9
        return (polar_c[0] + r * math.cos(angles[i]), polar_c[1] - r * math.sin(angles[i]))

    def path(points):
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in points)
        return f'<polygon fill="none" stroke="black" stroke-width="1.2" points="{coords}"/>'

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
        f'viewBox="0 0 {w:.0f} {h:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
        path([curve_pt(i) for i in range(n)]),
        f'<circle cx="{polar_c[0]}" cy="{polar_c[1]}" r="2" fill="black"/>',
        path([polar_pt(i) for i in range(n)]),
        f'<text x="{w/2:.0f}" y="{h*0.55:.0f}" text-anchor="middle" '
        'font-family="sans-serif" font-size="14">orthographic projection</text>',
        f'<text x="{w/2:.0f}" y="{h*0.97:.0f}" text-anchor="middle" '
        'font-family="sans-serif" font-size="14">speed polar plot</text>',
        "</svg>",
    ]
    text = "\n".join(parts) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_sample(bundle: Bundle, n: int, fmt: str, out_path) -> int:
    if fmt == "json":
        params, positions = _sample_positions(bundle, n)
        _dump_json(
            {
                "parameters": [_finite_or_str(t) for t in params],
                "positions": [list(p) for p in positions],
            },
            out_path,
        )
    elif fmt == "csv":
        _, positions = _sample_positions(bundle, n)
        _write_csv(positions, ("x", "y", "z"), out_path)
    elif fmt == "obj":
        _, positions = _sample_positions(bundle, n)
        _write_obj(positions, out_path)
    elif fmt == "svg":
        _write_svg(bundle, n, out_path)
    else:
        raise ParseError(f"unknown format {fmt!r}", "--format")
    return 0


def cmd_frames(bundle: Bundle, n: int, fmt: str, out_path) -> int:
    poses = sample_motion(bundle.generator, bundle.curve, n)
    if fmt == "json":
        _dump_json(
            [
                {
                    "parameter": _finite_or_str(p.parameter),
                    "position": list(p.position),
                    "rotation": list(p.rotation),
                    "frame": [list(col) for col in p.frame],
                }
                for p in poses
            ],
            out_path,
        )
    elif fmt == "csv":
        rows = []
        for p in poses:
            rows.append(
                (_finite_or_str(p.parameter),)
                + p.position
                + p.rotation
                + tuple(v for col in p.frame for v in col)
            )
        header = (
            "parameter,px,py,pz,qw,qx,qy,qz,"
            "tx,ty,tz,bx,by,bz,cx,cy,cz"
        ).split(",")
        _write_csv(rows, header, out_path)
    else:
        raise ParseError(f"format {fmt!r} not supported for frames", "--format")
    return 0


# -- entry point ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise ParseError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="phforge", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("check", help="i-reduction, indicatrix, hull test")
    pc.add_argument("--config", required=True)
    pc.add_argument("--out")
    pc.add_argument("--samples", type=int)

    ps = sub.add_parser("synth", help="full synthesis pipeline, writes a bundle")
    ps.add_argument("--config", required=True)
    ps.add_argument("--out", required=True)
    ps.add_argument("--margin", type=float)
    ps.add_argument("--samples", type=int)
    ps.add_argument("--seed", type=int)
    ps.add_argument("--force", action="store_true")

    pp = sub.add_parser("sample", help="export the curve polyline from a bundle")
    pp.add_argument("--config", required=True, help="bundle file produced by synth")
    pp.add_argument("--out")
    pp.add_argument("--samples", type=int, default=256)
    pp.add_argument("--format", default="json", choices=("json", "csv", "obj", "svg"))

    pf = sub.add_parser("frames", help="export framing-motion poses from a bundle")
    pf.add_argument("--config", required=True, help="bundle file produced by synth")
    pf.add_argument("--out")
    pf.add_argument("--samples", type=int, default=256)
    pf.add_argument("--format", default="json", choices=("json", "csv"))
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "check":
            cfg = load_config(args.config)
            if args.samples:
                cfg.samples = args.samples
            return cmd_check(cfg, args.out)
        if args.command == "synth":
            cfg = load_config(args.config)
            if args.margin is not None:
                if args.margin <= 0:
                    raise ParseError("margin must be positive", "--margin")
                cfg.margin = args.margin
            if args.samples:
                cfg.samples = args.samples
            if args.seed is not None:
                cfg.seed = args.seed
            return cmd_synth(cfg, args.out, args.force)
        if args.command == "sample":
            return cmd_sample(load_bundle(args.config), args.samples, args.format, args.out)
        if args.command == "frames":
            return cmd_frames(load_bundle(args.config), args.samples, args.format, args.out)
        raise ParseError(f"unknown command {args.command!r}")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except RationalityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PhforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
