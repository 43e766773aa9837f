"""Shared fixtures: the degree-3 reference generator, printed curve data,
randomized problem generation, and the bulk property-suite runner."""

from __future__ import annotations

import math
import random
from fractions import Fraction as F

import numpy as np

from phforge import (
    PoleStructure,
    Polynomial as P,
    QuadraticFactor,
    Quaternion,
    QuaternionPolynomial as QP,
    RationalCurve,
    RationalFunction as RF,
    SynthesisProblem,
    build_residue_system,
    closure_integral,
    i_reduce,
    residue_at,
    synthesize_curve,
)


def generator_deg3() -> QP:
    """t^3 + (2j+k)t^2 - (1+2i)t - k, the running degree-3 example."""
    return QP(
        [
            Quaternion.of(0, 0, 0, -1),
            Quaternion.of(-1, -2, 0, 0),
            Quaternion.of(0, 0, 2, 1),
            Quaternion.of(1),
        ]
    )


def poles_single(b, c, mult) -> PoleStructure:
    return PoleStructure((QuadraticFactor(b, c, mult),))


# Printed reference curves over the denominator 798960 (t^2+4)^5.
PRINTED_DEN = P([798960]) * P([4, 0, 1]) ** 5
PRINTED_R0 = (
    P([0, -199740, 0, 316255, 0, -168955, 0, -1595, 0, -165]),
    P([367480, 0, 659090, 0, -269675, 0, -825, 0, -165]),
    P([549360, 0, 1086180, 0, 543090, 0, 2640, 0, 330]),
)
PRINTED_R2 = (
    P([0, 0, 0, -66580, 0, 256900, 0, -156700, 0, 11340]),
    P([209136, 0, 261420, 0, 230580, 0, -342780, 0, 11340]),
    P([3644640, 0, 4555800, 0, 2477640, 0, 617520, 0, -22680]),
)

MU0 = P([1, 0, 0, 0, F(11, 53264)])
MU2 = P([0, 0, 1, 0, F(-189, 13316)])


def matches_up_to_translation(curve: RationalCurve, printed_nums, printed_den) -> bool:
    """Componentwise equality of rational functions modulo an added constant."""
    for comp, pn in zip(curve.components(), printed_nums):
        diff = comp - RF(pn, printed_den)
        if not (diff.is_zero or (diff.is_polynomial and diff.numerator.degree == 0)):
            return False
    return True


def example1_curve() -> RationalCurve:
    """The printed bounded regular curve with speed 2(t^4+t^2+1)/(t^2+1)^2."""
    den = P([15]) * P([1, 0, 1]) ** 5
    return RationalCurve.from_components(
        RF(P([0, 0, -60, 0, 30, 0, 110, 0, 130, 0, 14]), den),
        RF(P([0, 60, 0, 60, 0, 96, 0, 60, 0, 60]), den),
        RF(P([0, 0, -120, 0, -300, 0, -300, 0, -120]), den),
    )


def circle_curve() -> RationalCurve:
    return RationalCurve.from_components(
        RF(P([1, 0, -1]), P([1, 0, 1])), RF(P([0, 2]), P([1, 0, 1])), RF(P([0]))
    )


def random_quaternion_poly(rng: random.Random, max_degree: int = 3) -> QP | None:
    deg = rng.randint(1, max_degree)
    coeffs = [
        Quaternion.of(*(rng.randint(-2, 2) for _ in range(4))) for _ in range(deg + 1)
    ]
    if not coeffs[-1]:
        return None
    a = QP(coeffs)
    a, _ = i_reduce(a)
    if a.degree < 1:
        return None
    return a


def random_pole_structure(rng: random.Random, min_total: int, max_total: int = 8):
    total = rng.randint(min_total, max_total)
    nfac = 1 if total < 4 else rng.choice((1, 1, 2))
    if nfac == 2:
        first = rng.randint(1, total - 1)
        multiplicities = (first, total - first)
    else:
        multiplicities = (total,)
    factors = []
    seen = set()
    for m in multiplicities:
        for _ in range(20):
            b = rng.randint(-2, 2)
            c = b * b // 4 + rng.randint(1, 4)
            if (b, c) not in seen:
                seen.add((b, c))
                factors.append(QuadraticFactor(b, c, m))
                break
        else:
            return None
    return PoleStructure(tuple(factors))


def random_synthesized_problems(count: int, seed: int = 20240601, max_attempts: int = 500):
    """Sample problems with deg A <= 3 and total multiplicity <= 8 until
    ``count`` of them have a nontrivial kernel; returns
    (problem, space, mu, curve) tuples with mu a random kernel member."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        a = random_quaternion_poly(rng)
        if a is None:
            continue
        poles = random_pole_structure(rng, min_total=a.degree + 2)
        if poles is None:
            continue
        try:
            problem = SynthesisProblem(a, poles)
        except Exception:
            continue
        space = build_residue_system(problem)
        if space.dimension == 0:
            continue
        coeffs = [rng.randint(-3, 3) for _ in space.basis]
        if all(v == 0 for v in coeffs):
            coeffs[0] = 1
        mu = space.combination(coeffs)
        if mu.is_zero:
            continue
        curve = synthesize_curve(problem, mu)
        out.append((problem, space, mu, curve))
    return out


def ph_identity_holds(problem, mu, curve) -> bool:
    hx, hy, hz = curve.hodograph()
    lhs = hx * hx + hy * hy + hz * hz
    sigma = RF(mu * problem.a_poly.norm_poly(), problem.alpha)
    return lhs == sigma * sigma


def residues_vanish(problem, mu) -> bool:
    for q in problem.poles.factors:
        for wc in problem.hodograph_dir:
            f = RF(mu * wc, problem.alpha)
            try:
                if not residue_at(f, q).is_zero:
                    return False
            except ValueError:
                continue  # pole cancelled entirely
    return True


def tangency_holds(problem, curve) -> bool:
    wx, wy, wz = (RF(w) for w in problem.hodograph_dir)
    hx, hy, hz = curve.hodograph()
    return (
        (hy * wz - hz * wy).is_zero
        and (hz * wx - hx * wz).is_zero
        and (hx * wy - hy * wx).is_zero
    )


def worst_frame_defect(problem, curve, n_samples: int = 1000, seed: int = 0) -> float:
    """Max orthonormality defect of the frames at Cauchy-distributed samples.

    Vectorized: the rotation matrix of a unit quaternion is orthonormal up
    to rounding in the normalization, which is what this measures.
    """
    rng = np.random.default_rng(seed)
    ts = rng.standard_cauchy(n_samples)
    comp = [np.array(p.float_coeffs() or [0.0]) for p in problem.a_poly.component_polys()]
    near = np.abs(ts) <= 1.0
    vals = np.empty((4, n_samples))
    for i, cs in enumerate(comp):
        vals[i, near] = np.polynomial.polynomial.polyval(ts[near], cs)
        vals[i, ~near] = np.polynomial.polynomial.polyval(1.0 / ts[~near], cs[::-1])
    w, x, y, z = vals / np.sqrt((vals**2).sum(axis=0))
    rot = np.empty((n_samples, 3, 3))
    rot[:, 0, 0] = 1 - 2 * (y * y + z * z)
    rot[:, 0, 1] = 2 * (x * y - w * z)
    rot[:, 0, 2] = 2 * (x * z + w * y)
    rot[:, 1, 0] = 2 * (x * y + w * z)
    rot[:, 1, 1] = 1 - 2 * (x * x + z * z)
    rot[:, 1, 2] = 2 * (y * z - w * x)
    rot[:, 2, 0] = 2 * (x * z - w * y)
    rot[:, 2, 1] = 2 * (y * z + w * x)
    rot[:, 2, 2] = 1 - 2 * (x * x + y * y)
    defect = np.abs(np.einsum("nij,nik->njk", rot, rot) - np.eye(3))
    return float(defect.max())


def unit_scale(curve: RationalCurve) -> RationalCurve:
    """Rescale exactly so the sampled positions fit a unit box.

    Random integer kernels produce curves of wildly varying size; absolute
    float tolerances presume the plotting normalization (curves scaled to
    roughly unit edge length), so the quadrature check applies it.
    """
    radius = 0.0
    for t in (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, math.inf):
        radius = max(radius, max(abs(v) for v in curve.eval_float(t)))
    scale = F(radius).limit_denominator(10**9)
    if scale == 0:
        return curve
    return curve * (1 / scale)


def run_property_suite(problems) -> dict:
    """Criteria (a)-(f) over synthesized curves; returns failure counts."""
    fails = {k: 0 for k in "abcdef"}
    for problem, _space, mu, curve in problems:
        if not ph_identity_holds(problem, mu, curve):
            fails["a"] += 1
        if not residues_vanish(problem, mu):
            fails["b"] += 1
        try:
            from phforge import closure_point

            limits = closure_point(curve)
            fwd = [c.eval_float(math.inf) for c in curve.components()]
            if any(abs(float(l) - v) > 1e-9 * (1 + abs(float(l))) for l, v in zip(limits, fwd)):
                fails["c"] += 1
        except ValueError:
            fails["c"] += 1
        quad = closure_integral(unit_scale(curve), 512)
        if max(abs(v) for v in quad) >= 1e-8:
            fails["d"] += 1
        if worst_frame_defect(problem, curve, 1000) > 1e-12:
            fails["e"] += 1
        if not tangency_holds(problem, curve):
            fails["f"] += 1
    return fails
