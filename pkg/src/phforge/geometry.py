"""Projective-line geometry: indicatrix, speed, hull test, framing motion.

The curve parameter lives on the projective line, identified with the unit
circle; every float evaluation switches charts at |t| = 1 so the closure
point t = infinity is an ordinary point.  Exact identities (unit norm of the
tangent indicatrix, rationality of the speed) are verified in exact
arithmetic; sampling and the convex-hull test are the only floating parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NonPythagoreanError
from .polynomial import Polynomial, poly_sqrt
from .quaternion import QI, QuaternionPolynomial, rotate_vector
from .ratfunc import RationalFunction
from .synthesis import RationalCurve


@dataclass(frozen=True)
class HomogeneousPoint:
    """Point (u : v) of the projective line, equal up to nonzero scaling."""

    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))
        if self.u == 0 and self.v == 0:
            raise ValueError("(0 : 0) is not a projective point")

    @classmethod
    def from_parameter(cls, t) -> "HomogeneousPoint":
        return cls(Fraction(t), Fraction(1))

    @classmethod
    def infinity(cls) -> "HomogeneousPoint":
        return cls(Fraction(1), Fraction(0))

    def circle_point(self) -> tuple[Fraction, Fraction]:
        """Exact image on the unit circle: ((u^2-v^2)/(u^2+v^2), 2uv/(u^2+v^2))."""
        n = self.u * self.u + self.v * self.v
        return ((self.u * self.u - self.v * self.v) / n, 2 * self.u * self.v / n)

    def same_point(self, other: "HomogeneousPoint") -> bool:
        return self.u * other.v == self.v * other.u


def parameter_of_angle(theta: float) -> float:
    """Parameter t with circle angle theta; theta = 0 is the closure point."""
    theta = math.fmod(theta, 2.0 * math.pi)
    if theta == 0.0:
        return math.inf
    half = (math.pi - theta) / 2.0
    c = math.cos(half)
    if c == 0.0:
        return math.inf
    return math.sin(half) / c


def angle_parameters(n: int) -> list[float]:
    """n parameters equidistant in circle angle, starting at t = infinity."""
    return [parameter_of_angle(2.0 * math.pi * j / n) for j in range(n)]


class TangentIndicatrix:
    """Unit tangent direction as a homogeneous rational map to the sphere.

    Stored dehomogenized with the homogeneity degree kept alongside, so
    second-chart evaluation pads the coefficient reversal correctly.  The
    defining identity sum(num_c^2) = den^2 holds exactly.
    """

    def __init__(self, nums, den: Polynomial, homogeneous_degree: int):
        nums = tuple(nums)
        if len(nums) != 3:
            raise ValueError("three components required")
        if any(n.degree > homogeneous_degree for n in nums) or den.degree > homogeneous_degree:
            raise ValueError("homogeneity degree below component degree")
        total = Polynomial.zero()
        for n in nums:
            total = total + n * n
        if total != den * den:
            raise ValueError("components do not satisfy the unit-norm identity")
        self.nums = nums
        self.den = den
        self.homogeneous_degree = homogeneous_degree

    def evaluate(self, t: float) -> np.ndarray:
        d = self.homogeneous_degree
        if not math.isinf(t) and abs(t) <= 1.0:
            den = self.den.eval_float(t)
            return np.array([n.eval_float(t) for n in self.nums]) / den
        s = 0.0 if math.isinf(t) else 1.0 / t
        den = self.den.reversed_padded(d).eval_float(s)
        return np.array([n.reversed_padded(d).eval_float(s) for n in self.nums]) / den

    def sample(self, n: int) -> tuple[list[float], np.ndarray]:
        params = angle_parameters(n)
        return params, np.array([self.evaluate(t) for t in params])


def tangent_indicatrix(a: QuaternionPolynomial) -> TangentIndicatrix:
    """Indicatrix A i A* / (A A*) of a rotational generator."""
    if a.is_zero:
        raise ValueError("zero generator")
    nums = rotate_vector(a, QI).vector_polys()
    return TangentIndicatrix(nums, a.norm_poly(), 2 * a.degree)


def speed_function(c: RationalCurve) -> RationalFunction:
    """Circle-chart speed L(t) = |r'(t)| (1 + t^2) / 2, exactly rational.

    Raises NonPythagoreanError when |r'|^2 is not the square of a rational
    function.  The sign is normalized so the numerator has positive leading
    coefficient; for regular curves this is the everywhere-positive branch.
    """
    hx, hy, hz = c.hodograph()
    ssq = hx * hx + hy * hy + hz * hz
    if ssq.is_zero:
        return RationalFunction.zero()
    num = poly_sqrt(ssq.numerator)
    den = poly_sqrt(ssq.denominator)
    if num is None or den is None:
        raise NonPythagoreanError("squared speed is not a rational square")
    sigma = RationalFunction(num, den)
    half_circle = RationalFunction(Polynomial((Fraction(1, 2), 0, Fraction(1, 2))))
    speed = sigma * half_circle
    if speed.numerator.leading() < 0:
        speed = -speed
    return speed


@dataclass(frozen=True)
class HullCertificate:
    """Outcome of the origin-in-convex-hull test on indicatrix samples.

    status True carries convex-combination weights with residual
    |sum w_i T_i|; status False carries a separating direction d with
    d . T_i >= gap > 0 for every sample; None is indeterminate and reports
    both best values.
    """

    status: bool | None
    parameters: tuple
    weights: tuple | None
    residual: float
    direction: tuple | None
    gap: float

    def __bool__(self):
        return self.status is True


def _min_norm_point(points: np.ndarray, tol: float = 1e-12):
    """Wolfe's algorithm: min-norm point of conv(points) with its weights."""
    npts = len(points)
    start = int(np.argmin(np.einsum("ij,ij->i", points, points)))
    active = [start]
    weights = np.array([1.0])
    x = points[start].copy()
    for _ in range(8 * npts + 64):
        dots = points @ x
        j = int(np.argmin(dots))
        if dots[j] > float(x @ x) - tol * (1.0 + float(x @ x)):
            break
        if j not in active:
            active.append(j)
            weights = np.append(weights, 0.0)
        for _ in range(len(points) + 8):
            sub = points[active]
            k = len(active)
            kkt = np.zeros((k + 1, k + 1))
            kkt[:k, :k] = sub @ sub.T
            kkt[:k, k] = 1.0
            kkt[k, :k] = 1.0
            rhs = np.zeros(k + 1)
            rhs[k] = 1.0
            v = np.linalg.lstsq(kkt, rhs, rcond=None)[0][:k]
            if np.all(v > 1e-14):
                weights = v
                break
            shrink = []
            for i in range(k):
                if weights[i] - v[i] > 1e-18:
                    shrink.append(weights[i] / (weights[i] - v[i]))
                else:
                    shrink.append(np.inf)
            theta = min(1.0, min(shrink))
            weights = (1 - theta) * weights + theta * v
            keep = weights > 1e-14
            active = [a for a, k_ in zip(active, keep) if k_]
            weights = weights[keep]
            weights = weights / weights.sum()
        x = weights @ points[active]
    full = np.zeros(npts)
    for a, w in zip(active, weights):
        full[a] += w
    return x, full


def convex_hull_contains_origin(
    T: TangentIndicatrix, samples: int = 256, tolerance: float = 1e-8
) -> HullCertificate:
    """Sampling-based origin containment test with explicit certificates.

    Samples the indicatrix uniformly in circle angle over both charts and
    runs a min-norm-point descent; the hull hypothesis is open-condition
    stable, so certificates at finite sampling density are meaningful.  A
    borderline outcome (tiny positive distance without a clean separating
    margin) is reported as indeterminate rather than guessed.
    """
    if samples < 16:
        raise ValueError("at least 16 samples required")
    params, pts = T.sample(samples)
    x, weights = _min_norm_point(pts)
    residual = float(np.linalg.norm(x))
    if residual <= tolerance:
        return HullCertificate(
            True, tuple(params), tuple(weights), residual, None, 0.0
        )
    d = x / residual
    gap = float(np.min(pts @ d))
    if gap > tolerance:
        return HullCertificate(False, tuple(params), None, residual, tuple(d), gap)
    return HullCertificate(None, tuple(params), tuple(weights), residual, tuple(d), gap)


@dataclass(frozen=True)
class FramePose:
    """One sample of the framing motion: position, rotation, frame columns.

    The frame columns (tangent, binormal-like, complement) are the rotated
    images of the three basis vectors; the first is parallel to the sampled
    curve derivative.
    """

    parameter: float
    position: tuple[float, float, float]
    rotation: tuple[float, float, float, float]
    frame: tuple[tuple[float, float, float], ...]

    def frame_matrix(self) -> np.ndarray:
        return np.array(self.frame).T  # columns t, b, c


def _quat_rotate(q: tuple[float, float, float, float], v: tuple[float, float, float]):
    w, x, y, z = q
    vx, vy, vz = v
    # q v q* for unit q, expanded
    tx = 2.0 * (y * vz - z * vy)
    ty = 2.0 * (z * vx - x * vz)
    tz = 2.0 * (x * vy - y * vx)
    return (
        vx + w * tx + (y * tz - z * ty),
        vy + w * ty + (z * tx - x * tz),
        vz + w * tz + (x * ty - y * tx),
    )


def _eval_generator(a: QuaternionPolynomial, t: float):
    """Float quaternion value of A at t, second chart for |t| > 1.

    In the second chart the value is s^deg(A) A(1/s), a nonzero multiple of
    A(t); all frame formulas are scale invariant, so this is equivalent and
    stable.
    """
    if not math.isinf(t) and abs(t) <= 1.0:
        return a.eval_float(t)
    s = 0.0 if math.isinf(t) else 1.0 / t
    w = x = y = z = 0.0
    for c in a.coeffs:  # ascending: value = sum c_k s^(deg-k)
        w = w * s + float(c.w)
        x = x * s + float(c.x)
        y = y * s + float(c.y)
        z = z * s + float(c.z)
    return (w, x, y, z)


def euler_rodriguez_pose(a: QuaternionPolynomial, c: RationalCurve, t: float) -> FramePose:
    """Pose of the framing motion at parameter t (inf allowed)."""
    qw, qx, qy, qz = _eval_generator(a, t)
    norm = math.sqrt(qw * qw + qx * qx + qy * qy + qz * qz)
    if norm == 0.0:
        raise ZeroDivisionError(f"generator vanishes at t = {t}")
    q = (qw / norm, qx / norm, qy / norm, qz / norm)
    frame = tuple(
        _quat_rotate(q, v) for v in ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    )
    position = tuple(c.eval_float(t))
    return FramePose(t, position, q, frame)


def sample_motion(a: QuaternionPolynomial, c: RationalCurve, n: int) -> list[FramePose]:
    """n poses equidistant in circle angle, hemisphere-aligned in sequence.

    The first pose sits at the closure point t = infinity; consecutive
    rotation quaternions are sign-aligned to resolve the double cover along
    the trajectory.
    """
    if n < 2:
        raise ValueError("at least 2 poses required")
    poses = []
    prev = None
    for t in angle_parameters(n):
        pose = euler_rodriguez_pose(a, c, t)
        if prev is not None:
            dot = sum(p * q for p, q in zip(prev.rotation, pose.rotation))
            if dot < 0.0:
                pose = FramePose(
                    pose.parameter,
                    pose.position,
                    tuple(-v for v in pose.rotation),
                    pose.frame,
                )
        poses.append(pose)
        prev = pose
    return poses


def closure_integral(c: RationalCurve, samples: int = 2048) -> tuple[float, float, float]:
    """Quadrature of the closed-curve integral of the weighted hodograph.

    Integrates r'(t(theta)) dt/dtheta over the full circle with the
    periodic trapezoid rule; for a closed bounded curve the exact value is
    zero componentwise, so the return value is a closure diagnostic.
    """
    thetas = 2.0 * math.pi * np.arange(samples) / samples
    ts = np.array([parameter_of_angle(float(th)) for th in thetas])
    near = np.isfinite(ts) & (np.abs(ts) <= 1.0)
    far = ~near
    ss = np.zeros(samples)
    ss[far] = np.where(np.isinf(ts[far]), 0.0, 1.0 / ts[far])

    out = []
    for comp in c.hodograph():
        vals = np.zeros(samples)
        if not comp.is_zero:
            nc = np.array(comp.numerator.float_coeffs())
            dc = np.array(comp.denominator.float_coeffs())
            gap = comp.denominator.degree - comp.numerator.degree
            # r'(t) (1+t^2)/2 in the near chart
            tn = ts[near]
            vals[near] = (
                np.polynomial.polynomial.polyval(tn, nc)
                / np.polynomial.polynomial.polyval(tn, dc)
                * (1.0 + tn * tn)
                / 2.0
            )
            # second chart: s^(gap-2) (1+s^2) rev_n(s) / (2 rev_d(s))
            sf = ss[far]
            rev_n = np.polynomial.polynomial.polyval(sf, nc[::-1])
            rev_d = np.polynomial.polynomial.polyval(sf, dc[::-1])
            with np.errstate(invalid="ignore"):
                power = np.where(sf == 0.0, float(gap == 2), sf ** (gap - 2))
            vals[far] = power * (1.0 + sf * sf) * rev_n / (2.0 * rev_d)
        # dt/dtheta = -(1+t^2)/2; the sign flips orientation only
        out.append(-2.0 * math.pi * float(np.mean(vals)))
    return tuple(out)
