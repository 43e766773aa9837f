"""Strict positivity of the speed numerator via sum-of-squares feasibility.

A numerator mu of even degree m is strictly positive iff it is a sum of
squares, i.e. iff some symmetric Gram matrix M with mu(t) = (1,t,..,t^{m/2})
M (1,t,..)^T is positive definite.  The residue conditions are linear in mu,
so they carve a linear slice out of the symmetric matrices; finding a
positive definite point in that slice is a semidefinite feasibility problem.

The solver here is a small, dense, self-contained barrier interior point
(matrix dimension stays around ten).  Floating output is never trusted: the
witness is rationalized and strict positivity is re-certified exactly with
a Sturm count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import EmptyKernelError
from .polynomial import Polynomial
from .ratfunc import sturm_real_root_count
from .synthesis import RationalCurve, SolutionSpace

FEASIBLE = "feasible"
INFEASIBLE = "infeasible-numerically"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class RegularityCertificate:
    """Exact evidence that a numerator polynomial has no real zeros."""

    regular: bool
    real_root_count: int
    leading_coefficient: Fraction
    degree: int

    def __bool__(self):
        return self.regular


def certify_regular(mu: Polynomial) -> RegularityCertificate:
    """Exact strict-positivity certificate: no real roots, positive leading.

    For an even-degree polynomial without real roots, a positive leading
    coefficient is equivalent to positivity everywhere; the Sturm count is
    the certificate, independent of any floating arithmetic.
    """
    if mu.is_zero:
        return RegularityCertificate(False, 0, Fraction(0), -1)
    roots = sturm_real_root_count(mu)
    lead = Fraction(mu.leading())
    return RegularityCertificate(roots == 0 and lead > 0, roots, lead, mu.degree)


class GramSlice:
    """Linear space of symmetric matrices compatible with the residue kernel.

    ``basis_matrices`` span exactly the symmetric matrices whose antidiagonal
    sums give a numerator polynomial inside the kernel; every rational point
    of the slice therefore satisfies the zero-residue conditions exactly.
    """

    def __init__(self, dimension: int, basis_matrices, kernel_basis):
        self.dimension = dimension
        self.basis_matrices = tuple(
            tuple(tuple(Fraction(v) for v in row) for row in mat) for mat in basis_matrices
        )
        self.kernel_basis = tuple(kernel_basis)

    @property
    def slice_dimension(self) -> int:
        return len(self.basis_matrices)

    def matrix_of(self, x) -> tuple:
        """Exact matrix sum x_k * M_k for rational coordinates x."""
        n = self.dimension
        out = [[Fraction(0)] * n for _ in range(n)]
        for xk, mat in zip(x, self.basis_matrices):
            f = Fraction(xk)
            for i in range(n):
                for j in range(n):
                    out[i][j] += f * mat[i][j]
        return tuple(tuple(row) for row in out)

    def mu_of_matrix(self, mat) -> Polynomial:
        """Antidiagonal sums: the numerator represented by a Gram matrix."""
        n = self.dimension
        coeffs = [Fraction(0)] * (2 * n - 1)
        for i in range(n):
            for j in range(n):
                coeffs[i + j] += Fraction(mat[i][j])
        return Polynomial(coeffs)

    def mu_of(self, x) -> Polynomial:
        return self.mu_of_matrix(self.matrix_of(x))

    def float_basis(self) -> np.ndarray:
        return np.array(
            [[[float(v) for v in row] for row in mat] for mat in self.basis_matrices]
        )


def build_gram_slice(space: SolutionSpace, m: int | None = None) -> GramSlice:
    """All symmetric matrices whose induced numerator lies in the kernel.

    The slice dimension is kernel_dim + (n(n+1)/2 - (m+1)) free Gram
    directions, n = m/2 + 1.  An empty kernel admits no curve at all and is
    reported as infeasible by construction.
    """
    if m is None:
        m = space.problem.m
    if not space.basis:
        raise EmptyKernelError(
            "residue conditions admit only the zero numerator; "
            "raise the pole multiplicities"
        )
    n = m // 2 + 1
    upper = [(i, j) for i in range(n) for j in range(i, n)]
    nvars = len(upper) + space.dimension
    # coefficient index k: sum of M entries on the k-th antidiagonal equals
    # the k-th coefficient of a kernel combination
    rows = []
    for k in range(m + 1):
        row = [Fraction(0)] * nvars
        for idx, (i, j) in enumerate(upper):
            if i + j == k:
                row[idx] += 1 if i == j else 2
        for bidx, b in enumerate(space.basis):
            row[len(upper) + bidx] -= b.coefficient(k)
        rows.append(row)
    kernel = linalg.nullspace(rows, nvars)
    mats = []
    for vec in kernel:
        prim = linalg.primitive_integer_vector(vec)
        if all(v == 0 for v in prim[: len(upper)]):
            continue
        mat = [[Fraction(0)] * n for _ in range(n)]
        for idx, (i, j) in enumerate(upper):
            mat[i][j] = Fraction(prim[idx])
            mat[j][i] = Fraction(prim[idx])
        mats.append(mat)
    expected = space.dimension + (n * (n + 1) // 2 - (m + 1))
    if len(mats) != expected:
        raise AssertionError(
            f"slice dimension {len(mats)} does not match expected {expected}"
        )
    return GramSlice(n, mats, space.basis)


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of one semidefinite feasibility search.

    ``feasible`` status always comes with an exact certificate: the witness
    coordinates are rationalized and the induced numerator re-verified by a
    Sturm count, so a floating solver cannot produce a false positive.
    """

    status: str
    witness_x: tuple | None
    witness_x_exact: tuple | None
    witness_mu: Polynomial | None
    min_eigenvalue: float
    certificate: RegularityCertificate | None = None

    @property
    def is_feasible(self) -> bool:
        return self.status == FEASIBLE


def rationalize(values, max_denominator: int = 10**6):
    """Best rational approximations by continued-fraction truncation."""
    return tuple(Fraction(float(v)).limit_denominator(max_denominator) for v in values)


def sdp_feasible_point(
    g: GramSlice,
    margin: float = 1e-3,
    *,
    objective_bias=None,
    max_outer: int = 60,
    max_newton: int = 40,
    max_denominator: int = 10**6,
) -> FeasibilityResult:
    """Search the slice for M with lambda_min >= margin under trace(M) = 1.

    The solver maximizes s subject to M(x) - s*I >= 0 and trace M(x) = 1 by
    a log-det barrier method with Newton steps (a dense self-contained
    interior point; any method achieving the eigenvalue bound conforms
    equally).  It exits as soon as the central path crosses the requested
    margin.  On success the witness is rationalized (continued fractions,
    denominators up to ``max_denominator``) and gated by the exact Sturm
    certificate, so the floating search is never trusted.  Falling short of
    the margin yields ``indeterminate`` with the best achieved eigenvalue,
    which is not a proof of infeasibility.

    ``objective_bias`` adds a small linear term b.x to the maximized s and
    steers the solver to different interior points, the analogue of solving
    the feasibility problem with different cost functions.
    """
    if margin <= 0:
        raise ValueError("margin must be positive")
    if g.slice_dimension == 0:
        return FeasibilityResult(INFEASIBLE, None, None, None, float("-inf"))
    raw = g.float_basis()
    # Frobenius normalization only conditions the float search; exact
    # coordinates are recovered in the original basis before certification.
    scale = np.sqrt(np.einsum("aij,aij->a", raw, raw))
    basis = raw / scale[:, None, None]
    traces = np.einsum("aii->a", basis)
    t_norm2 = float(traces @ traces)
    if t_norm2 == 0.0:
        # no trace-normalized point exists in the slice
        return FeasibilityResult(INFEASIBLE, None, None, None, float("-inf"))
    d, n, _ = basis.shape
    bias = np.zeros(d)
    if objective_bias is not None:
        # given in original slice coordinates; x_orig = x_scaled / scale
        bias = np.asarray([float(v) for v in objective_bias]) / scale

    def matrix(x):
        m = np.einsum("a,aij->ij", x, basis)
        return (m + m.T) / 2

    def exact_gate(x_scaled, lam):
        x_orig = np.asarray(x_scaled) / scale
        for limit in (max_denominator, max_denominator**2):
            x_exact = rationalize(x_orig, limit)
            mu = g.mu_of(x_exact)
            cert = certify_regular(mu)
            if cert:
                return FeasibilityResult(
                    FEASIBLE,
                    tuple(float(v) for v in x_orig),
                    x_exact,
                    mu,
                    float(lam),
                    cert,
                )
        return None

    x = traces / t_norm2
    m_now = matrix(x)
    lam0 = float(np.linalg.eigvalsh(m_now)[0])
    s = lam0 - 0.1 * (abs(lam0) + 1.0)
    best_lam = lam0
    best_x = x.copy()
    a_eq = np.concatenate([traces, [0.0]])
    eye = np.eye(n)
    t_bar = 1.0
    gated = False
    for _ in range(max_outer):
        for _ in range(max_newton):
            slack = m_now - s * eye
            try:
                w = np.linalg.inv(slack)
            except np.linalg.LinAlgError:
                break
            w = (w + w.T) / 2
            wb = np.einsum("ij,ajk->aik", w, basis)
            grad = np.empty(d + 1)
            grad[:d] = -t_bar * bias - np.einsum("aii->a", wb)
            grad[d] = -t_bar + np.trace(w)
            hess = np.empty((d + 1, d + 1))
            hess[:d, :d] = np.einsum("aij,bji->ab", wb, wb)
            hess[:d, d] = -np.einsum("aij,ji->a", wb, w)
            hess[d, :d] = hess[:d, d]
            hess[d, d] = float(np.einsum("ij,ji->", w, w))
            kkt = np.zeros((d + 2, d + 2))
            kkt[: d + 1, : d + 1] = hess
            kkt[: d + 1, d + 1] = a_eq
            kkt[d + 1, : d + 1] = a_eq
            rhs = np.concatenate([-grad, [0.0]])
            try:
                dz = np.linalg.solve(kkt, rhs)[: d + 1]
            except np.linalg.LinAlgError:
                dz = np.linalg.lstsq(kkt, rhs, rcond=None)[0][: d + 1]
            decrement = float(-grad @ dz)
            step = 1.0
            for _ in range(60):
                x_new = x + step * dz[:d]
                s_new = s + step * dz[d]
                m_new = matrix(x_new)
                try:
                    np.linalg.cholesky(m_new - s_new * eye)
                    break
                except np.linalg.LinAlgError:
                    step *= 0.5
            else:
                break
            x, s, m_now = x_new, s_new, m_new
            lam = float(np.linalg.eigvalsh(m_now)[0])
            if lam > best_lam:
                best_lam, best_x = lam, x.copy()
            if decrement < 1e-16:
                break
        if not gated and best_lam >= margin:
            result = exact_gate(best_x, best_lam)
            if result is not None:
                return result
            gated = True
        if n / t_bar < 1e-13:
            break
        t_bar *= 20.0
    if best_lam >= margin:
        result = exact_gate(best_x, best_lam)
        if result is not None:
            return result
    return FeasibilityResult(
        INDETERMINATE,
        tuple(map(float, best_x / scale)),
        None,
        None,
        float(best_lam),
    )


def min_eigenvalue(g: GramSlice, x) -> float:
    """Smallest eigenvalue of the slice matrix at coordinates x (floats)."""
    m = np.einsum("a,aij->ij", np.array([float(v) for v in x]), g.float_basis())
    return float(np.linalg.eigvalsh((m + m.T) / 2)[0])


def sos_decomposition(mat) -> list[tuple[Fraction, Polynomial]]:
    """Exact LDL^T split of a positive definite rational Gram matrix.

    Returns weights d_k > 0 and polynomials q_k with
    sum d_k q_k(t)^2 equal to the matrix's numerator polynomial exactly;
    LDL^T is the rational form of the Cholesky factorization.
    """
    n = len(mat)
    a = [[Fraction(v) for v in row] for row in mat]
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for j in range(n):
        d = a[j][j] - sum(diag[k] * lower[j][k] ** 2 for k in range(j))
        if d <= 0:
            raise ValueError("matrix is not positive definite")
        diag[j] = d
        lower[j][j] = Fraction(1)
        for i in range(j + 1, n):
            v = a[i][j] - sum(diag[k] * lower[i][k] * lower[j][k] for k in range(j))
            lower[i][j] = v / d
    out = []
    for k in range(n):
        q = Polynomial([lower[i][k] for i in range(n)])
        out.append((diag[k], q))
    return out


def average_solutions(curves, weights) -> RationalCurve:
    """Positively weighted sum of solution curves sharing one generator.

    With a common pole structure the numerators add, so regular summands
    yield a regular sum.
    """
    curves = list(curves)
    weights = [Fraction(w) for w in weights]
    if not curves or len(curves) != len(weights):
        raise ValueError("one positive weight per curve required")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    gen = curves[0].generator
    if gen is None or any(c.generator != gen for c in curves):
        raise ValueError("curves do not share a generator")
    out = curves[0] * weights[0]
    for c, w in zip(curves[1:], weights[1:]):
        out = out + c * w
    return out
