"""Exact linear algebra over the rationals: RREF, kernels, small solves."""

from __future__ import annotations

from fractions import Fraction


def rref(rows: list[list[Fraction]]):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows: list[list[Fraction]], ncols: int | None = None):
    """Kernel basis with the standard free-variable convention.

    Each basis vector has a 1 in one free column and the pivot entries
    solved from the RREF.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty system")
        ncols = len(rows[0])
    if not rows:
        red, pivots = [], []
    else:
        red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(rows: list[list[Fraction]], rhs: list[Fraction]):
    """One exact solution of A x = b, or None when inconsistent.

    Free variables are set to zero.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    ncols = len(rows[0]) if rows else 0
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return x


def span_contains(basis: list[list[Fraction]], v: list[Fraction]) -> bool:
    """Whether v lies in the span of the basis vectors."""
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    cols = [list(b) for b in basis]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(v))]
    return solve(rows, list(v)) is not None


def spans_equal(a: list[list[Fraction]], b: list[list[Fraction]]) -> bool:
    return all(span_contains(a, v) for v in b) and all(span_contains(b, v) for v in a)


def primitive_integer_vector(v: list[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers with positive first nonzero."""
    from math import gcd, lcm

    denoms = [f.denominator for f in v]
    scale = lcm(*denoms) if denoms else 1
    ints = [int(f * scale) for f in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return ints
