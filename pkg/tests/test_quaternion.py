import random
from fractions import Fraction as F

import pytest

from phforge import (
    GaussianRational,
    Polynomial as P,
    Quaternion,
    QuaternionPolynomial as QP,
    complex_split,
    i_reduce,
    is_i_reduced,
    rotate_vector,
)
from phforge.quaternion import QI, QJ, QK, QONE

from helpers import generator_deg3


def rand_quat(rng, span=5):
    return Quaternion.of(*(F(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(4)))


def test_unit_relations():
    minus_one = Quaternion.of(-1)
    assert QI * QI == minus_one
    assert QJ * QJ == minus_one
    assert QK * QK == minus_one
    assert QI * QJ * QK == minus_one
    assert QI * QJ == QK and QJ * QI == -QK


def test_multiplication_associative_on_random_triples():
    rng = random.Random(1)
    for _ in range(50):
        a, b, c = (rand_quat(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_norm_is_multiplicative_exactly():
    rng = random.Random(2)
    for _ in range(50):
        a, b = rand_quat(rng), rand_quat(rng)
        assert (a * b).norm_sq() == a.norm_sq() * b.norm_sq()


def test_qpoly_product_complex_subalgebra_identity():
    t_plus_i = QP([QI, QONE])
    t_minus_i = QP([-QI, QONE])
    assert t_plus_i * t_minus_i == QP([QONE, Quaternion.of(0), QONE])


def test_qpoly_product_noncommutativity_witness():
    t_plus_j = QP([QJ, QONE])
    t_plus_i = QP([QI, QONE])
    left = t_plus_j * t_plus_i
    assert left == QP([-QK, QI + QJ, QONE])
    assert left != t_plus_i * t_plus_j


def test_conjugate_product_is_real():
    a = generator_deg3()
    prod = a * a.conjugate()
    w, x, y, z = prod.component_polys()
    assert x.is_zero and y.is_zero and z.is_zero
    assert w == P([1, 0, 1]) ** 3


def test_conjugate_reversal_and_degree_additivity():
    rng = random.Random(3)
    for _ in range(25):
        p = QP([rand_quat(rng) for _ in range(rng.randint(1, 4))])
        q = QP([rand_quat(rng) for _ in range(rng.randint(1, 4))])
        if p.is_zero or q.is_zero:
            continue
        assert (p * q).conjugate() == q.conjugate() * p.conjugate()
        # quaternions have no zero divisors, so degrees always add
        assert (p * q).degree == p.degree + q.degree


def test_rotate_vector_identity_rotation():
    assert rotate_vector(QP([QONE]), QI) == QP([QI])


def test_rotate_vector_reference_generator():
    w = rotate_vector(generator_deg3(), QI)
    wx, wy, wz = w.vector_polys()
    assert wx == P([-1, 0, 7, 0, -7, 0, 1])
    assert wy == P([0, 2, 0, -12, 0, 2])
    assert wz == P([0, 4, 0, 0, 0, -4])


def test_rotate_vector_scalar_part_vanishes_and_norm_identity():
    rng = random.Random(4)
    for _ in range(20):
        a = QP([rand_quat(rng) for _ in range(rng.randint(1, 4))])
        if a.is_zero:
            continue
        v = Quaternion.of(0, rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
        if not v:
            continue
        out = rotate_vector(a, v)
        assert out.scalar_poly().is_zero
        x, y, z = out.vector_polys()
        norm = a.norm_poly()
        assert x * x + y * y + z * z == norm * norm * v.norm_sq()


def test_rotate_vector_rejects_non_pure():
    with pytest.raises(ValueError):
        rotate_vector(QP([QONE]), Quaternion.of(1, 1, 0, 0))


def test_i_reduce_reference_generator_is_reduced():
    reduced, right = i_reduce(generator_deg3())
    assert right.degree == 0
    assert reduced == generator_deg3()
    assert is_i_reduced(generator_deg3())


def test_i_reduce_constructed_right_factor():
    t_plus_j = QP([QJ, QONE])
    t_plus_i = QP([QI, QONE])
    reduced, right = i_reduce(t_plus_j * t_plus_i)
    assert reduced == t_plus_j
    assert right == P([GaussianRational(0, 1), GaussianRational(1)])


def test_i_reduce_degree_one_case():
    rng = random.Random(5)
    c = rand_quat(rng)
    a = QP([c]) * QP([QI, QONE])
    reduced, right = i_reduce(a)
    assert reduced.degree == 0
    assert right == P([GaussianRational(0, 1), GaussianRational(1)])


def test_i_reduce_idempotent():
    rng = random.Random(6)
    for _ in range(10):
        a = QP([rand_quat(rng) for _ in range(rng.randint(2, 4))])
        if a.is_zero:
            continue
        reduced, _ = i_reduce(a)
        _, right_again = i_reduce(reduced)
        assert right_again.degree == 0


def test_euler_rodriguez_invariance_under_right_factors():
    # (A R) i (A R)* = (R R*) (A i A*) because R commutes with i
    rng = random.Random(7)
    a = generator_deg3()
    for _ in range(10):
        r_pair = [GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)]
        r = P(r_pair)
        if r.is_zero:
            continue
        r_quat = QP(
            [Quaternion.of(c.re, c.im, 0, 0) for c in (P(r_pair)).coeffs]
        )
        lhs = rotate_vector(a * r_quat, QI)
        rr = (r_quat * r_quat.conjugate()).scalar_poly()
        base = rotate_vector(a, QI)
        scaled = QP.from_component_polys(
            P([0]), *(w * rr for w in base.vector_polys())
        )
        assert lhs == scaled


def test_complex_split_round_trip():
    rng = random.Random(8)
    for _ in range(20):
        a = QP([rand_quat(rng) for _ in range(rng.randint(1, 5))])
        pair = complex_split(a)
        assert pair.assemble() == a
