import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clifft import (
    Algebra,
    Multivector,
    NotARootError,
    SignatureMismatchError,
    SingularElementError,
    blade_product,
    exp_root,
    outer_product,
    random_multivector,
)
from conftest import mv_close

SMALL_SIGNATURES = [(p, q) for n in range(1, 5) for p in range(n + 1) for q in [n - p]]


# Hand-expanded Cayley tables, basis order (1, e1, e2, e12).  Entries are
# (sign, mask) of the product of the row blade with the column blade.
QUATERNION_TABLE = {  # Cl(0,2): e1 ~ i, e2 ~ j, e12 ~ k
    (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}
CL20_TABLE = {
    (1, 1): (1, 0), (1, 2): (1, 3), (1, 3): (1, 2),
    (2, 1): (-1, 3), (2, 2): (1, 0), (2, 3): (-1, 1),
    (3, 1): (-1, 2), (3, 2): (1, 1), (3, 3): (-1, 0),
}
CL11_TABLE = {  # e1^2 = +1, e2^2 = -1, e12^2 = +1
    (1, 1): (1, 0), (1, 2): (1, 3), (1, 3): (1, 2),
    (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 1): (-1, 2), (3, 2): (-1, 1), (3, 3): (1, 0),
}


def test_signature_validation():
    with pytest.raises(ValueError):
        Algebra(-1, 2)
    with pytest.raises(ValueError):
        Algebra(0, 0)
    with pytest.raises(ValueError):
        Algebra(7, 6)
    a = Algebra(2, 1)
    assert a.n == 3 and a.dim == 8
    assert list(a.vector_squares) == [1.0, 1.0, -1.0]


def test_blade_product_examples(cl20):
    assert blade_product(cl20, 0b01, 0b01) == (1.0, 0)      # e1 e1 = 1
    assert blade_product(cl20, 0b01, 0b10) == (1.0, 0b11)   # e1 e2 = e12
    assert blade_product(cl20, 0b11, 0b01) == (-1.0, 0b10)  # e12 e1 = -e2


@pytest.mark.parametrize(
    "pq,table", [((0, 2), QUATERNION_TABLE), ((2, 0), CL20_TABLE), ((1, 1), CL11_TABLE)]
)
def test_blade_product_full_n2_tables(pq, table):
    alg = Algebra(*pq)
    for a in range(4):
        for b in range(4):
            expected = (1, a ^ b) if (a == 0 or b == 0) else table[(a, b)]
            assert blade_product(alg, a, b) == (float(expected[0]), expected[1])


def test_geometric_product_examples(cl20, cl02):
    one_plus_e12 = cl20.scalar(1) + cl20.blade(0b11)
    assert mv_close(one_plus_e12 * cl20.basis_vector(1), cl20.basis_vector(1) - cl20.basis_vector(2), 0)
    m = cl20.multivector([0.5, -1, 2, 3])
    assert mv_close(cl20.scalar(1) * m, m, 0)
    e12 = cl02.blade(0b11)
    assert mv_close(e12 * e12, cl02.scalar(-1), 0)


def test_anticommutation_all_basis_pairs():
    for p, q in SMALL_SIGNATURES:
        alg = Algebra(p, q)
        for k in range(1, alg.n + 1):
            for l in range(1, alg.n + 1):
                ek, el = alg.basis_vector(k), alg.basis_vector(l)
                lhs = ek * el + el * ek
                expected = alg.scalar(2 * alg.vector_squares[k - 1]) if k == l else alg.zero()
                assert np.array_equal(lhs.coeffs, expected.coeffs)


def test_signature_mismatch_raises(cl20, cl02):
    with pytest.raises(SignatureMismatchError):
        cl20.scalar(1) * cl02.scalar(1)


def test_grade_projection(cl20, cl30):
    m = cl20.multivector([1, 2, 0, 3])
    assert mv_close(m.grade(1), cl20.blade(0b01, 2), 0)
    assert mv_close(cl20.scalar(5).grade(0), cl20.scalar(5), 0)
    assert mv_close(cl30.blade(0b111).grade(2), cl30.zero(), 0)
    with pytest.raises(ValueError):
        m.grade(3)
    # the grade parts always resum to the original element
    rng = np.random.default_rng(3)
    m = random_multivector(cl30, rng)
    total = cl30.zero()
    for k in range(cl30.n + 1):
        total = total + m.grade(k)
    assert np.array_equal(total.coeffs, m.coeffs)


def test_scalar_and_outer_products(cl20):
    e1, e2 = cl20.basis_vector(1), cl20.basis_vector(2)
    assert e1.scalar_product(e1) == 1.0
    assert mv_close(outer_product(e1, e2), cl20.blade(0b11), 0)
    assert mv_close(outer_product(e1, e1), cl20.zero(), 0)
    assert mv_close(e1 ^ e2, cl20.blade(0b11), 0)


def test_outer_product_grade_selection():
    alg = Algebra(3, 0)
    rng = np.random.default_rng(11)
    a, b = random_multivector(alg, rng), random_multivector(alg, rng)
    expected = alg.zero()
    for k in range(alg.n + 1):
        for s in range(alg.n + 1):
            if k + s <= alg.n:
                expected = expected + (a.grade(k) * b.grade(s)).grade(k + s)
    assert mv_close(outer_product(a, b), expected, 1e-14)


def test_involutions(cl02):
    assert mv_close(cl02.blade(0b11).reverse(), cl02.blade(0b11, -1), 0)
    # bar flips the negative-square factor, grade-1 reverse keeps the sign
    assert mv_close(cl02.basis_vector(1).principal_reverse(), cl02.basis_vector(1) * -1, 0)
    rng = np.random.default_rng(7)
    m = random_multivector(cl02, rng)
    for op in ("reverse", "bar", "principal_reverse"):
        twice = getattr(getattr(m, op)(), op)()
        assert np.array_equal(twice.coeffs, m.coeffs)


def test_scalar_product_vs_principal_reverse():
    rng = np.random.default_rng(19)
    for p, q in SMALL_SIGNATURES:
        alg = Algebra(p, q)
        m, n = random_multivector(alg, rng), random_multivector(alg, rng)
        assert m.scalar_product(n.principal_reverse()) == pytest.approx(
            float(np.dot(m.coeffs, n.coeffs)), rel=1e-13, abs=1e-13
        )


def test_modulus(cl20, cl02):
    assert (cl20.scalar(1) + cl20.basis_vector(1)).modulus_squared() == 2.0
    assert cl02.basis_vector(1).modulus_squared() == 1.0
    assert cl20.zero().modulus_squared() == 0.0


def test_inverse_examples(cl20, cl02):
    assert mv_close(cl20.basis_vector(1).inverse(), cl20.basis_vector(1), 1e-14)
    assert mv_close(cl02.basis_vector(1).inverse(), -cl02.basis_vector(1), 1e-14)
    m = cl02.scalar(1) + cl02.basis_vector(1)
    assert mv_close(m.inverse(), (cl02.scalar(1) - cl02.basis_vector(1)) / 2, 1e-14)
    assert mv_close(m * m.inverse(), cl02.scalar(1), 1e-12)


def test_inverse_singular():
    alg = Algebra(1, 0)
    with pytest.raises(SingularElementError):
        (alg.scalar(1) + alg.basis_vector(1)).inverse()  # (1+e1)(1-e1) = 0


def test_exp_root(cl20):
    f = cl20.blade(0b11)
    assert mv_close(exp_root(f, 0.0), cl20.scalar(1), 0)
    assert mv_close(exp_root(f, math.pi / 2), f, 1e-15)
    assert mv_close(exp_root(f, math.pi), cl20.scalar(-1), 1e-15)
    with pytest.raises(NotARootError):
        exp_root(cl20.basis_vector(1), 1.0)  # e1^2 = +1


def test_multivector_validation(cl20):
    with pytest.raises(ValueError):
        Multivector(cl20, [1, 2, 3])
    with pytest.raises(ValueError):
        Multivector(cl20, [1, 2, 3, np.nan])
    m = cl20.scalar(1)
    with pytest.raises(ValueError):
        m.coeffs[0] = 5.0  # coefficients are frozen


coeff_arrays = st.lists(
    st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False),
    min_size=8,
    max_size=8,
)
signatures = st.sampled_from([(3, 0), (2, 1), (1, 2), (0, 3)])


@given(signatures, coeff_arrays, coeff_arrays, coeff_arrays)
@settings(max_examples=200, deadline=None)
def test_associativity_property(pq, ca, cb, cc):
    alg = Algebra(*pq)
    a, b, c = alg.multivector(ca), alg.multivector(cb), alg.multivector(cc)
    left = (a * b) * c
    right = a * (b * c)
    scale = max(np.max(np.abs(left.coeffs)), np.max(np.abs(right.coeffs)), 1.0)
    assert np.max(np.abs(left.coeffs - right.coeffs)) <= 1e-12 * scale


@given(signatures, coeff_arrays, coeff_arrays)
@settings(max_examples=200, deadline=None)
def test_scalar_part_cyclic_property(pq, ca, cb):
    alg = Algebra(*pq)
    a, b = alg.multivector(ca), alg.multivector(cb)
    lhs = (a * b).scalar_part
    rhs = (b * a).scalar_part
    assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), abs(rhs), 1.0)


@given(signatures, coeff_arrays)
@settings(max_examples=100, deadline=None)
def test_modulus_equals_scalar_product_property(pq, ca):
    alg = Algebra(*pq)
    a = alg.multivector(ca)
    assert a.modulus_squared() == pytest.approx(a.scalar_product(a.principal_reverse()), rel=1e-12, abs=1e-12)


def test_large_dimension_sign_rows_match_table():
    """On-the-fly sign rows (n > 8 path) agree with the memoized table logic."""
    small = Algebra(2, 1)
    big = Algebra(2, 1)
    big._sign_table = None  # force the on-demand path
    for mask in range(small.dim):
        assert np.array_equal(small.blade_sign_row(mask), big.blade_sign_row(mask))
        assert np.array_equal(small.blade_sign_col(mask), big.blade_sign_col(mask))


def test_quaternion_isomorphism_against_sympy(cl02):
    """Cross-check Cl(0,2) products against sympy's quaternions.

    Under e1 <-> i, e2 <-> j, e12 <-> k the geometric product must agree
    with Hamilton's product; sympy is a fully independent implementation.
    """
    from sympy.algebras.quaternion import Quaternion

    rng = np.random.default_rng(23)
    for _ in range(20):
        ca, cb = rng.uniform(-2, 2, 4), rng.uniform(-2, 2, 4)
        got = (cl02.multivector(ca) * cl02.multivector(cb)).coeffs
        qa, qb = Quaternion(*ca), Quaternion(*cb)
        qc = qa * qb
        want = np.array([float(qc.a), float(qc.b), float(qc.c), float(qc.d)])
        assert np.allclose(got, want, atol=1e-12)


def test_nine_dimensional_products():
    """n = 9 runs without a memoized table; spot-check structure on blades."""
    alg = Algebra(6, 3)
    assert alg._sign_table is None
    e1, e2 = alg.basis_vector(1), alg.basis_vector(2)
    assert mv_close(e1 * e2, alg.blade(0b11), 0)
    e9 = alg.basis_vector(9)
    assert mv_close(e9 * e9, alg.scalar(-1.0), 0)  # ninth generator squares to -1
    pseudo = alg.pseudoscalar()
    rev_sign = (-1.0) ** (9 * 8 // 2)
    assert mv_close(pseudo.reverse(), alg.blade(alg.dim - 1, rev_sign), 0)
    # associativity on a sparse triple
    a = alg.blade(0b101, 2.0) + alg.scalar(1.0)
    b = alg.blade(0b110000, -1.5)
    c = alg.basis_vector(9) + alg.blade(0b11, 0.5)
    assert mv_close((a * b) * c, a * (b * c), 1e-14)
