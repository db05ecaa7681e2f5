import math

import numpy as np
import pytest

from cdbundle import (
    DimensionMismatchError,
    DiscDomainError,
    MatrixPowerSeries2,
    SingularLeadingTermError,
    TruncationOrderError,
)
from conftest import random_kernel_series


def scalar_series(order, entries):
    return MatrixPowerSeries2.from_coeff_dict(
        1, order, {kl: [[v]] for kl, v in entries.items()}
    )


def geometric(order):
    """(1 - z conj(w))^{-1}: a[k,k] = 1."""
    return scalar_series(order, {(k, k): 1.0 for k in range(order + 1)})


def test_multiply_identity_is_neutral(rng):
    b = random_kernel_series(rng, rank=3, order=4)
    ident = MatrixPowerSeries2.identity(3, 4)
    assert np.abs(ident.multiply(b).coeffs - b.coeffs).max() < 1e-15
    assert np.abs(b.multiply(ident).coeffs - b.coeffs).max() < 1e-15


def test_multiply_difference_of_squares():
    a = scalar_series(2, {(0, 0): 1.0, (1, 1): 1.0})
    b = scalar_series(2, {(0, 0): 1.0, (1, 1): -1.0})
    prod = a.multiply(b)
    expected = scalar_series(2, {(0, 0): 1.0, (2, 2): -1.0})
    assert np.abs(prod.coeffs - expected.coeffs).max() < 1e-15


def test_multiply_geometric_square_matches_binomial():
    # (1-x)^{-2} = sum (k+1) x^k with x = z conj(w); oracle via math.comb
    prod = geometric(3).multiply(geometric(3))
    for k in range(4):
        for l in range(4):
            expected = math.comb(k + 1, 1) if k == l else 0.0
            assert prod.coeffs[k, l, 0, 0] == pytest.approx(expected, abs=1e-14)


def test_multiply_shape_mismatch_raises(rng):
    a = random_kernel_series(rng, rank=2, order=3)
    b = random_kernel_series(rng, rank=3, order=3)
    with pytest.raises(DimensionMismatchError):
        a.multiply(b)
    with pytest.raises(DimensionMismatchError):
        a.multiply(random_kernel_series(rng, rank=2, order=4))


def test_invert_geometric_series():
    inv = geometric(4).invert()
    expected = scalar_series(4, {(0, 0): 1.0, (1, 1): -1.0})
    assert np.abs(inv.coeffs - expected.coeffs).max() < 1e-14


def test_invert_first_coefficient_identity(rng):
    # b10 = -a00^{-1} a10 a00^{-1}, one step of the inversion recursion
    k = random_kernel_series(rng, rank=3, order=3)
    b = k.invert()
    a00_inv = np.linalg.inv(k.coeff(0, 0))
    expected = -a00_inv @ k.coeff(1, 0) @ a00_inv
    assert np.abs(b.coeff(1, 0) - expected).max() < 1e-12


def test_invert_two_sided(rng):
    for rank in (1, 2, 3):
        k = random_kernel_series(rng, rank=rank, order=5)
        b = k.invert()
        ident = MatrixPowerSeries2.identity(rank, 5)
        assert np.abs(k.multiply(b).coeffs - ident.coeffs).max() < 1e-12
        assert np.abs(b.multiply(k).coeffs - ident.coeffs).max() < 1e-12


def test_invert_preserves_hermitian_symmetry(rng):
    k = random_kernel_series(rng, rank=3, order=4)
    assert k.invert().hermitian_symmetry_defect() < 1e-12


def test_invert_singular_leading_term():
    s = scalar_series(2, {(0, 0): 0.0, (1, 1): 1.0})
    with pytest.raises(SingularLeadingTermError):
        s.invert()


def test_hermitian_defect_flags_constructed_asymmetry(rng):
    k = random_kernel_series(rng, rank=2, order=3)
    assert k.hermitian_symmetry_defect() < 1e-14
    c = k.coeffs.copy()
    c[1, 0] = c[1, 0] + 1e-3j
    assert abs(MatrixPowerSeries2(c).hermitian_symmetry_defect() - 1e-3) < 1e-12


def test_evaluate_constant_term_and_identity(rng):
    k = random_kernel_series(rng, rank=2, order=3)
    assert np.abs(k.evaluate(0.0, 0.0) - k.coeff(0, 0)).max() < 1e-15
    ident = MatrixPowerSeries2.identity(3, 4)
    assert np.abs(ident.evaluate(0.3 + 0.1j, -0.2j) - np.eye(3)).max() < 1e-15


def test_evaluate_geometric_tail_bound():
    # analytic truncation error is the geometric tail x^21/(1-x) ~ 1e-22,
    # far below double rounding, so the comparison floor is a few ulps
    k = geometric(20)
    x = 0.3 * 0.3
    val = k.evaluate(0.3, 0.3)[0, 0]
    tail = x ** 21 / (1 - x)
    assert abs(val - 1.0 / (1.0 - x)) <= tail + 1e-15


def test_evaluate_outside_disc_raises():
    with pytest.raises(DiscDomainError):
        geometric(3).evaluate(1.0, 0.0)


def test_multiply_associative_property(rng):
    for _ in range(5):
        a = random_kernel_series(rng, rank=2, order=6)
        b = random_kernel_series(rng, rank=2, order=6)
        c = random_kernel_series(rng, rank=2, order=6)
        left = a.multiply(b).multiply(c)
        right = a.multiply(b.multiply(c))
        scale = max(1.0, np.abs(left.coeffs).max())
        assert np.abs(left.coeffs - right.coeffs).max() / scale < 1e-12


def test_immutability(rng):
    k = random_kernel_series(rng, rank=2, order=2)
    with pytest.raises(AttributeError):
        k.rank = 5
    with pytest.raises(ValueError):
        k.coeffs[0, 0, 0, 0] = 1.0


def test_coefficient_access_beyond_order():
    with pytest.raises(TruncationOrderError):
        geometric(2).coeff(3, 0)


def test_non_finite_rejected():
    c = np.zeros((2, 2, 1, 1), dtype=complex)
    c[0, 0] = np.nan
    with pytest.raises(ValueError):
        MatrixPowerSeries2(c)
