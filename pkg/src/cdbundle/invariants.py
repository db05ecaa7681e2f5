"""Normalization of kernels and curvature invariants at the origin.

The normalized kernel of K is
K~(z, w) = K(0,0)^{1/2} K(z,0)^{-1} K(z,w) K(0,w)^{-1} K(0,0)^{1/2};
it satisfies K~(z, 0) = I, so its coefficient lattice reads off the
curvature data at 0 in an orthonormal frame:

    curvature(0)      = a~[1,1]^t
    d/d(conj z) (0)   = 2 a~[1,2]^t          (order-(0,1) derivative)
    d2/dz d(conj z)(0)= 2 (2 a~[2,2] - a~[1,1]^2)^t
    n-th conj-z deriv = (n+1)! a~[1,n+1]^t

The trailing transpose comes from the metric convention h(z) = K(z,z)^t
and is applied uniformly; equivalence decisions downstream are insensitive
to a global transpose because tests always compare like with like.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DiscDomainError, TruncationOrderError
from .kernels import TriangularData, shift_matrix, weighted_shift
from .series import MatrixPowerSeries2, assert_hermitian, hermitian_sqrt

CURVATURE_HERM_TOL = 1e-10


@dataclass(frozen=True)
class PointInvariants:
    """Curvature and covariant derivatives at one point, orthonormal frame.

    d_zzbar is optional because the closed-form route for the homogeneous
    family produces only the curvature and the (0,1) derivative.
    """

    point: complex
    curvature: np.ndarray
    d_zbar: np.ndarray
    d_zzbar: Optional[np.ndarray]
    frame: str = "orthonormal_at_point"

    def __post_init__(self):
        for name in ("curvature", "d_zbar", "d_zzbar"):
            arr = getattr(self, name)
            if arr is None:
                continue
            arr = np.asarray(arr, dtype=complex).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        assert_hermitian(self.curvature, CURVATURE_HERM_TOL, "curvature at the point")

    @property
    def rank(self) -> int:
        return self.curvature.shape[0]

    def curvature_eigenvalues(self) -> np.ndarray:
        """Ascending real eigenvalues of the (Hermitian) curvature."""
        return np.linalg.eigvalsh(0.5 * (self.curvature + self.curvature.conj().T))


def normalize(K: MatrixPowerSeries2) -> MatrixPowerSeries2:
    """Normalized kernel series: a~[0,0] = I, a~[k,0] = a~[0,l] = 0.

    Computed by series composition: invert the z-only slice K(z, 0) and the
    w-only slice K(0, w), multiply through, and sandwich with the principal
    square root of the constant term.  Raises MetricDegeneracyError when
    the constant term is not positive definite.
    """
    a00 = assert_hermitian(K.coeff(0, 0), what="constant kernel coefficient")
    half = hermitian_sqrt(a00)
    left = K.z_slice().invert()
    right = K.w_slice().invert()
    return left.multiply(K).multiply(right).sandwich(half, half)


def tilde_a_closed(K: MatrixPowerSeries2, which: str) -> np.ndarray:
    """Closed-form normalized coefficients a~[1,1], a~[1,2], a~[2,2].

    Direct matrix algebra on the first few kernel coefficients; must agree
    with the corresponding coefficient of :func:`normalize` (cross-checked
    in the test suite at 1e-11).
    """
    if K.order < 2:
        raise TruncationOrderError("closed coefficient formulas need order >= 2")
    a00 = K.coeff(0, 0)
    a00_inv = np.linalg.inv(a00)
    root_inv = np.linalg.inv(hermitian_sqrt(assert_hermitian(a00, what="a00")))
    a10, a01 = K.coeff(1, 0), K.coeff(0, 1)
    a11, a12, a21 = K.coeff(1, 1), K.coeff(1, 2), K.coeff(2, 1)
    a20, a02, a22 = K.coeff(2, 0), K.coeff(0, 2), K.coeff(2, 2)

    schur = a11 - a10 @ a00_inv @ a01
    if which == "a11":
        inner = schur
    elif which == "a12":
        inner = a12 - schur @ a00_inv @ a01 - a10 @ a00_inv @ a02
    elif which == "a22":
        inner12 = a12 - schur @ a00_inv @ a01 - a10 @ a00_inv @ a02
        inner = (
            a22
            + (a20 @ a00_inv @ a01 - a21) @ a00_inv @ a01
            - a20 @ a00_inv @ a02
            - a10 @ a00_inv @ inner12
        )
    else:
        raise ValueError(f"which must be one of a11/a12/a22, got {which!r}")
    return root_inv @ inner @ root_inv


def tilde_a_general(K: MatrixPowerSeries2, k: int, l: int) -> np.ndarray:
    """General formula for a~[k+1, l+1] from the kernel and inverse lattices.

    a~[k+1,l+1] = a00^{1/2} ( sum_{s=1..k} sum_{t=1..l} b[s,0] a[k+1-s,l+1-t] b[0,t]
                            + sum_{s=1..k} b[s,0] a[k+1-s,l+1] b[0,0]
                            + sum_{t=1..l} b[0,0] a[k+1,l+1-t] b[0,t]
                            + b[0,0] a[k+1,l+1] b[0,0]
                            - b[k+1,0] a[0,0] b[0,l+1] ) a00^{1/2}
    """
    if K.order < max(k, l) + 1:
        raise TruncationOrderError("series order too small for requested coefficient")
    a = K.coeffs
    b = K.invert().coeffs
    half = hermitian_sqrt(assert_hermitian(K.coeff(0, 0), what="a00"))
    n = K.rank
    acc = np.zeros((n, n), dtype=complex)
    for s in range(1, k + 1):
        for t in range(1, l + 1):
            acc += b[s, 0] @ a[k + 1 - s, l + 1 - t] @ b[0, t]
    for s in range(1, k + 1):
        acc += b[s, 0] @ a[k + 1 - s, l + 1] @ b[0, 0]
    for t in range(1, l + 1):
        acc += b[0, 0] @ a[k + 1, l + 1 - t] @ b[0, t]
    acc += b[0, 0] @ a[k + 1, l + 1] @ b[0, 0]
    acc -= b[k + 1, 0] @ a[0, 0] @ b[0, l + 1]
    return half @ acc @ half


def invariants_at_zero(K: MatrixPowerSeries2) -> PointInvariants:
    """Series-path invariants at 0: curvature, (0,1) and (1,1) derivatives."""
    if K.order < 2:
        raise TruncationOrderError("invariants at 0 need series order >= 2")
    norm = normalize(K)
    a11 = norm.coeff(1, 1)
    a12 = norm.coeff(1, 2)
    a22 = norm.coeff(2, 2)
    return PointInvariants(
        point=0.0,
        curvature=a11.T,
        d_zbar=2.0 * a12.T,
        d_zzbar=(2.0 * (2.0 * a22 - a11 @ a11)).T,
    )


def covd_zbar_n_at_zero(K: MatrixPowerSeries2, n: int) -> np.ndarray:
    """(n+1)! a~[1, n+1]^t — the order-(0,n) covariant derivative at 0."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if K.order < n + 1:
        raise TruncationOrderError(f"order {K.order} too small for n = {n}")
    norm = normalize(K)
    return math.factorial(n + 1) * norm.coeff(1, n + 1).T


# -- closed forms for the homogeneous family -------------------------------


def homogeneous_abc(lam: float, mu, m: int = 2) -> tuple:
    """(a, b, c) = (2 lambda, 1/d_1, 4 d_1 / d_2) for the m = 2 family."""
    if m != 2:
        raise ValueError("the (a, b, c) parametrization is specific to m = 2")
    td = TriangularData.build(lam, mu, m)
    d = td.d
    return 2.0 * lam, 1.0 / d[1], 4.0 * d[1] / d[2]


def curvature_diag_from_abc(a: float, b: float, c: float) -> np.ndarray:
    """diag(a-b-2, a+b-c, a+c+2): the ordered curvature diagonal at 0, m = 2."""
    return np.array([a - b - 2.0, a + b - c, a + c + 2.0])


def dzbar_from_abc(b: float, c: float) -> np.ndarray:
    """2 S_2(-sqrt(b)(1+b-c/2), -sqrt(c)(1+c-b/2))^t, m = 2."""
    w1 = -np.sqrt(b) * (1.0 + b - c / 2.0)
    w2 = -np.sqrt(c) * (1.0 + c - b / 2.0)
    return 2.0 * weighted_shift(2, [w1, w2]).T


def homogeneous_invariants_closed(lam: float, mu, m: int) -> PointInvariants:
    """Curvature and (0,1) derivative at 0 for K^(lambda, mu), closed form.

    a~[1,1] = [B^{-1} S B, S^*] + (2 lambda + m) I - 2 D_m
    a~[1,2] = B^{1/2} ( (B^{-1} S^2 B S^* B^{-1} + S^* B^{-1} S^2)/2
                        + B^{-1} [D_m, S] - B^{-1} S B S^* B^{-1} S ) B^{1/2}

    The (1,1) derivative has no closed form here; callers needing it go
    through the series path.  Cross-validated against that path at 1e-10.
    """
    td = TriangularData.build(lam, mu, m)
    B = td.B
    Binv = np.linalg.inv(B)
    Bhalf = np.sqrt(B.real).astype(complex)
    S = shift_matrix(m)
    Sh = S.conj().T
    Dm = td.D_m

    X = Binv @ S @ B
    a11 = X @ Sh - Sh @ X + (2.0 * lam + m) * np.eye(m + 1) - 2.0 * Dm

    S2 = S @ S
    inner = (
        0.5 * (Binv @ S2 @ B @ Sh @ Binv + Sh @ Binv @ S2)
        + Binv @ (Dm @ S - S @ Dm)
        - Binv @ S @ B @ Sh @ Binv @ S
    )
    a12 = Bhalf @ inner @ Bhalf
    return PointInvariants(point=0.0, curvature=a11.T, d_zbar=2.0 * a12.T, d_zzbar=None)


def transport_eigenvalues(inv0: PointInvariants, z: complex) -> np.ndarray:
    """Predicted curvature eigenvalues at z for a homogeneous bundle.

    Transport by a disc automorphism moving 0 to z scales the curvature by
    |c|^{-2} = (1 - |z|^2)^{-2} up to a unitary, so the eigenvalue multiset
    at z is the multiset at 0 times that factor.  Returned ascending.
    """
    if abs(z) >= 1.0:
        raise DiscDomainError(f"|z| must be < 1, got {abs(z)}")
    if inv0.point != 0:
        raise ValueError("transport starts from invariants at the origin")
    return inv0.curvature_eigenvalues() / (1.0 - abs(z) ** 2) ** 2
