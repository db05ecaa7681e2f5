"""Truncated bivariate power series with square complex-matrix coefficients.

A series here is  sum_{k,l=0..N} a[k,l] z^k conj(w)^l  with each a[k,l] an
n-by-n complex matrix.  This is the carrier for reproducing kernels, their
inverses and their normalized forms; every coefficient-level invariant
formula in the package operates on this representation.

Conventions
-----------
* Both exponents are truncated at the same order N; products discard any
  contribution beyond (N, N) in either variable.
* A "kernel-grade" series satisfies a[k,l]^* = a[l,k] with a[0,0] Hermitian
  positive definite.  A "normalized-grade" series additionally has
  a[0,0] = I and a[k,0] = a[0,l] = 0 for k,l >= 1.  These grades are
  checked by predicates, not encoded in the type.
* Storage is dense over [0,N]^2: ranks stay <= 4 and orders <= 12 in all
  supported workloads, so sparsity would buy nothing.

All values are immutable after construction (the coefficient array is set
read-only), every operation is a pure function, and nothing here mutates
shared state, so instances are safe to use concurrently.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatchError,
    DiscDomainError,
    SingularLeadingTermError,
)

DEFAULT_ORDER = 6
TOL_HERM = 1e-12


def require_finite(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError(f"{what} contains non-finite entries")
    return arr


def hermitian_defect(a: np.ndarray) -> float:
    """Entrywise max |a^* - a|."""
    a = np.asarray(a, dtype=complex)
    return float(np.abs(a.conj().T - a).max(initial=0.0))


def assert_hermitian(a: np.ndarray, tol: float = TOL_HERM, what: str = "matrix") -> np.ndarray:
    a = require_finite(a, what)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"{what} must be square, got shape {a.shape}")
    d = hermitian_defect(a)
    if d > tol:
        raise ValueError(f"{what} is not Hermitian within {tol:g} (defect {d:.3e})")
    return a


def hermitian_sqrt(a: np.ndarray, floor: float = 1e-10) -> np.ndarray:
    """Principal square root of a Hermitian positive definite matrix.

    Eigenvalues below `floor` are rejected rather than clipped: a degenerate
    metric invalidates every downstream invariant formula.
    """
    from .errors import MetricDegeneracyError

    a = assert_hermitian(a, what="sqrt argument")
    vals, vecs = np.linalg.eigh(a)
    if vals.min() < floor:
        raise MetricDegeneracyError(
            f"matrix not positive definite (min eigenvalue {vals.min():.3e} < {floor:g})"
        )
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


class MatrixPowerSeries2:
    """Immutable truncated series sum a[k,l] z^k conj(w)^l, 0 <= k,l <= N."""

    __slots__ = ("coeffs", "rank", "order")

    def __init__(self, coeffs: np.ndarray):
        arr = require_finite(coeffs, "series coefficients")
        if arr.ndim != 4 or arr.shape[0] != arr.shape[1] or arr.shape[2] != arr.shape[3]:
            raise DimensionMismatchError(
                f"coefficient array must have shape (N+1, N+1, n, n), got {arr.shape}"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "rank", arr.shape[2])
        object.__setattr__(self, "order", arr.shape[0] - 1)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("MatrixPowerSeries2 is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, rank: int, order: int) -> "MatrixPowerSeries2":
        return cls(np.zeros((order + 1, order + 1, rank, rank), dtype=complex))

    @classmethod
    def identity(cls, rank: int, order: int) -> "MatrixPowerSeries2":
        c = np.zeros((order + 1, order + 1, rank, rank), dtype=complex)
        c[0, 0] = np.eye(rank)
        return cls(c)

    @classmethod
    def from_coeff_dict(cls, rank: int, order: int, entries: dict) -> "MatrixPowerSeries2":
        c = np.zeros((order + 1, order + 1, rank, rank), dtype=complex)
        for (k, l), mat in entries.items():
            c[k, l] = np.asarray(mat, dtype=complex)
        return cls(c)

    # -- basic accessors ----------------------------------------------

    def coeff(self, k: int, l: int) -> np.ndarray:
        if k > self.order or l > self.order:
            from .errors import TruncationOrderError

            raise TruncationOrderError(
                f"coefficient ({k},{l}) beyond truncation order {self.order}"
            )
        return self.coeffs[k, l].copy()

    def truncate(self, order: int) -> "MatrixPowerSeries2":
        if order == self.order:
            return self
        if order < self.order:
            return MatrixPowerSeries2(self.coeffs[: order + 1, : order + 1])
        c = np.zeros((order + 1, order + 1, self.rank, self.rank), dtype=complex)
        c[: self.order + 1, : self.order + 1] = self.coeffs
        return MatrixPowerSeries2(c)

    def _check_compatible(self, other: "MatrixPowerSeries2") -> None:
        if self.rank != other.rank:
            raise DimensionMismatchError(f"rank mismatch: {self.rank} vs {other.rank}")
        if self.order != other.order:
            raise DimensionMismatchError(f"order mismatch: {self.order} vs {other.order}")

    # -- algebra -------------------------------------------------------

    def multiply(self, other: "MatrixPowerSeries2") -> "MatrixPowerSeries2":
        """Cauchy product over both indices, truncated at the common order."""
        self._check_compatible(other)
        N, n = self.order, self.rank
        a, b = self.coeffs, other.coeffs
        out = np.zeros_like(a)
        for k in range(N + 1):
            for l in range(N + 1):
                # out[k,l] = sum_{p<=k, q<=l} a[p,q] b[k-p,l-q]
                blk = np.einsum("pqij,pqjk->ik", a[: k + 1, : l + 1],
                                b[k::-1, l::-1][: k + 1, : l + 1])
                out[k, l] = blk
        return MatrixPowerSeries2(out)

    def __matmul__(self, other: "MatrixPowerSeries2") -> "MatrixPowerSeries2":
        return self.multiply(other)

    def add(self, other: "MatrixPowerSeries2") -> "MatrixPowerSeries2":
        self._check_compatible(other)
        return MatrixPowerSeries2(self.coeffs + other.coeffs)

    def scale(self, factor: complex) -> "MatrixPowerSeries2":
        return MatrixPowerSeries2(self.coeffs * factor)

    def conjugate_by(self, g: np.ndarray) -> "MatrixPowerSeries2":
        """Coefficientwise g . a[k,l] . g^*."""
        g = require_finite(g, "conjugation factor")
        return MatrixPowerSeries2(np.einsum("ij,kljm,nm->klin", g, self.coeffs, g.conj()))

    def sandwich(self, left: np.ndarray, right: np.ndarray) -> "MatrixPowerSeries2":
        left = require_finite(left, "left factor")
        right = require_finite(right, "right factor")
        return MatrixPowerSeries2(np.einsum("ij,kljm,mn->klin", left, self.coeffs, right))

    def invert(self) -> "MatrixPowerSeries2":
        """Series inverse B with B @ self = self @ B = identity up to order N.

        b[0,0] = a[0,0]^{-1} and, for (k,l) != (0,0), the coefficient follows
        from requiring every mixed coefficient of B*A to vanish:
        b[k,l] = -( sum_{(p,q) < (k,l)} b[p,q] a[k-p,l-q] ) a[0,0]^{-1}.
        Specializing to l = 0 this is the one-row recursion
        sum_{s<=k} b[s,0] a[k-s,0] = 0 used by the coefficient identities.
        """
        N, n = self.order, self.rank
        a = self.coeffs
        a00 = a[0, 0]
        try:
            a00_inv = np.linalg.inv(a00)
        except np.linalg.LinAlgError as exc:
            raise SingularLeadingTermError("constant coefficient is singular") from exc
        cond = np.linalg.cond(a00)
        if not np.isfinite(cond) or cond > 1e14:
            raise SingularLeadingTermError(
                f"constant coefficient numerically singular (cond {cond:.3e})"
            )
        b = np.zeros_like(a)
        b[0, 0] = a00_inv
        for total in range(1, 2 * N + 1):
            for k in range(min(total, N) + 1):
                l = total - k
                if l > N:
                    continue
                acc = np.zeros((n, n), dtype=complex)
                for p in range(k + 1):
                    for q in range(l + 1):
                        if p == k and q == l:
                            continue
                        acc += b[p, q] @ a[k - p, l - q]
                b[k, l] = -acc @ a00_inv
        return MatrixPowerSeries2(b)

    # -- analysis helpers ----------------------------------------------

    def hermitian_symmetry_defect(self) -> float:
        """max_{k,l} entrywise |a[k,l]^* - a[l,k]|; validity gate for kernels."""
        a = self.coeffs
        sym = np.conj(np.swapaxes(a, 2, 3))  # a[k,l]^* at index (k,l)
        return float(np.abs(np.swapaxes(sym, 0, 1) - a).max(initial=0.0))

    def evaluate(self, z: complex, w: complex) -> np.ndarray:
        """sum over retained indices; truncation tail is not compensated."""
        if abs(z) >= 1 or abs(w) >= 1:
            raise DiscDomainError(f"evaluation point ({z}, {w}) outside the open disc")
        N = self.order
        zp = z ** np.arange(N + 1)
        wp = np.conj(w) ** np.arange(N + 1)
        return np.einsum("k,l,klij->ij", zp, wp, self.coeffs)

    def z_slice(self) -> "MatrixPowerSeries2":
        """The series of K(z, 0): keeps only the l = 0 column."""
        c = np.zeros_like(self.coeffs)
        c[:, 0] = self.coeffs[:, 0]
        return MatrixPowerSeries2(c)

    def w_slice(self) -> "MatrixPowerSeries2":
        """The series of K(0, w): keeps only the k = 0 row."""
        c = np.zeros_like(self.coeffs)
        c[0, :] = self.coeffs[0, :]
        return MatrixPowerSeries2(c)

    def is_kernel_grade(self, tol: float = TOL_HERM) -> bool:
        if self.hermitian_symmetry_defect() > tol:
            return False
        vals = np.linalg.eigvalsh(0.5 * (self.coeffs[0, 0] + self.coeffs[0, 0].conj().T))
        return bool(vals.min() > 0)

    def is_normalized_grade(self, tol: float = 1e-11) -> bool:
        c = self.coeffs
        if np.abs(c[0, 0] - np.eye(self.rank)).max() > tol:
            return False
        off = max(np.abs(c[1:, 0]).max(initial=0.0), np.abs(c[0, 1:]).max(initial=0.0))
        return off <= tol

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"MatrixPowerSeries2(rank={self.rank}, order={self.order})"


# Functional aliases matching the operation-level vocabulary.

def series_multiply(a: MatrixPowerSeries2, b: MatrixPowerSeries2) -> MatrixPowerSeries2:
    return a.multiply(b)


def series_invert(k: MatrixPowerSeries2) -> MatrixPowerSeries2:
    return k.invert()


def hermitian_symmetry_defect(k: MatrixPowerSeries2) -> float:
    return k.hermitian_symmetry_defect()


def series_evaluate(k: MatrixPowerSeries2, z: complex, w: complex) -> np.ndarray:
    return k.evaluate(z, w)
