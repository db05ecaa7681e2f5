"""Closed-form reproducing kernels on the unit disc and their Taylor lattices.

Every kernel variant supports two independent views:

* ``evaluate(z, w)`` — the exact closed-form matrix value K(z, w), no
  truncation anywhere (nilpotent exponentials are finite sums, powers use
  the principal branch, which is safe because Re(1 - z conj(w)) > 0 on the
  bidisc);
* ``taylor(order)`` — extraction of the coefficient lattice a[k,l] of
  K(z,w) = sum a[k,l] z^k conj(w)^l as a :class:`MatrixPowerSeries2`.

The metric convention used downstream is h(z) = K(z, z)^t (plain
transpose); the invariant formulas apply the trailing transpose where the
closed forms do, so kernels themselves are stored untransposed.

Specs are immutable and validated on construction; everything here is a
pure function of its arguments and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DiscDomainError
from .series import MatrixPowerSeries2

__all__ = [
    "KernelSpec",
    "BergmanPower",
    "Jet",
    "DirectSum",
    "Homogeneous",
    "Permuted",
    "TriangularData",
    "shift_matrix",
    "weighted_shift",
    "kernel_evaluate",
    "kernel_taylor",
    "kernel_rank",
    "jet_taylor_generic",
    "permutation_matrix",
    "spec_from_dict",
    "spec_to_dict",
]


def rising(x: float, r: int) -> float:
    """Rising factorial x(x+1)...(x+r-1) by direct product (exact for r=0)."""
    out = 1.0
    for i in range(r):
        out *= x + i
    return out


def falling(n: int, r: int) -> float:
    """n(n-1)...(n-r+1) = n!/(n-r)!."""
    out = 1.0
    for i in range(r):
        out *= n - i
    return out


def weighted_shift(m: int, weights: Sequence[complex]) -> np.ndarray:
    """S_m(c_1..c_m): entry (l, p) = c_l * delta_{p+1,l}; nilpotent of index <= m+1."""
    if m < 1 or len(weights) != m:
        raise ValueError(f"need exactly m={m} weights, got {len(weights)}")
    s = np.zeros((m + 1, m + 1), dtype=complex)
    for l in range(1, m + 1):
        s[l, l - 1] = weights[l - 1]
    return s


def shift_matrix(m: int) -> np.ndarray:
    """The standard weighted shift with weights 1..m."""
    return weighted_shift(m, list(range(1, m + 1)))


def permutation_matrix(sigma: Sequence[int]) -> np.ndarray:
    """(P)_{ij} = 1 iff j = sigma(i), for 1-indexed sigma."""
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"sigma must be a permutation of 1..{n}, got {list(sigma)}")
    p = np.zeros((n, n), dtype=complex)
    for i, j in enumerate(sigma):
        p[i, j - 1] = 1.0
    return p


def _check_disc(z: complex, w: complex) -> None:
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise DiscDomainError(f"point ({z}, {w}) outside the open unit disc")


@dataclass(frozen=True)
class TriangularData:
    """Structured data of the homogeneous family for given (lambda, mu, m).

    L is unit lower triangular with
    L[l, j] = C(l, j)^2 (l-j)! / (2*lambda - m + 2j)_(l-j)  for j <= l,
    d = L mu' where mu' = (mu_0^2, ..., mu_m^2), B = diag(d) and
    D_m = diag(m, m-1, ..., 1, 0).
    """

    lam: float
    mu: tuple
    m: int
    L: np.ndarray = field(repr=False)
    d: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, lam: float, mu: Sequence[float], m: int) -> "TriangularData":
        L = np.zeros((m + 1, m + 1))
        for l in range(m + 1):
            for j in range(l + 1):
                two_lam_j = 2.0 * lam - m + 2 * j
                L[l, j] = math.comb(l, j) ** 2 * math.factorial(l - j) / rising(two_lam_j, l - j)
        mu_sq = np.array([float(x) ** 2 for x in mu])
        d = L @ mu_sq
        if d.min() <= 0:
            raise ValueError(f"diagonal metric data must be positive, got {d}")
        return cls(lam=float(lam), mu=tuple(float(x) for x in mu), m=int(m), L=L, d=d)

    @property
    def B(self) -> np.ndarray:
        return np.diag(self.d.astype(complex))

    @property
    def D_m(self) -> np.ndarray:
        return np.diag(np.arange(self.m, -1, -1).astype(complex))

    def L_inverse(self) -> np.ndarray:
        return np.linalg.inv(self.L)


class KernelSpec:
    """Base class of the kernel zoo; concrete variants are frozen dataclasses."""

    @property
    def rank(self) -> int:
        raise NotImplementedError

    def evaluate(self, z: complex, w: complex) -> np.ndarray:
        raise NotImplementedError

    def taylor(self, order: int) -> MatrixPowerSeries2:
        raise NotImplementedError

    @property
    def mobius_homogeneous(self) -> bool:
        """Whether the bundle is invariant under all disc automorphisms.

        Every variant in the zoo is (direct sums and permutations of
        homogeneous kernels stay homogeneous), so invariants at 0 pin the
        equivalence class over the whole disc.
        """
        return True

    def metric_at(self, z: complex) -> np.ndarray:
        """h(z) = K(z, z)^t."""
        return self.evaluate(z, z).T.copy()


@dataclass(frozen=True)
class BergmanPower(KernelSpec):
    """(1 - z conj(w))^{-lambda}, lambda > 0; rank 1."""

    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")

    @property
    def rank(self) -> int:
        return 1

    def evaluate(self, z: complex, w: complex) -> np.ndarray:
        _check_disc(z, w)
        return np.array([[(1 - z * np.conj(w)) ** (-self.lam)]], dtype=complex)

    def taylor(self, order: int) -> MatrixPowerSeries2:
        c = np.zeros((order + 1, order + 1, 1, 1), dtype=complex)
        for k in range(order + 1):
            c[k, k, 0, 0] = rising(self.lam, k) / math.factorial(k)
        return MatrixPowerSeries2(c)


def _power_kernel_mixed_derivative(beta: float, i: int, j: int, z: complex, wbar: complex) -> complex:
    """d^i_z d^j_wbar (1 - z wbar)^{-beta}, exact closed form.

    d^j_wbar gives (beta)_j z^j (1-x)^{-beta-j} with x = z wbar; the z
    derivatives then follow from the Leibniz rule on z^j * (1-x)^{-beta-j}.
    """
    x = z * wbar
    total = 0.0 + 0.0j
    for t in range(min(i, j) + 1):
        coeff = math.comb(i, t) * falling(j, t)
        total += (
            coeff
            * z ** (j - t)
            * rising(beta + j, i - t)
            * wbar ** (i - t)
            * (1 - x) ** (-beta - j - (i - t))
        )
    return rising(beta, j) * total


@dataclass(frozen=True)
class Jet(KernelSpec):
    """Rank-(k+1) jet kernel built from two scalar power kernels.

    Entry (i, j) is d^i_{z_2} d^j_{conj(w_2)} applied to
    (1-z_1 conj(w_1))^{-alpha} (1-z_2 conj(w_2))^{-beta}, restricted to
    z_1 = z_2 = z and w_1 = w_2 = w.
    """

    alpha: float
    beta: float
    k: int

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError("alpha and beta must be positive")
        if self.k not in (1, 2):
            raise ValueError(f"jet order k must be 1 or 2, got {self.k}")

    @property
    def rank(self) -> int:
        return self.k + 1

    def evaluate(self, z: complex, w: complex) -> np.ndarray:
        _check_disc(z, w)
        wbar = np.conj(w)
        base = (1 - z * wbar) ** (-self.alpha)
        n = self.k + 1
        out = np.empty((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                out[i, j] = base * _power_kernel_mixed_derivative(self.beta, i, j, z, wbar)
        return out

    def taylor(self, order: int) -> MatrixPowerSeries2:
        return jet_taylor_generic(self.alpha, self.beta, self.k, order)


def jet_taylor_generic(alpha: float, beta: float, k: int, order: int) -> MatrixPowerSeries2:
    """Taylor lattice of the jet kernel from the generic derivative rule.

    With A_r = (alpha)_r / r! and B_r = (beta)_r / r!, entry (i, j) of the
    kernel is sum over k1, k2 of
    A_{k1} B_{k2} (k2!/(k2-i)!) (k2!/(k2-j)!) z^{k1+k2-i} conj(w)^{k1+k2-j},
    so a[p, q][i, j] collects the terms with k1 + k2 = p + i = q + j.
    """
    if k not in (1, 2):
        raise ValueError(f"jet order k must be 1 or 2, got {k}")
    n = k + 1
    N = order
    # scalar factor coefficients up to the largest needed total degree
    top = N + k + 1
    A = [rising(alpha, r) / math.factorial(r) for r in range(top + 1)]
    B = [rising(beta, r) / math.factorial(r) for r in range(top + 1)]
    c = np.zeros((N + 1, N + 1, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            for p in range(N + 1):
                q = p + i - j
                if q < 0 or q > N:
                    continue
                K = p + i
                acc = 0.0
                for k2 in range(max(i, j), K + 1):
                    acc += A[K - k2] * B[k2] * falling(k2, i) * falling(k2, j)
                c[p, q, i, j] = acc
    return MatrixPowerSeries2(c)


@dataclass(frozen=True)
class DirectSum(KernelSpec):
    """Block-diagonal sum of kernels; rank is the sum of part ranks."""

    parts: tuple

    def __init__(self, parts: Sequence[KernelSpec]):
        parts = tuple(parts)
        if not parts:
            raise ValueError("direct sum needs at least one part")
        for p in parts:
            if not isinstance(p, KernelSpec):
                raise TypeError(f"direct sum parts must be kernel specs, got {type(p)}")
        object.__setattr__(self, "parts", parts)

    @property
    def rank(self) -> int:
        return sum(p.rank for p in self.parts)

    def evaluate(self, z: complex, w: complex) -> np.ndarray:
        blocks = [p.evaluate(z, w) for p in self.parts]
        n = self.rank
        out = np.zeros((n, n), dtype=complex)
        at = 0
        for blk in blocks:
            r = blk.shape[0]
            out[at : at + r, at : at + r] = blk
            at += r
        return out

    def taylor(self, order: int) -> MatrixPowerSeries2:
        n = self.rank
        c = np.zeros((order + 1, order + 1, n, n), dtype=complex)
        at = 0
        for p in self.parts:
            r = p.rank
            c[:, :, at : at + r, at : at + r] = p.taylor(order).coeffs
            at += r
        return MatrixPowerSeries2(c)


@dataclass(frozen=True)
class Homogeneous(KernelSpec):
    """The rank-(m+1) homogeneous family K^(lambda, mu).

    K(z, w) = (1-x)^{-2 lambda - m} D(x) exp(conj(w) S) B exp(z S^*) D(x)
    with x = z conj(w), S the weighted shift with weights 1..m,
    D(x) = diag((1-x)^{m-l}) and B = diag(d), d = L(lambda) mu'.
    The exponentials are exact finite sums (S is nilpotent), so evaluation
    has no truncation error by construction.
    """

    lam: float
    mu: tuple
    m: int

    def __init__(self, lam: float, mu: Sequence[float], m: int):
        mu = tuple(float(x) for x in mu)
        if m < 1 or int(m) != m:
            raise ValueError(f"m must be a positive integer, got {m}")
        if len(mu) != m + 1:
            raise ValueError(f"mu must have m+1 = {m + 1} entries, got {len(mu)}")
        if mu[0] != 1.0:
            raise ValueError(f"mu_0 must equal 1, got {mu[0]}")
        if any(x <= 0 for x in mu):
            raise ValueError("all mu entries must be positive")
        if not 2 * lam - m > 0:
            raise ValueError(f"need 2*lambda - m > 0, got lambda={lam}, m={m}")
        object.__setattr__(self, "lam", float(lam))
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "m", int(m))

    @property
    def rank(self) -> int:
        return self.m + 1

    @property
    def triangular(self) -> TriangularData:
        return TriangularData.build(self.lam, self.mu, self.m)

    def evaluate(self, z: complex, w: complex) -> np.ndarray:
        _check_disc(z, w)
        m = self.m
        x = z * np.conj(w)
        S = shift_matrix(m)
        expw = _nilpotent_exp(np.conj(w) * S)
        expz = _nilpotent_exp(z * S.conj().T)
        D = np.diag(np.array([(1 - x) ** (m - l) for l in range(m + 1)], dtype=complex))
        B = self.triangular.B
        return (1 - x) ** (-2 * self.lam - m) * (D @ expw @ B @ expz @ D)

    def taylor(self, order: int) -> MatrixPowerSeries2:
        m, n = self.m, self.m + 1
        N = order
        S = shift_matrix(m)
        power = np.zeros((N + 1, N + 1, n, n), dtype=complex)
        for k in range(N + 1):
            power[k, k] = rising(2 * self.lam + m, k) / math.factorial(k) * np.eye(n)
        dfac = np.zeros_like(power)
        for k in range(N + 1):
            dfac[k, k] = np.diag(
                np.array([math.comb(m - l, k) * (-1.0) ** k if k <= m - l else 0.0
                          for l in range(m + 1)], dtype=complex)
            )
        expw = np.zeros_like(power)
        expz = np.zeros_like(power)
        for r in range(min(m, N) + 1):
            expw[0, r] = np.linalg.matrix_power(S, r) / math.factorial(r)
            expz[r, 0] = np.linalg.matrix_power(S.conj().T, r) / math.factorial(r)
        Bser = np.zeros_like(power)
        Bser[0, 0] = self.triangular.B
        factors = [MatrixPowerSeries2(c) for c in (power, dfac, expw, Bser, expz, dfac)]
        out = factors[0]
        for f in factors[1:]:
            out = out.multiply(f)
        return out


def _nilpotent_exp(a: np.ndarray) -> np.ndarray:
    """exp of a nilpotent matrix as the exact finite sum."""
    n = a.shape[0]
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for r in range(1, n):
        term = term @ a / r
        out = out + term
    return out


@dataclass(frozen=True)
class Permuted(KernelSpec):
    """P_sigma K P_sigma^* for a 1-indexed permutation sigma of the frame."""

    inner: KernelSpec
    sigma: tuple

    def __init__(self, inner: KernelSpec, sigma: Sequence[int]):
        sigma = tuple(int(s) for s in sigma)
        if sorted(sigma) != list(range(1, inner.rank + 1)):
            raise ValueError(
                f"sigma must be a permutation of 1..{inner.rank}, got {list(sigma)}"
            )
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "sigma", sigma)

    @property
    def rank(self) -> int:
        return self.inner.rank

    def _p(self) -> np.ndarray:
        return permutation_matrix(self.sigma)

    def evaluate(self, z: complex, w: complex) -> np.ndarray:
        p = self._p()
        return p @ self.inner.evaluate(z, w) @ p.conj().T

    def taylor(self, order: int) -> MatrixPowerSeries2:
        return self.inner.taylor(order).conjugate_by(self._p())


# -- operation-level functions ------------------------------------------


def kernel_evaluate(spec: KernelSpec, z: complex, w: complex) -> np.ndarray:
    return spec.evaluate(z, w)


def kernel_taylor(spec: KernelSpec, order: int) -> MatrixPowerSeries2:
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    return spec.taylor(order)


def kernel_rank(spec: KernelSpec) -> int:
    return spec.rank


# -- JSON wire format ------------------------------------------------------

def spec_from_dict(obj: dict) -> KernelSpec:
    """Parse the normative JSON form; unknown fields are rejected."""
    if not isinstance(obj, dict):
        raise ValueError(f"kernel spec must be an object, got {type(obj).__name__}")
    if "type" not in obj:
        raise ValueError("kernel spec missing 'type'")
    kind = obj["type"]
    fields = {k for k in obj if k != "type"}

    def expect(allowed: set) -> None:
        extra = fields - allowed
        missing = allowed - fields
        if extra:
            raise ValueError(f"unknown fields for '{kind}': {sorted(extra)}")
        if missing:
            raise ValueError(f"missing fields for '{kind}': {sorted(missing)}")

    if kind == "bergman":
        expect({"lambda"})
        return BergmanPower(lam=float(obj["lambda"]))
    if kind == "jet":
        expect({"alpha", "beta", "k"})
        return Jet(alpha=float(obj["alpha"]), beta=float(obj["beta"]), k=int(obj["k"]))
    if kind == "direct_sum":
        expect({"parts"})
        return DirectSum([spec_from_dict(p) for p in obj["parts"]])
    if kind == "homogeneous":
        expect({"lambda", "mu", "m"})
        return Homogeneous(lam=float(obj["lambda"]),
                           mu=[float(x) for x in obj["mu"]], m=int(obj["m"]))
    if kind == "permuted":
        expect({"sigma", "inner"})
        return Permuted(inner=spec_from_dict(obj["inner"]),
                        sigma=[int(s) for s in obj["sigma"]])
    raise ValueError(f"unknown kernel type '{kind}'")


def spec_to_dict(spec: KernelSpec) -> dict:
    if isinstance(spec, BergmanPower):
        return {"type": "bergman", "lambda": spec.lam}
    if isinstance(spec, Jet):
        return {"type": "jet", "alpha": spec.alpha, "beta": spec.beta, "k": spec.k}
    if isinstance(spec, DirectSum):
        return {"type": "direct_sum", "parts": [spec_to_dict(p) for p in spec.parts]}
    if isinstance(spec, Homogeneous):
        return {"type": "homogeneous", "lambda": spec.lam, "mu": list(spec.mu), "m": spec.m}
    if isinstance(spec, Permuted):
        return {"type": "permuted", "sigma": list(spec.sigma), "inner": spec_to_dict(spec.inner)}
    raise TypeError(f"not a kernel spec: {type(spec).__name__}")
