import numpy as np
import pytest

from cdbundle import (
    BergmanPower,
    DirectSum,
    Homogeneous,
    Jet,
    MatrixPowerSeries2,
    Permuted,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def zoo_fixtures():
    """The kernel fixture set used by oracle/series cross-checks."""
    hom2 = Homogeneous(lam=2.0, mu=(1.0, 1.0, 1.0), m=2)
    return [
        ("bergman_1", BergmanPower(1.0)),
        ("bergman_2.5", BergmanPower(2.5)),
        ("jet1_1_2", Jet(alpha=1.0, beta=2.0, k=1)),
        ("jet1_1_5", Jet(alpha=1.0, beta=5.0, k=1)),
        ("jet2_1_2", Jet(alpha=1.0, beta=2.0, k=2)),
        ("jet2_2_1", Jet(alpha=2.0, beta=1.0, k=2)),
        ("ds_bergman_pair", DirectSum([BergmanPower(1.0), BergmanPower(5.0)])),
        ("ds_line_jet", DirectSum([BergmanPower(1.0), Jet(alpha=1.0, beta=5.0, k=1)])),
        ("hom_m1", Homogeneous(lam=1.0, mu=(1.0, 1.0), m=1)),
        ("hom_m2", hom2),
        ("hom_m2_skew", Homogeneous(lam=1.6, mu=(1.0, 1.4, 0.6), m=2)),
        ("hom_m2_permuted", Permuted(inner=hom2, sigma=(2, 1, 3))),
    ]


def fourier_lattice(fn, order, rank, radius=0.35, npts=64):
    """Independent coefficient-extraction oracle by double Fourier quadrature.

    For K(z, w) = sum a[p,q] z^p conj(w)^q, sampling z = r e^{i th},
    w = r e^{i ph} on an npts x npts torus and projecting the modes
    recovers a[p,q] with spectral accuracy (aliasing ~ r^{2 npts}).
    """
    th = 2 * np.pi * np.arange(npts) / npts
    vals = np.empty((npts, npts, rank, rank), dtype=complex)
    for a, t in enumerate(th):
        for b, p in enumerate(th):
            vals[a, b] = fn(radius * np.exp(1j * t), radius * np.exp(1j * p))
    # a[p,q] mode: e^{i p th} e^{-i q ph}
    modes = np.fft.fft(vals, axis=0) / npts  # picks e^{+i p th} components
    modes = np.fft.ifft(modes, axis=1)  # picks e^{-i q ph} components
    out = np.empty((order + 1, order + 1, rank, rank), dtype=complex)
    for p in range(order + 1):
        for q in range(order + 1):
            out[p, q] = modes[p, q] / radius ** (p + q)
    return out


def random_kernel_series(rng, rank=2, order=4, scale=0.3):
    """Random kernel-grade lattice: Hermitian-symmetric with HPD constant term."""
    c = np.zeros((order + 1, order + 1, rank, rank), dtype=complex)
    for k in range(order + 1):
        for l in range(k, order + 1):
            blk = scale * (rng.standard_normal((rank, rank))
                           + 1j * rng.standard_normal((rank, rank)))
            if k == l:
                blk = 0.5 * (blk + blk.conj().T)
            c[k, l] = blk
            c[l, k] = blk.conj().T
    a = rng.standard_normal((rank, rank)) + 1j * rng.standard_normal((rank, rank))
    c[0, 0] = a @ a.conj().T + rank * np.eye(rank)
    return MatrixPowerSeries2(c)
