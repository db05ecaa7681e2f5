import numpy as np
import pytest

from cdbundle import MobiusMap, cocycle_c, mobius_compose, mobius_inverse


def test_identity_map_and_cocycle():
    phi = MobiusMap.identity()
    for z in (0.0, 0.3 + 0.2j, -0.7j):
        assert phi(z) == pytest.approx(z)
        assert cocycle_c(phi, z) == pytest.approx(1.0)


def test_cocycle_at_zero_is_one_minus_a_squared():
    for a in (0.2, 0.5j, -0.3 + 0.4j):
        phi = MobiusMap(1.0, a)
        assert cocycle_c(phi, 0.0) == pytest.approx(1.0 - abs(a) ** 2, abs=1e-14)


def test_inverse_round_trip():
    rng = np.random.default_rng(7)
    for _ in range(20):
        t = np.exp(2j * np.pi * rng.random())
        a = 0.8 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        z = 0.8 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        phi = MobiusMap(t, a)
        assert phi.inverse()(phi(z)) == pytest.approx(z, abs=1e-13)
        assert phi(phi.inverse()(z)) == pytest.approx(z, abs=1e-13)


def test_compose_matches_pointwise():
    rng = np.random.default_rng(11)
    for _ in range(20):
        t1, t2 = np.exp(2j * np.pi * rng.random(2))
        a1, a2 = 0.7 * rng.random(2) * np.exp(2j * np.pi * rng.random(2))
        phi, psi = MobiusMap(t1, a1), MobiusMap(t2, a2)
        comp = mobius_compose(phi, psi)
        for z in (0.1, -0.4j, 0.3 + 0.3j):
            assert comp(z) == pytest.approx(phi(psi(z)), abs=1e-13)


def test_cocycle_identity_on_random_pairs():
    rng = np.random.default_rng(13)
    for _ in range(25):
        t1, t2 = np.exp(2j * np.pi * rng.random(2))
        a1, a2 = 0.6 * rng.random(2) * np.exp(2j * np.pi * rng.random(2))
        phi, psi = MobiusMap(t1, a1), MobiusMap(t2, a2)
        z = 0.6 * rng.random() * np.exp(2j * np.pi * rng.random())
        # c((psi phi)^{-1}, z) = c(phi^{-1}, psi^{-1}(z)) c(psi^{-1}, z)
        lhs = cocycle_c(mobius_compose(psi, phi), z)
        rhs = cocycle_c(phi, mobius_inverse(psi)(z)) * cocycle_c(psi, z)
        assert abs(lhs - rhs) < 1e-12


def test_parameter_validation():
    with pytest.raises(ValueError):
        MobiusMap(2.0, 0.0)
    with pytest.raises(ValueError):
        MobiusMap(1.0, 1.0)
