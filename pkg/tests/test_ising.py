import math

import numpy as np
import pytest

from qrgcoh.groundstate import eigh, ground_space
from qrgcoh.ising import (
    BracketError,
    cluster_hamiltonian_ising,
    fixed_point,
    flowed_field,
    g_prime,
    ground_state_ising,
    nu_exponent,
    rg_flow_ising,
)

G_C_REFERENCE = 1.8353524924  # bisection output, frozen as a regression value


def _power_iteration_ground_energy(h, iters=3000, seed=11):
    """Independent eigensolver: power iteration on a spectral shift of h."""
    shift = float(np.max(np.sum(np.abs(h), axis=1)))  # inf-norm bound
    m = shift * np.eye(h.shape[0]) - h
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(h.shape[0])
    v /= np.linalg.norm(v)
    for _ in range(iters):
        v = m @ v
        v /= np.linalg.norm(v)
    return shift - float(v @ (m @ v))


# ----------------------------------------------------------------- Hamiltonian

def test_cluster_zero_field_is_classical():
    h = cluster_hamiltonian_ising(1.0, 0.0)
    assert np.allclose(h, np.diag(np.diag(h)), atol=1e-14)
    dec = eigh(h)
    assert dec.eigenvalues[0] == pytest.approx(-4.0, abs=1e-12)
    assert len(ground_space(dec)) == 2


def test_cluster_strong_field_limit():
    g = 1000.0
    dec = eigh(cluster_hamiltonian_ising(1.0, g))
    assert dec.eigenvalues[0] == pytest.approx(-5.0 * g, rel=1e-3)
    state = ground_state_ising(g)
    # bond-term admixture enters at first order in 1/g
    assert np.allclose(np.abs(state), 1.0 / np.sqrt(32.0), atol=5e-4)


def test_cluster_ground_energy_vs_power_iteration():
    h = cluster_hamiltonian_ising(1.0, 2.0)
    lam0 = eigh(h).eigenvalues[0]
    assert lam0 == pytest.approx(_power_iteration_ground_energy(h), abs=1e-9)


def test_cluster_rejects_bad_parameters():
    with pytest.raises(ValueError):
        cluster_hamiltonian_ising(0.0, 1.0)
    with pytest.raises(ValueError):
        cluster_hamiltonian_ising(1.0, -0.1)


def test_cluster_degeneracy_only_at_zero_field():
    # exact double degeneracy only at g = 0; the small-field splitting is
    # tiny (it opens at fifth order in g) but strictly positive
    w0 = np.linalg.eigvalsh(cluster_hamiltonian_ising(1.0, 0.0))
    assert w0[1] - w0[0] <= 1e-12
    for g in (0.01, 0.05, 0.1, 0.2, 0.5):
        w = np.linalg.eigvalsh(cluster_hamiltonian_ising(1.0, g))
        assert w[1] - w[0] > 1e-11


# -------------------------------------------------------------------- the map

def test_field_map_at_zero():
    assert g_prime(0.0) == 0.0


def test_field_map_hand_value_at_one():
    # numerator 88^(1/4), denominator 3 sqrt(20)
    assert g_prime(1.0) == pytest.approx(88.0**0.25 / (3.0 * math.sqrt(20.0)), rel=1e-14)


def test_field_map_fixed_point_value():
    assert g_prime(G_C_REFERENCE) == pytest.approx(G_C_REFERENCE, abs=1e-9)


def test_field_map_strictly_increasing():
    gg = np.linspace(0.0, 4.0, 10001)
    vals = np.array([g_prime(float(g)) for g in gg])
    assert np.all(np.diff(vals) > 0)


def test_field_map_rejects_negative():
    with pytest.raises(ValueError):
        g_prime(-0.5)


def test_field_map_large_field_asymptote():
    assert g_prime(1e31) == 1e31 * 1e31
    # continuity across the asymptotic switch
    assert g_prime(9.9e19) == pytest.approx((9.9e19) ** 2, rel=1e-10)
    assert g_prime(1.1e20) == pytest.approx((1.1e20) ** 2, rel=1e-10)


# ---------------------------------------------------------------------- flows

def test_flow_below_fixed_point_collapses():
    assert flowed_field(1.5, 6) < 1e-2


def test_flow_above_fixed_point_diverges():
    assert flowed_field(2.2, 6) > 1e3


def test_flow_zero_stays_zero():
    assert rg_flow_ising(0.0, 4) == [0.0] * 5


def test_flow_monotone_separation_at_eight_steps():
    g_c = G_C_REFERENCE
    for g0 in np.arange(0.1, 4.05, 0.1):
        g8 = flowed_field(float(g0), 8)
        if g0 < g_c:
            assert g8 < 1e-2
        else:
            assert g8 > 1e3


def test_flow_rejects_negative_steps():
    with pytest.raises(ValueError):
        rg_flow_ising(1.0, -2)


# ---------------------------------------------------------------- fixed point

def test_fixed_point_default_bracket():
    res = fixed_point()
    assert res.residual <= 1e-10
    assert abs(res.g_c - 1.835) <= 1e-3
    assert res.g_c == pytest.approx(G_C_REFERENCE, abs=1e-8)
    assert res.bracket == (1.0, 3.0)


def test_fixed_point_needs_sign_change():
    with pytest.raises(BracketError):
        fixed_point(0.5, 1.0)


def test_fixed_point_validates_arguments():
    with pytest.raises(ValueError):
        fixed_point(2.0, 1.0)
    with pytest.raises(ValueError):
        fixed_point(1.0, 3.0, tol=0.0)


def test_nu_exponent_value_and_stability():
    g_c = fixed_point().g_c
    values = [nu_exponent(g_c, fd_step=s) for s in (1e-5, 1e-6, 1e-7)]
    assert max(values) - min(values) < 1e-6
    # regression: the map's slope at the fixed point is 3.0526, hence
    # nu = 1/log2(slope) = 0.62110
    assert values[1] == pytest.approx(0.6210987, abs=1e-5)


def test_nu_exponent_slope_is_repulsive():
    g_c = fixed_point().g_c
    h = 1e-6
    slope = (g_prime(g_c + h) - g_prime(g_c - h)) / (2 * h)
    assert slope > 1.0
    assert slope == pytest.approx(3.0526244, abs=1e-4)


def test_nu_exponent_rejects_attractive_points():
    with pytest.raises(ValueError, match="not > 1"):
        nu_exponent(0.5)  # slope < 1 well below the fixed point
    with pytest.raises(ValueError):
        nu_exponent(-1.0)
    with pytest.raises(ValueError):
        nu_exponent(1.8, fd_step=0.0)
