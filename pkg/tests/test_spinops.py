import numpy as np
import pytest

from qrgcoh.spinops import (
    basis_index,
    density_from_pure,
    expectation,
    partial_trace,
    pauli,
    pauli_pair,
    pauli_product_z,
    product_state,
)
from qrgcoh.xy import psi0_closed_form


def test_pauli_z_single_site():
    assert np.array_equal(pauli("z", 1, 1), np.diag([1.0, -1.0]))


def test_pauli_x_second_site_swaps_low_bit():
    expected = np.zeros((4, 4))
    expected[0, 1] = expected[1, 0] = expected[2, 3] = expected[3, 2] = 1.0
    assert np.array_equal(pauli("x", 2, 2), expected)


def test_pauli_squares_to_identity():
    op = pauli("z", 1, 5)
    assert np.allclose(op @ op, np.eye(32), atol=1e-12)


def test_pauli_rejects_single_site_y():
    with pytest.raises(ValueError, match="imaginary"):
        pauli("y", 1, 3)


def test_pauli_rejects_bad_axis_and_site():
    with pytest.raises(ValueError):
        pauli("w", 1, 2)
    with pytest.raises(ValueError):
        pauli("x", 3, 2)
    with pytest.raises(ValueError):
        pauli("x", 1, 13)


def test_pauli_pair_yy_is_real_antidiagonal():
    expected = np.array(
        [
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]
    )
    assert np.array_equal(pauli_pair("y", 1, 2, 2), expected)


def test_pauli_pair_xx_antidiagonal_ones():
    expected = np.fliplr(np.eye(4))
    assert np.array_equal(pauli_pair("x", 1, 2, 2), expected)


def test_pauli_pair_zz_equals_product_of_singles():
    pair = pauli_pair("z", 1, 3, 3)
    product = pauli("z", 1, 3) @ pauli("z", 3, 3)
    assert np.allclose(pair, product, atol=1e-12)


def test_pauli_pair_rejects_equal_sites():
    with pytest.raises(ValueError, match="distinct"):
        pauli_pair("x", 2, 2, 3)


def test_pauli_algebra_relations():
    # squares, same-site anticommutation, distinct-site commutation
    for axis in ("x", "z"):
        op = pauli(axis, 2, 3)
        assert np.allclose(op @ op, np.eye(8), atol=1e-12)
    x2, z2 = pauli("x", 2, 3), pauli("z", 2, 3)
    assert np.allclose(x2 @ z2 + z2 @ x2, 0.0, atol=1e-12)
    x1, z3 = pauli("x", 1, 3), pauli("z", 3, 3)
    assert np.allclose(x1 @ z3 - z3 @ x1, 0.0, atol=1e-12)
    yy = pauli_pair("y", 1, 2, 3)
    assert np.allclose(yy @ yy, np.eye(8), atol=1e-12)


def test_density_from_basis_state():
    psi = np.zeros(8)
    psi[0] = 1.0
    rho = density_from_pure(psi)
    expected = np.zeros((8, 8))
    expected[0, 0] = 1.0
    assert np.array_equal(rho, expected)


def test_density_from_uniform_state():
    psi = np.full(32, 1.0 / np.sqrt(32.0))
    rho = density_from_pure(psi)
    assert np.allclose(rho, 1.0 / 32.0, atol=1e-15)


def test_density_matches_explicit_outer_product_loop():
    # independent oracle: entrywise double loop
    psi = psi0_closed_form(0.5)
    rho = density_from_pure(psi)
    oracle = np.empty((32, 32))
    for i in range(32):
        for j in range(32):
            oracle[i, j] = psi[i] * psi[j]
    assert np.allclose(rho, oracle, atol=1e-15)


def test_density_rejects_unnormalized():
    with pytest.raises(ValueError, match="normalized"):
        density_from_pure(np.array([1.0, 1.0]))


def test_density_eigenvalues_rank_one(rng):
    for _ in range(20):
        v = rng.standard_normal(16)
        v /= np.linalg.norm(v)
        w = np.linalg.eigvalsh(density_from_pure(v))
        assert abs(w[-1] - 1.0) < 1e-10
        assert np.all(np.abs(w[:-1]) < 1e-10)


def test_partial_trace_product_state_up_up():
    rho = density_from_pure(np.array([1.0, 0.0, 0.0, 0.0]))  # |up up>
    assert np.allclose(partial_trace(rho, {1}), np.diag([1.0, 0.0]), atol=1e-15)


def test_partial_trace_bell_like_gives_maximally_mixed():
    psi = np.zeros(4)
    psi[0] = psi[3] = 1.0 / np.sqrt(2.0)
    rho = density_from_pure(psi)
    assert np.allclose(partial_trace(rho, {1}), 0.5 * np.eye(2), atol=1e-12)


def test_partial_trace_preserves_trace_of_ground_state():
    rho = density_from_pure(psi0_closed_form(0.5))
    reduced = partial_trace(rho, {1, 2})
    assert abs(np.trace(reduced) - 1.0) < 1e-12


def _random_density(rng, dim):
    a = rng.standard_normal((dim, dim))
    rho = a @ a.T
    return rho / np.trace(rho)


def test_partial_trace_trace_and_symmetry(rng):
    for _ in range(10):
        rho = _random_density(rng, 32)
        for keep in ({1}, {2, 4}, {1, 3, 5}):
            red = partial_trace(rho, keep)
            assert abs(np.trace(red) - np.trace(rho)) < 1e-12
            assert np.allclose(red, red.T, atol=1e-12)


def test_partial_trace_composition(rng):
    # tracing site 5 then site 4 equals tracing {4, 5} at once
    for _ in range(5):
        rho = _random_density(rng, 32)
        two_step = partial_trace(partial_trace(rho, {1, 2, 3, 4}, n_sites=5), {1, 2, 3}, n_sites=4)
        one_step = partial_trace(rho, {1, 2, 3}, n_sites=5)
        assert np.allclose(two_step, one_step, atol=1e-12)


def test_partial_trace_recovers_product_factor(rng):
    for _ in range(5):
        locals_ = [rng.standard_normal(2) for _ in range(4)]
        locals_ = [v / np.linalg.norm(v) for v in locals_]
        psi = product_state(locals_)
        rho = density_from_pure(psi)
        for site, v in enumerate(locals_, start=1):
            factor = partial_trace(rho, {site}, n_sites=4)
            assert np.allclose(factor, np.outer(v, v), atol=1e-12)


def test_partial_trace_brute_force_oracle(rng):
    # independent oracle: explicit index summation over traced bit patterns
    rho = _random_density(rng, 32)
    keep = (2, 3)
    traced = (1, 4, 5)
    oracle = np.zeros((4, 4))
    for a in range(4):
        for b in range(4):
            for t in range(8):
                bits_t = [(t >> k) & 1 for k in range(3)]
                idx_a = idx_b = 0
                for site, bit in zip(keep, [(a >> 1) & 1, a & 1]):
                    idx_a |= bit << (5 - site)
                for site, bit in zip(keep, [(b >> 1) & 1, b & 1]):
                    idx_b |= bit << (5 - site)
                for site, bit in zip(traced, bits_t):
                    idx_a |= bit << (5 - site)
                    idx_b |= bit << (5 - site)
                oracle[a, b] += rho[idx_a, idx_b]
    assert np.allclose(partial_trace(rho, keep), oracle, atol=1e-12)


def test_partial_trace_rejects_empty_keep():
    rho = np.eye(4) / 4.0
    with pytest.raises(ValueError, match="at least one site"):
        partial_trace(rho, set())


def test_expectation_basics():
    assert expectation(np.diag([1.0, 0.0]), np.diag([1.0, -1.0])) == pytest.approx(1.0)
    assert expectation(0.5 * np.eye(2), np.fliplr(np.eye(2))) == pytest.approx(0.0)


def test_expectation_rejects_dim_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        expectation(np.eye(2) / 2.0, np.eye(4))


def test_parity_product_expectation_of_closed_form_state():
    # The closed-form doublet member is supported on odd-down-spin basis
    # states, so the all-site sigma_z product evaluates to -1 on it (the
    # mirror member gives +1); see notes on the sector labeling.
    rho = density_from_pure(psi0_closed_form(0.5))
    val = expectation(rho, pauli_product_z(5))
    assert val == pytest.approx(-1.0, abs=1e-10)


def test_basis_index_convention():
    # site m occupies bit (5 - m); all-down is the last basis state
    assert basis_index((5,), 5) == 1
    assert basis_index((1,), 5) == 16
    assert basis_index((1, 2, 3, 4, 5), 5) == 31
