"""Cross-validation suite: closed forms against independent numerics.

Each check returns (name, passed, detail); the CLI prints one line per check
and fails if any check does.  These are the oracle comparisons that keep the
closed-form fast paths honest against the eigensolver.
"""

from __future__ import annotations

import numpy as np

from . import ising, xy
from .coherence import l1_coherence, l1_coherence_pure
from .groundstate import eigh, select_ground_xy, sign_fix
from .spinops import density_from_pure, expectation, pauli_product_z


def _gamma_samples(count):
    # log-spaced into the small-anisotropy corner plus a uniform body
    lo = np.geomspace(1e-3, 0.1, count // 3)
    body = np.linspace(0.1, 1.0, count - len(lo))
    return np.concatenate([lo, body])


def check_coeff_normalization(count=50, tol=1e-10):
    worst = 0.0
    for g in _gamma_samples(count):
        k = xy.closed_form_coeffs(g)
        total = 4 * k.c1**2 + 4 * k.c2**2 + k.c3**2 + 6 * k.c4**2 + k.c5**2
        mirror = max(
            abs(k.c6 + k.c5), abs(k.c7 + k.c4), abs(k.c8 + k.c3),
            abs(k.c9 + k.c2), abs(k.c10 + k.c1),
        )
        worst = max(worst, abs(total - 1.0), mirror)
    return worst <= tol, f"max |normalization - 1| and mirror defect = {worst:.2e}"


def check_ground_energy(count=50, tol=1e-10):
    worst = 0.0
    for g in _gamma_samples(count):
        c = xy.XYCouplings(J=1.0, gamma=float(g))
        lam0 = eigh(xy.block_hamiltonian_xy(c)).eigenvalues[0]
        e0 = xy.ground_energy_xy(c)
        worst = max(worst, abs(lam0 - e0) / abs(e0))
    return worst <= tol, f"max relative energy defect = {worst:.2e}"


def check_closed_form_state(count=50, tol=1e-8):
    worst = 0.0
    for g in _gamma_samples(count):
        numeric = xy.psi0_numeric(float(g))
        closed = sign_fix(xy.psi0_closed_form(float(g)))
        worst = max(worst, float(np.max(np.abs(closed - numeric))))
    return worst <= tol, f"max inf-norm state defect = {worst:.2e}"


def check_parity_sector(count=20, tol=1e-10):
    """Selected doublet member lives in the odd-down-spin half (z-product -1)."""
    zop = pauli_product_z(5)
    worst = 0.0
    for g in _gamma_samples(count):
        dec = eigh(xy.block_hamiltonian_xy(xy.XYCouplings(J=1.0, gamma=float(g))))
        plus = select_ground_xy(dec, sector=+1).state
        minus = select_ground_xy(dec, sector=-1).state
        worst = max(
            worst,
            abs(expectation(density_from_pure(plus), zop) + 1.0),
            abs(expectation(density_from_pure(minus), zop) - 1.0),
        )
    return worst <= tol, f"max sector-expectation defect = {worst:.2e}"


def check_pure_state_identity(count=100, tol=1e-10, seed=20240817):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        v = rng.standard_normal(32)
        v /= np.linalg.norm(v)
        worst = max(worst, abs(l1_coherence_pure(v) - l1_coherence(density_from_pure(v))))
    return worst <= tol, f"max identity defect = {worst:.2e}"


def check_flow_antisymmetry(count=100, tol=1e-10, seed=20240818):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        g = rng.uniform(1e-3, 1.0)
        fwd = xy.rg_step_xy(xy.XYCouplings(J=1.0, gamma=g)).gamma
        bwd = xy.rg_step_xy(xy.XYCouplings(J=1.0, gamma=-g)).gamma
        worst = max(worst, abs(fwd + bwd))
    return worst <= tol, f"max antisymmetry defect = {worst:.2e}"


def check_flow_fixed_points(tol=1e-6):
    worst = 0.0
    for g in (-1.0, 0.0, 1.0):
        gp = xy.rg_step_xy(xy.XYCouplings(J=1.0, gamma=g)).gamma
        worst = max(worst, abs(gp - g))
    return worst <= tol, f"max fixed-point defect = {worst:.2e}"


def check_field_map_monotone(points=10001):
    gg = np.linspace(0.0, 4.0, points)
    vals = np.array([ising.g_prime(float(g)) for g in gg])
    ok = bool(np.all(np.diff(vals) > 0))
    return ok, f"strictly increasing on [0, 4] over {points} points: {ok}"


def check_field_fixed_point(tol=1e-10):
    res = ising.fixed_point()
    ok = res.residual <= tol and abs(res.g_c - 1.83535249) < 1e-6
    return ok, f"g_c = {res.g_c:.10f}, residual = {res.residual:.2e}, nu = {res.nu:.6f}"


def run_checks(gamma_points=50, tol=1e-8):
    """Run the full suite; returns a list of (name, passed, detail)."""
    if gamma_points < 3:
        raise ValueError("gamma_points must be at least 3")
    if tol <= 0:
        raise ValueError("tol must be positive")
    return [
        ("coeff_normalization", *check_coeff_normalization(gamma_points)),
        ("ground_energy", *check_ground_energy(gamma_points)),
        ("closed_form_state", *check_closed_form_state(gamma_points, tol)),
        ("parity_sector", *check_parity_sector(max(3, gamma_points // 2))),
        ("pure_state_identity", *check_pure_state_identity()),
        ("flow_antisymmetry", *check_flow_antisymmetry()),
        ("flow_fixed_points", *check_flow_fixed_points()),
        ("field_map_monotone", *check_field_map_monotone()),
        ("field_fixed_point", *check_field_fixed_point()),
    ]
