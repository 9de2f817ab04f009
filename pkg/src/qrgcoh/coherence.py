"""l1-norm coherence in the fixed computational (sigma_z) basis."""

from __future__ import annotations

import numpy as np

from .spinops import density_from_pure, partial_trace


def l1_coherence(rho):
    """Sum of absolute values of the strictly off-diagonal entries of rho."""
    rho = np.asarray(rho, dtype=float)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    return float(np.sum(np.abs(rho)) - np.sum(np.abs(np.diag(rho))))


def l1_coherence_pure(psi):
    """Pure-state shortcut (sum_i |c_i|)^2 - 1 for a normalized vector psi."""
    psi = np.asarray(psi, dtype=float)
    norm2 = psi @ psi
    if abs(norm2 - 1.0) > 1e-12:
        raise ValueError(f"state not normalized: |psi|^2 = {norm2!r}")
    total = float(np.sum(np.abs(psi)))
    return total * total - 1.0


def subsystem_coherence(psi, keep, n_sites=None):
    """Coherence of the reduced state of `keep` computed from a pure state."""
    return l1_coherence(partial_trace(density_from_pure(psi), keep, n_sites))
