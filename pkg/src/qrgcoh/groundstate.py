"""Symmetric eigendecomposition and physically-correct ground-state selection.

The block Hamiltonians used here have degenerate ground doublets at special
couplings (the XY block for every anisotropy, the Ising cluster at zero
field).  Selection inside a degenerate space is done by diagonalizing the
restriction of the relevant symmetry operator to the ground space, never by
inspecting amplitudes, so it is robust to arbitrary basis mixing returned by
the eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spinops import n_sites_of, pauli_product_z, spin_flip_permutation

DEFAULT_DEG_TOL = 1e-9  # relative; spectra here are O(1)-O(10)


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class GroundSelection:
    state: np.ndarray
    energy: float
    degeneracy: int
    selector_used: str  # unique | parity_plus | parity_minus | spinflip_symmetric


def eigh(op):
    """Full symmetric eigendecomposition, ascending, deterministic.

    Rejects non-symmetric input; the returned vectors satisfy
    ||H v - lam v||_inf <= 1e-10 ||H||_inf.
    """
    op = np.asarray(op, dtype=float)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"operator must be square, got shape {op.shape}")
    if not np.allclose(op, op.T, atol=1e-12, rtol=0.0):
        raise ValueError("operator is not symmetric within 1e-12")
    w, v = np.linalg.eigh(op)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def ground_space(dec, deg_tol=DEFAULT_DEG_TOL):
    """Eigenvectors with eigenvalue within deg_tol (relative) of the minimum."""
    if deg_tol <= 0:
        raise ValueError("deg_tol must be positive")
    w = dec.eigenvalues
    lam0 = w[0]
    cut = lam0 + deg_tol * max(1.0, abs(lam0))
    k = int(np.searchsorted(w, cut, side="right"))
    return [dec.eigenvectors[:, i].copy() for i in range(k)]


def sign_fix(psi):
    """Canonical global sign: largest-magnitude amplitude made positive.

    Ties in magnitude break toward the lowest basis index, with a relative
    slack of 1e-12 so that analytically equal amplitudes that differ by
    rounding still count as tied.  Coherence is unaffected; this only pins
    the arbitrary overall sign.
    """
    psi = np.asarray(psi, dtype=float)
    mags = np.abs(psi)
    top = mags.max()
    i = int(np.argmax(mags >= top * (1.0 - 1e-12)))  # first near-maximal entry
    return -psi if psi[i] < 0 else psi


def select_ground_xy(dec, deg_tol=DEFAULT_DEG_TOL, sector=+1):
    """Pick one member of the XY block's ground doublet by spin-flip parity.

    The doublet splits into the two eigensectors of the all-site sigma_z
    product.  sector=+1 returns the member supported on basis states with an
    odd number of down spins, the half where the closed-form amplitudes live
    (its raw sigma_z-product expectation is -1); sector=-1 returns its
    spin-flip mirror.
    """
    vecs = ground_space(dec, deg_tol)
    if len(vecs) != 2:
        raise ValueError(f"expected a 2-fold degenerate ground space, found {len(vecs)}")
    n = n_sites_of(vecs[0].shape[0])
    zdiag = np.diag(pauli_product_z(n))
    basis = np.column_stack(vecs)
    restricted = basis.T @ (zdiag[:, None] * basis)
    ev, u = np.linalg.eigh(restricted)
    if not (abs(ev[0] + 1.0) < 1e-8 and abs(ev[1] - 1.0) < 1e-8):
        raise ValueError(f"ground space does not split into +/-1 parity sectors: {ev}")
    col = 0 if sector == +1 else 1  # odd-down-spin half carries z-product -1
    state = sign_fix(basis @ u[:, col])
    return GroundSelection(
        state=state,
        energy=float(dec.eigenvalues[0]),
        degeneracy=2,
        selector_used="parity_plus" if sector == +1 else "parity_minus",
    )


def select_ground_ising(dec, g, deg_tol=DEFAULT_DEG_TOL):
    """Ground state of the Ising cluster, continuous through zero field.

    With a unique ground state it is returned as-is.  Inside the (near-)
    degenerate regime at small field the two lowest states are combined into
    the +1 eigenstate of the global spin flip, which is the limit the
    coherence curve approaches continuously as the field vanishes.
    """
    if g < 0:
        raise ValueError("field must be non-negative")
    vecs = ground_space(dec, deg_tol)
    if len(vecs) == 1:
        return GroundSelection(
            state=sign_fix(vecs[0]),
            energy=float(dec.eigenvalues[0]),
            degeneracy=1,
            selector_used="unique",
        )
    n = n_sites_of(vecs[0].shape[0])
    perm = spin_flip_permutation(n)
    basis = np.column_stack(vecs)
    restricted = basis.T @ basis[perm, :]
    ev, u = np.linalg.eigh(restricted)
    # +1 spin-flip sector is the top eigenvalue of the restriction
    state = basis @ u[:, -1]
    state = state / np.linalg.norm(state)
    return GroundSelection(
        state=sign_fix(state),
        energy=float(dec.eigenvalues[0]),
        degeneracy=len(vecs),
        selector_used="spinflip_symmetric",
    )
