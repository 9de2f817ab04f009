"""Spin-1/2 operator algebra on small clusters, in a purely real backend.

Sites are numbered 1..n_sites with site 1 the block center.  Basis states of
the 2**n_sites-dimensional Hilbert space are indexed so that site m occupies
bit (n_sites - m) of the index, with bit value 0 = spin up.  Everything here
is real: sigma_y only ever enters through the pair product sigma_y x sigma_y,
which is a real matrix.
"""

from __future__ import annotations

import itertools

import numpy as np

MAX_SITES = 12  # dense 2^n storage; guards accidental blowup

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
# sigma_y = i * _SIGMA_Y_IM; only even products of sigma_y appear, so the
# imaginary unit always cancels and the backend stays real.
_SIGMA_Y_IM = np.array([[0.0, -1.0], [1.0, 0.0]])
_IDENT = np.eye(2)


def _check_sites(n_sites, *sites):
    if not 1 <= n_sites <= MAX_SITES:
        raise ValueError(f"n_sites must be in 1..{MAX_SITES}, got {n_sites}")
    for s in sites:
        if not 1 <= s <= n_sites:
            raise ValueError(f"site index {s} out of range 1..{n_sites}")


def _embed(factors):
    """Kronecker product of per-site 2x2 factors, site 1 most significant."""
    out = np.array([[1.0]])
    for f in factors:
        out = np.kron(out, f)
    return out


def pauli(axis, site, n_sites):
    """Single-site Pauli operator embedded into the n_sites cluster.

    axis 'y' is rejected: the lone sigma_y is imaginary and not representable
    in the real backend (use pauli_pair for the real y-y product).
    """
    _check_sites(n_sites, site)
    if axis == "x":
        local = _SIGMA_X
    elif axis == "z":
        local = _SIGMA_Z
    elif axis == "y":
        raise ValueError("single-site sigma_y is imaginary; use pauli_pair(axis='y', ...)")
    else:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    return _embed([local if m == site else _IDENT for m in range(1, n_sites + 1)])


def pauli_pair(axis, site_a, site_b, n_sites):
    """Two-site Pauli product sigma_a^axis sigma_b^axis (real, including y-y)."""
    _check_sites(n_sites, site_a, site_b)
    if site_a == site_b:
        raise ValueError("pauli_pair requires two distinct sites")
    if axis == "x":
        local, sign = _SIGMA_X, 1.0
    elif axis == "z":
        local, sign = _SIGMA_Z, 1.0
    elif axis == "y":
        # (i A)(x)(i A) = -A(x)A with A the imaginary part pattern of sigma_y
        local, sign = _SIGMA_Y_IM, -1.0
    else:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    factors = [local if m in (site_a, site_b) else _IDENT for m in range(1, n_sites + 1)]
    return sign * _embed(factors)


def pauli_product_z(n_sites):
    """Diagonal of the all-site sigma_z product: (-1)**(number of down spins)."""
    _check_sites(n_sites)
    diag = np.array([(-1.0) ** bin(b).count("1") for b in range(2**n_sites)])
    return np.diag(diag)


def spin_flip_permutation(n_sites):
    """Index permutation of the all-site sigma_x product (flip every spin)."""
    _check_sites(n_sites)
    return np.arange(2**n_sites)[::-1]


def n_sites_of(dim):
    """Number of sites for a Hilbert-space dimension that must be a power of 2."""
    n = int(dim).bit_length() - 1
    if 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of 2")
    return n


def basis_index(down_sites, n_sites):
    """Basis index of the product state with the given sites flipped down."""
    _check_sites(n_sites, *down_sites)
    b = 0
    for m in down_sites:
        b |= 1 << (n_sites - m)
    return b


def density_from_pure(psi):
    """Rank-1 density matrix |psi><psi| of a normalized real state vector."""
    psi = np.asarray(psi, dtype=float)
    norm2 = psi @ psi
    if abs(norm2 - 1.0) > 1e-12:
        raise ValueError(f"state not normalized: |psi|^2 = {norm2!r}")
    return np.outer(psi, psi)


def partial_trace(rho, keep, n_sites=None):
    """Reduced density matrix over the sites in `keep` (ascending site order).

    Traces out the complement of `keep`; the result is 2**len(keep)
    dimensional, with trace and symmetry preserved.
    """
    rho = np.asarray(rho, dtype=float)
    if n_sites is None:
        n_sites = n_sites_of(rho.shape[0])
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must name at least one site")
    _check_sites(n_sites, *keep)
    work = rho.reshape((2,) * (2 * n_sites))
    # trace highest-numbered sites first so remaining axis offsets stay valid
    for m in sorted(set(range(1, n_sites + 1)) - set(keep), reverse=True):
        ax = m - 1
        half = work.ndim // 2
        work = np.trace(work, axis1=ax, axis2=ax + half)
    d = 2 ** len(keep)
    return work.reshape(d, d)


def expectation(rho, op):
    """Tr(rho . op) for matching dimensions."""
    rho = np.asarray(rho, dtype=float)
    op = np.asarray(op, dtype=float)
    if rho.shape != op.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {op.shape}")
    return float(np.sum(rho * op.T))


def product_state(local_states):
    """Tensor product of per-site 2-vectors, site 1 most significant."""
    out = np.array([1.0])
    for v in local_states:
        out = np.kron(out, np.asarray(v, dtype=float))
    return out


def all_site_subsets(n_sites, size):
    """All site subsets of a given size, in lexicographic order."""
    return list(itertools.combinations(range(1, n_sites + 1), size))
