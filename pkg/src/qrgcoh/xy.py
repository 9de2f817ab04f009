"""Anisotropic-XY block physics: Hamiltonian, closed-form ground doublet,
and the coupling recursion of the five-site block renormalization.

The five-site star block couples the center (site 1) to four neighbors:

    H = (J/4) * sum_m [ (1+gamma) X_1 X_m + (1-gamma) Y_1 Y_m ],  m = 2..5.

Its ground space is an exact doublet for every anisotropy gamma; one member
has closed-form amplitudes in the z basis (c1..c5 below), the other is its
global spin flip (c6..c10).  Renormalization maps (J, gamma) -> (J', gamma')
through quadratic combinations of those amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import spinops
from .groundstate import eigh, select_ground_xy
from .spinops import all_site_subsets, basis_index

import numpy as np

N_SITES = 5
DIM = 2**N_SITES

# Closed forms below 1e-6 lose too many digits to the alpha2 ~ 54*gamma^2
# cancellation; the flow treats smaller anisotropies as exactly zero (the
# antisymmetry of the map forces gamma'(0) = 0).
GAMMA_CLOSED_FORM_MIN = 1e-6
# Coherence evaluations route through the numeric eigensolver below this,
# so the sweep pipeline stays well-conditioned across the critical point.
GAMMA_NUMERIC_PATH = 1e-3


class GammaDomainError(ValueError):
    """Anisotropy too close to zero for the closed forms; use the numeric path."""


@dataclass(frozen=True)
class XYCouplings:
    """Exchange coupling J (> 0) and dimensionless anisotropy gamma."""

    J: float
    gamma: float

    def __post_init__(self):
        if self.J <= 0:
            raise ValueError(f"J must be positive, got {self.J}")


@dataclass(frozen=True)
class ClosedFormCoeffs:
    """Closed-form doublet amplitudes c1..c10 and the scalars alpha1, alpha2.

    c1..c5 parameterize the odd-down-spin member of the ground doublet,
    c6..c10 its spin-flip mirror; 4*c1^2 + 4*c2^2 + c3^2 + 6*c4^2 + c5^2 = 1.
    """

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    c9: float
    c10: float
    alpha1: float
    alpha2: float


def block_hamiltonian_xy(c: XYCouplings):
    """32x32 star-block Hamiltonian at couplings (J, gamma)."""
    h = np.zeros((DIM, DIM))
    for m in range(2, N_SITES + 1):
        h += (1.0 + c.gamma) * spinops.pauli_pair("x", 1, m, N_SITES)
        h += (1.0 - c.gamma) * spinops.pauli_pair("y", 1, m, N_SITES)
    return (c.J / 4.0) * h


def ground_energy_xy(c: XYCouplings):
    """Closed-form lowest block eigenvalue -(J/2) sqrt(5 + 5 gamma^2 + alpha1)."""
    a1 = math.sqrt(1.0 + 34.0 * c.gamma**2 + c.gamma**4)
    return -0.5 * c.J * math.sqrt(5.0 + 5.0 * c.gamma**2 + a1)


def closed_form_coeffs(gamma):
    """Evaluate the twelve closed-form scalars at the given anisotropy.

    Valid for |gamma| >= 1e-6 (several coefficients carry 1/gamma factors and
    alpha2 vanishes quadratically at gamma = 0); accuracy against a
    high-precision evaluation is ~1e-13 at |gamma| = 1e-3 and ~1e-6 relative
    at the 1e-6 domain edge.
    """
    if abs(gamma) < GAMMA_CLOSED_FORM_MIN:
        raise GammaDomainError(
            f"|gamma| = {abs(gamma):g} below {GAMMA_CLOSED_FORM_MIN:g}; "
            "use the numeric eigenvector path"
        )
    g = float(gamma)
    g2 = g * g
    g4 = g2 * g2
    g6 = g4 * g2
    a1 = math.sqrt(1.0 + 34.0 * g2 + g4)
    a2 = 2.0 - 2.0 * a1 + 71.0 * g2 + 17.0 * a1 * g2 + 104.0 * g4 + 3.0 * a1 * g4 + 3.0 * g6

    c1 = -(-1.0 + a1 + g2) * math.sqrt(5.0 + a1 + 5.0 * g2) / (4.0 * math.sqrt(2.0 * a2))
    c2 = -3.0 * math.sqrt(g4 * (5.0 + a1 + 5.0 * g2) / a2) / (2.0 * g * math.sqrt(2.0))
    c3 = (-1.0 + a1 + g2) / math.sqrt(2.0 * a2)
    c4 = g * (5.0 + a1 + g2) / (2.0 * math.sqrt(2.0 * a2))
    c5 = 3.0 * math.sqrt(2.0) * g2 / math.sqrt(a2)

    d1 = 1.0 + a1 + 34.0 * g2 - a1 * g2 + g4
    s = math.sqrt(g2 * (5.0 + a1 + 5.0 * g2) / d1)
    q = 4.0 * (3.0 + 2.0 * g2 + 3.0 * g4)
    c6 = s * (-2.0 - 2.0 * a1 + 17.0 * g2 - 3.0 * a1 * g2 + 3.0 * g4) / q
    c7 = -s * (1.0 + a1 - g2 + 6.0 * g4) / (q * g)
    c8 = -3.0 * s * (5.0 - a1 + 5.0 * g2) / q
    r = math.sqrt(34.0 - a1 + (1.0 + a1) / g2 + g2)
    c9 = (1.0 + a1 - g2) / (4.0 * g * r)
    c10 = 3.0 / (2.0 * r)

    return ClosedFormCoeffs(c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, a1, a2)


# Amplitude layout of the odd-down-spin doublet member: coefficient -> the
# down-site sets it multiplies (center is site 1).
def _psi0_groups():
    outer = (2, 3, 4, 5)
    return (
        [(m,) for m in outer],                                   # c1: one outer down
        [t for t in all_site_subsets(5, 3) if 1 not in t],        # c2: three outer down
        [(1,)],                                                   # c3: center down
        [(1,) + d for d in all_site_subsets(5, 2)
         if 1 not in d and d[0] >= 2],                            # c4: center + two outer
        [(1, 2, 3, 4, 5)],                                        # c5: all down
    )


def psi0_closed_form(gamma):
    """Closed-form ground state of the block (odd-down-spin doublet member).

    Normalized 32-vector; requires |gamma| >= 1e-6.  Matches the numeric
    parity-selected eigenvector up to global sign.
    """
    k = closed_form_coeffs(gamma)
    psi = np.zeros(DIM)
    for coeff, groups in zip((k.c1, k.c2, k.c3, k.c4, k.c5), _psi0_groups()):
        for downs in groups:
            psi[basis_index(downs, N_SITES)] = coeff
    return psi


def psi0_numeric(gamma, J=1.0):
    """Numeric path to the same doublet member, valid for every gamma."""
    dec = eigh(block_hamiltonian_xy(XYCouplings(J=J, gamma=gamma)))
    return select_ground_xy(dec).state


def ground_state_xy(gamma, J=1.0):
    """Ground state used by sweeps: closed form where valid, numeric otherwise."""
    if abs(gamma) < GAMMA_NUMERIC_PATH:
        return psi0_numeric(gamma, J)
    return psi0_closed_form(gamma)


def _recursion_factors(k: ClosedFormCoeffs):
    """The two quadratic amplitude combinations entering the coupling map."""
    a = 3.0 * k.c10 * k.c4 + 3.0 * k.c1 * k.c7 + k.c2 * k.c8 + k.c3 * k.c9
    b = k.c10 * k.c5 + k.c1 * k.c6 + 3.0 * k.c2 * k.c7 + 3.0 * k.c4 * k.c9
    return a, b


def rg_step_xy(c: XYCouplings):
    """One renormalization step (J, gamma) -> (J', gamma').

    gamma' = [2AB + gamma (A^2+B^2)] / [(A^2+B^2) + 2 gamma AB] with A, B the
    quadratic combinations of the doublet amplitudes; J' carries the same
    denominator.  Antisymmetric in gamma with fixed points {-1, 0, +1}.
    Below |gamma| = 1e-6 the exact symmetry value gamma' = 0 is used.
    """
    if abs(c.gamma) < GAMMA_CLOSED_FORM_MIN:
        # B(0)^2 = 3/8, A(0) = 0
        return XYCouplings(J=0.1875 * c.J, gamma=0.0)
    k = closed_form_coeffs(c.gamma)
    a, b = _recursion_factors(k)
    quad = a * a + b * b
    cross = 2.0 * a * b
    denom = quad + c.gamma * cross
    j_new = 0.5 * c.J * denom
    if j_new <= 0:
        raise ArithmeticError(f"renormalized coupling J' = {j_new!r} not positive at gamma = {c.gamma!r}")
    return XYCouplings(J=j_new, gamma=(cross + c.gamma * quad) / denom)


def rg_flow_xy(c0: XYCouplings, n):
    """Trajectory [c0, c1, ..., cn] of n renormalization steps."""
    if n < 0:
        raise ValueError("step count must be non-negative")
    steps = [c0]
    for _ in range(n):
        steps.append(rg_step_xy(steps[-1]))
    return steps


def flowed_gamma(gamma, n, J=1.0):
    """Anisotropy after n renormalization steps of the bare value."""
    return rg_flow_xy(XYCouplings(J=J, gamma=gamma), n)[-1].gamma
