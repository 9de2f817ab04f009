import numpy as np
import pytest

from qrgcoh.analysis import (
    ISING_DEFAULT_GRID,
    SweepSpec,
    add_derivatives,
    coherence_sweep,
    find_peak,
)

ISING_ACCEPT_STEPS = (1, 2, 3, 4, 5)
ISING_ACCEPT_SUBSYSTEMS = ((), (1, 2), (2, 3))


@pytest.fixture(scope="session")
def ising_default_sweep():
    """Full-default ising sweep shared by the scaling/peak/marginal tests.

    Steps 1-5 over the default grid with the full block and the two two-site
    marginals; by far the most expensive computation in the suite, so it runs
    once per session.
    """
    spec = SweepSpec(
        model="ising",
        grid=ISING_DEFAULT_GRID,
        rg_steps=ISING_ACCEPT_STEPS,
        subsystems=ISING_ACCEPT_SUBSYSTEMS,
    )
    return add_derivatives(coherence_sweep(spec))


def split_series(rows):
    """Group ordered sweep rows into {(rg_step, subsystem): series}."""
    series = {}
    for r in rows:
        series.setdefault((r.rg_step, r.subsystem), []).append(r)
    return series


@pytest.fixture(scope="session")
def ising_default_peaks(ising_default_sweep):
    """Derivative peaks per (step, subsystem) of the shared sweep."""
    return {key: find_peak(chunk) for key, chunk in split_series(ising_default_sweep).items()}


@pytest.fixture()
def rng():
    return np.random.default_rng(20240819)
