import functools
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from weakdiscord import states  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def werner_08():
    return states.werner(0.8)


@pytest.fixture(scope="session")
def bell_pure():
    return states.bell_diagonal(1, -1, 1)


def density_matrices(dim):
    """Hypothesis strategy for full-rank-ish random density operators."""
    return st.integers(min_value=0, max_value=2**32 - 1).map(
        lambda seed: states.random_density(dim, np.random.default_rng(seed))
    )


def hermitian_matrices(dim):
    def build(seed):
        g = np.random.default_rng(seed).normal(size=(2, dim, dim))
        m = g[0] + 1j * g[1]
        return m + m.conj().T
    return st.integers(min_value=0, max_value=2**32 - 1).map(build)



def _mixed_reference():
    plus = np.full((2, 2), 0.5)
    return 0.7 * oracles.bell_diagonal(0.3, -0.5, 0.1) + 0.3 * np.kron(np.diag([1.0, 0.0]), plus)


ORACLE_STATES = {
    "werner-0.8": lambda: oracles.werner(0.8),
    "bd-1,-1,1": lambda: oracles.bell_diagonal(1, -1, 1),
    "bd-0.3,-0.5,0.1": lambda: oracles.bell_diagonal(0.3, -0.5, 0.1),
    "mixed": _mixed_reference,
}


@functools.cache
def dense_oracle(name, quantity, x=None):
    """Brute-force value of ``quantity`` for a named reference state, cached per session."""
    rho = ORACLE_STATES[name]()
    if quantity == "mi":
        return float(oracles.mutual_info(rho))
    if quantity == "qd":
        return oracles.qd(rho)
    return getattr(oracles, quantity)(rho, x)


@functools.cache
def default_sweep(state, pathway):
    """Rows of a full default-grid sweep, shared by every test that needs them."""
    from weakdiscord.sweep import StateSpec, SweepConfig, run_sweep

    return tuple(run_sweep(SweepConfig(StateSpec.parse(state), pathway=pathway)))
