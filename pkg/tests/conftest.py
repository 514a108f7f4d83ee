import numpy as np
import pytest

from ves import assemble, derived_constants

GAMMA_DEFAULT = 1.816
MU_DEFAULT = 0.716


@pytest.fixture(scope="session")
def params():
    return derived_constants(GAMMA_DEFAULT, MU_DEFAULT)


@pytest.fixture(scope="session")
def sol(params):
    return assemble(params, K=1.0)


@pytest.fixture(scope="session")
def sol_k2(params):
    return assemble(params, K=2.0)


@pytest.fixture(scope="session")
def param_grid():
    """The 20 x 20 sweep grid over (gamma, mu)."""
    gammas = np.linspace(1.05, 2.95, 20)
    mus = np.linspace(0.05, 0.95, 20)
    return [(float(g), float(m)) for g in gammas for m in mus]
