import numpy as np
import pytest


@pytest.fixture(autouse=True)
def _no_global_rng_leak():
    """Keep tests honest about seeding: the legacy global RNG is pinned so
    accidental np.random.* usage cannot make runs order-dependent."""
    state = np.random.get_state()
    np.random.seed(123456789)
    yield
    np.random.set_state(state)
