import numpy as np
import pytest

from crsphere.suites import field_pool


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def s3_fields():
    """Shared pool of exact random harmonic combinations on S^3."""
    return field_pool(np.random.default_rng(11), 1, 8)


@pytest.fixture(scope="session")
def s5_fields():
    """Shared pool of exact random harmonic combinations on S^5."""
    return field_pool(np.random.default_rng(12), 2, 4)
