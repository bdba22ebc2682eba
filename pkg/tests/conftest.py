import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gapscope import Iet

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def demo_iet() -> Iet:
    """Running-example 3-IET with breakpoints at 1/sqrt(3) and 1/sqrt(2)."""
    return Iet.new(
        ["sqrt(1/3)", "sqrt(1/2) - sqrt(1/3)", "1 - sqrt(1/2)"], (3, 2, 1)
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
