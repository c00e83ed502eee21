import os

import pytest
from hypothesis import HealthCheck, settings

from mrlrc.code import make_code
from mrlrc.construction import construct

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def small_parity():
    return construct(8, 4, 2, 1, 2)


@pytest.fixture(scope="session")
def small_code(small_parity):
    return make_code(small_parity)
