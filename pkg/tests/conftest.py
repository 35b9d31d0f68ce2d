import os
import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SEED = int(os.environ.get("LEGTORS_TEST_SEED", "20240601"))


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def fields():
    from legtors.suite import fixture_fields
    return fixture_fields()
