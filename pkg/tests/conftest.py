import random

import pytest
from hypothesis import HealthCheck, settings

from bornjordan.sampling import seed_from_env

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(seed_from_env())
