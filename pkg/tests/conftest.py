import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from corebargain.game import CharacteristicFunction, ValueBounds
from corebargain.harness import rotating_pair_schedule, scenario_bounds

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def vmax_I() -> CharacteristicFunction:
    return CharacteristicFunction(3, np.array([7.0, 3, 0, 0, 0, 0, 10]))


@pytest.fixture(scope="session")
def vmax_II() -> CharacteristicFunction:
    return CharacteristicFunction(3, np.array([9.0, 5, 0, 0, 0, 0, 10]))


@pytest.fixture(scope="session")
def vmean_I() -> CharacteristicFunction:
    return CharacteristicFunction(3, np.array([5.5, 1.5, 0, 0, 0, 0, 10]))


@pytest.fixture(scope="session")
def vmean_II() -> CharacteristicFunction:
    return CharacteristicFunction(3, np.array([6.5, 2.5, 0, 0, 0, 0, 10]))


@pytest.fixture(scope="session")
def bounds_I() -> ValueBounds:
    return scenario_bounds("I")


@pytest.fixture(scope="session")
def pair_schedule():
    return rotating_pair_schedule()
