import hypothesis
import numpy as np
import pytest

from gridsched.datasets import GeneratorSpec, generate_instance
from gridsched.model import GridInstance, Job, Resource

# numpy warm-up and slow first examples otherwise trip the default deadline.
hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.load_profile("default")


@pytest.fixture
def two_speed_instance() -> GridInstance:
    """Two resources with speeds 1 and 2, three jobs of lengths 2, 4, 6."""
    return GridInstance(
        resources=(Resource(0, 1.0), Resource(1, 2.0)),
        jobs=(Job(0, 2.0), Job(1, 4.0), Job(2, 6.0)),
    )


@pytest.fixture
def tiny_instance() -> GridInstance:
    """Seeded 2x6 instance, small enough for exhaustive checks."""
    return generate_instance(GeneratorSpec(resource_count=2, job_count=6, seed=42))


@pytest.fixture
def small_instance() -> GridInstance:
    """Seeded 3x8 instance used where a little more structure helps."""
    return generate_instance(GeneratorSpec(resource_count=3, job_count=8, seed=7))


def random_instance(rng: np.random.Generator, n: int, m: int) -> GridInstance:
    """Unseeded-range helper for property tests that build many instances."""
    return generate_instance(
        GeneratorSpec(resource_count=n, job_count=m, seed=int(rng.integers(2**32)))
    )
