import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "ci",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_blobs(rng, n_per=20, k=3, d=2, spread=8.0):
    """Well-separated spherical blobs with ground-truth labels."""
    points, labels = [], []
    for j in range(k):
        center = rng.normal(scale=spread, size=d) + j * 4 * spread
        points.append(center + rng.normal(size=(n_per, d)))
        labels.extend([j] * n_per)
    return np.vstack(points), np.array(labels)
