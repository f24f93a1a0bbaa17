import numpy as np
import pytest

from ngfisk import NgFiskParams, load_builtin


@pytest.fixture(scope="session")
def dataft():
    return load_builtin("dataFT").array


@pytest.fixture
def params():
    return NgFiskParams(alpha=1.5, beta=2.0, theta=2.5, delta=0.25)


@pytest.fixture
def draw_params():
    """Factory: n parameter points from a moderate region of the default box."""

    def _draw(rng, n):
        return [
            NgFiskParams(
                alpha=float(rng.uniform(0.3, 5.0)),
                beta=float(rng.uniform(0.5, 4.0)),
                theta=float(rng.uniform(0.2, 5.0)),
                delta=float(rng.uniform(0.05, 0.9)),
            )
            for _ in range(n)
        ]

    return _draw


@pytest.fixture
def draw_data():
    def _draw(rng, n):
        return np.asarray(rng.lognormal(0.0, 0.7, size=n))

    return _draw
