import numpy as np
import pytest

from vinebeam import BeamSpec

# LDPE test configuration used throughout: 25.4 mm tube, 2 mil wall,
# 10.34 kPa, E = 227 MPa.
LDPE = dict(
    radius_m=0.0127,
    thickness_m=5.08e-5,
    length_m=0.357,
    pressure_pa=10340.0,
    modulus_pa=227e6,
)


@pytest.fixture
def ldpe_beam() -> BeamSpec:
    return BeamSpec(**LDPE)


def random_beam(rng: np.random.Generator, modulus_factor: float | None = None) -> BeamSpec:
    """Physically plausible random beam for property tests."""
    radius = rng.uniform(0.008, 0.03)
    return BeamSpec(
        radius_m=radius,
        thickness_m=rng.uniform(2e-5, radius / 20.0),
        length_m=rng.uniform(0.2, 0.6),
        pressure_pa=rng.uniform(5e3, 3e4),
        modulus_pa=rng.uniform(1e8, 6e8),
        modulus_factor=rng.uniform(0.2, 1.0) if modulus_factor is None else modulus_factor,
    )
