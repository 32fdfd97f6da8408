"""Shared fixtures: one-time calibrations and common test fields."""
import numpy as np
import pytest


@pytest.fixture(scope="session")
def plancherel_kappa():
    """Trigger the one-time round-trip calibration and return kappa."""
    from horowave.waves import CONVENTION
    return CONVENTION.plancherel_kappa


@pytest.fixture(scope="session")
def kappa_h():
    """Trigger the one-time horocycle-measure fit and return kappa_H."""
    from horowave.moire import kappa_h
    return kappa_h()


def disk_distance(z):
    """Geodesic distance from the origin, vectorized."""
    return 2.0 * np.arctanh(np.abs(z))


def mobius_to(z, w):
    """Disk automorphism sending w to the origin."""
    return (z - w) / (1.0 - np.conj(w) * z)
