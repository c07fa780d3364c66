"""Shared fixtures: profile zoo, grids, and small independent oracles."""

import numpy as np
import pytest

from hartogs import (
    GridSpec,
    exp_profile,
    interior_points,
    linear_profile,
    power_profile,
    profile_from_function,
)
from hartogs.profiles import Profile


@pytest.fixture(scope="session")
def lin11():
    return linear_profile(1.0, 1.0)


@pytest.fixture(scope="session")
def lin2_05():
    return linear_profile(2.0, 0.5)


@pytest.fixture(scope="session")
def expp():
    return exp_profile(1.0)


@pytest.fixture(scope="session")
def pw2():
    return power_profile(2.0)


@pytest.fixture(scope="session")
def builtin_profiles(lin11, lin2_05, expp, pw2):
    return {"linear(1,1)": lin11, "linear(2,0.5)": lin2_05, "exp": expp, "power(2)": pw2}


@pytest.fixture(scope="session")
def wiggle():
    """Decreasing profile whose admissibility indicator changes sign.

    F = exp(-x + sin(6x)/12): log-derivative -1 + cos(6x)/2 stays negative
    (so F decreases), while (x F'/F)' swings between roughly -5 and +4.6
    on (0, 2).
    """
    return profile_from_function(
        lambda j: (-j + (j * 6.0).sin() * (1.0 / 12.0)).exp(),
        x0=float("inf"), name="wiggle")


@pytest.fixture(scope="session")
def constant_profile():
    """Constant F: the canonical non-admissible control (indicator = 0)."""
    return linear_profile(1.0, 0.0)


def make_custom(deriv_fn, x0, exact=True, name="custom"):
    return Profile(x0=x0, kind="custom", params={"name": name},
                   _deriv=deriv_fn, exact_derivatives=exact)


@pytest.fixture(scope="session")
def grid_small():
    return GridSpec(points=60, seed=11)


@pytest.fixture(scope="session")
def grid_200():
    return GridSpec(points=200, seed=5)


@pytest.fixture(scope="session")
def sample_points(builtin_profiles, grid_small):
    """60 interior points for each built-in profile at n = 2 and n = 3."""
    out = {}
    for name, prof in builtin_profiles.items():
        for n in (2, 3):
            out[name, n] = interior_points(prof, n, grid_small)
    return out


# ---------------------------------------------------------------------------
# independent oracles used across test modules
# ---------------------------------------------------------------------------

def fd1(fn, x, h=1e-4):
    """Five-point first derivative of a scalar callable (O(h^4))."""
    return (fn(x - 2 * h) - 8 * fn(x - h) + 8 * fn(x + h) - fn(x + 2 * h)) / (12 * h)


def log_b_of(profile):
    """log B(x) assembled directly from profile derivatives."""

    def log_b(x):
        f = profile.deriv(0, x)
        f1 = profile.deriv(1, x)
        f2 = profile.deriv(2, x)
        return np.log(f1 ** 2 * x - f * (f1 + f2 * x))

    return log_b


def l_coefficient_fd(profile, x, h=1e-4):
    """Oracle for L = (x (log B)')' built from nested finite differences."""
    log_b = log_b_of(profile)

    def x_dlog(x):
        return x * fd1(log_b, x, h)

    return fd1(x_dlog, x, h)
