"""Shared fixtures: canonical parameter sets and seeded random draws."""

import numpy as np
import pytest

from socgame import Params, validate

# canonical instances used throughout the suite
SET_A = Params(alpha=2, beta=1, gamma=1, delta=1, epsilon=2, eta=0.5)
SET_B = Params(alpha=2, beta=-2, gamma=1.5, delta=1, epsilon=1, eta=0.2)
SET_C = Params(alpha=2, beta=-0.5, gamma=1.2, delta=1, epsilon=2, eta=0.3)
# Set A with gamma raised onto the epsilon boundary: degenerate on purpose
SET_D = Params(alpha=2, beta=1, gamma=2, delta=1, epsilon=2, eta=0.5)

MARGIN = 1e-4  # how far random draws must sit from every strictness boundary


@pytest.fixture
def set_a() -> Params:
    return SET_A


@pytest.fixture
def set_b() -> Params:
    return SET_B


@pytest.fixture
def set_c() -> Params:
    return SET_C


@pytest.fixture
def set_d() -> Params:
    return SET_D


def admissible(p: Params, margin: float = MARGIN) -> bool:
    """Valid with every classifying quantity at least ``margin`` from zero."""
    v = validate(p, tol=margin)
    return v.positivity_ok and v.nondominance_ok and not v.degenerate_quantities


def draw_params(rng: np.random.Generator, branch: str, margin: float = MARGIN) -> Params:
    """Rejection-sample one admissible Params on the requested sign branch."""
    while True:
        alpha = rng.uniform(0.3, 3.0)
        delta = rng.uniform(0.1, 1.5)
        epsilon = rng.uniform(0.3, 3.0)
        eta = rng.uniform(0.05, 1.0)
        if branch == "B-plus":
            beta = rng.uniform(-delta, 2.5)
            gamma = rng.uniform(-1.5, epsilon)
        elif branch == "B-minus":
            beta = rng.uniform(-3.0, -delta)
            gamma = rng.uniform(epsilon, epsilon + 2.0)
        else:
            raise ValueError(f"unknown branch {branch!r}")
        p = Params(alpha=alpha, beta=beta, gamma=gamma, delta=delta,
                   epsilon=epsilon, eta=eta)
        v = validate(p, tol=margin)
        if (v.positivity_ok and v.nondominance_ok
                and not v.degenerate_quantities and v.branch == branch):
            return p


def draw_simplex(rng: np.random.Generator) -> tuple[float, float, float, float]:
    """One uniform point on the open 3-simplex."""
    x = rng.standard_exponential(4)
    x /= x.sum()
    return tuple(x)


@pytest.fixture
def draw():
    return draw_params


@pytest.fixture
def simplex_point():
    return draw_simplex
