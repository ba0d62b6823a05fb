"""Shared fixtures: the four worked contexts and their common variants."""

import random

import numpy as np
import pytest

from skewcodes import (LinearMap, field, load_preset, natural_module,
                       regular_module, verify_skew_derivation)
from skewcodes.fields import DTYPE


@pytest.fixture(scope="session")
def m2f4_inner():
    return load_preset("m2f4-inner")


@pytest.fixture(scope="session")
def f4c5_group():
    return load_preset("f4c5-group")


@pytest.fixture(scope="session")
def m2f4_diag():
    return load_preset("m2f4-diag")


@pytest.fixture(scope="session")
def fyz_quotient():
    return load_preset("fyz-quotient")


@pytest.fixture(scope="session")
def all_bundles(m2f4_inner, f4c5_group, m2f4_diag, fyz_quotient):
    return [m2f4_inner, f4c5_group, m2f4_diag, fyz_quotient]


@pytest.fixture(scope="session")
def series_bundles(m2f4_inner, f4c5_group, fyz_quotient):
    """Contexts where the power series ring exists."""
    return [m2f4_inner, f4c5_group, fyz_quotient]


@pytest.fixture(scope="session")
def laurent_bundles(m2f4_inner, f4c5_group):
    """Contexts where the Laurent ring exists."""
    return [m2f4_inner, f4c5_group]


@pytest.fixture(scope="session")
def f4c5_sigma_only(f4c5_group):
    """Same sigma as the group bundle, delta = 0."""
    a = f4c5_group.ctx.algebra
    return verify_skew_derivation(a, f4c5_group.ctx.sigma, LinearMap.zero(a))


@pytest.fixture(scope="session")
def module_a(m2f4_inner):
    """Rank-4 natural module of the restricted matrix context."""
    return natural_module(m2f4_inner.restriction)


@pytest.fixture(scope="session")
def module_b(f4c5_group):
    """Rank-5 regular module of the group algebra context."""
    return regular_module(f4c5_group.ctx.algebra)


def rand_coords(rng: random.Random, q: int, shape) -> np.ndarray:
    if isinstance(shape, int):
        shape = (1, shape)
        return _fill(rng, q, shape)[0]
    return _fill(rng, q, shape)


def _fill(rng: random.Random, q: int, shape) -> np.ndarray:
    rows, cols = shape
    arr = np.zeros((rows, cols), dtype=DTYPE)
    for i in range(rows):
        for j in range(cols):
            arr[i, j] = rng.randrange(q)
    return arr


def rand_element(rng: random.Random, algebra):
    return algebra.from_coords(rand_coords(rng, algebra.field.q, algebra.dim))
