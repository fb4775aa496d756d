"""Shared helpers for the test suite."""

from fractions import Fraction

import numpy as np
import pytest

from lineprox import instance_from_gaps


def random_instance(rng, n, lo=1, hi=50, exact=False):
    gaps = [int(g) for g in rng.integers(lo, hi + 1, size=n - 1)]
    if exact:
        return instance_from_gaps([Fraction(g) for g in gaps])
    return instance_from_gaps([float(g) for g in gaps])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
