import numpy as np
import pytest

from clifft import Algebra


def mv_close(a, b, tol=1e-10):
    """Relative closeness of two multivectors (or a multivector and a scalar)."""
    if isinstance(b, (int, float)):
        b = a.algebra.scalar(b)
    scale = max(np.max(np.abs(a.coeffs)), np.max(np.abs(b.coeffs)), 1.0)
    return np.max(np.abs(a.coeffs - b.coeffs)) <= tol * scale


def field_close(a, b, tol=1e-10):
    scale = max(np.max(np.abs(a.data)), np.max(np.abs(b.data)), 1e-300)
    return np.max(np.abs(a.data - b.data)) <= tol * scale


@pytest.fixture
def cl02():
    return Algebra(0, 2)


@pytest.fixture
def cl20():
    return Algebra(2, 0)


@pytest.fixture
def cl30():
    return Algebra(3, 0)
