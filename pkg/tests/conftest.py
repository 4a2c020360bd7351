import os

import pytest

from degwmi import ExactMatrix, WmiInstance, load_instance

DATA = os.path.join(os.path.dirname(__file__), "data")
GOLDEN_PATH = os.path.join(DATA, "golden_4x5.wmi")


@pytest.fixture
def golden_path():
    return GOLDEN_PATH


@pytest.fixture
def golden():
    """The 4x5 instance whose full solver trajectory is pinned in tests."""
    return load_instance(GOLDEN_PATH)


@pytest.fixture
def golden_matrices(golden):
    return golden.A, golden.B


def identity_instance(n, c=None):
    eye = ExactMatrix.identity(n)
    return WmiInstance(eye, eye.copy(), list(c) if c else [0] * n)
