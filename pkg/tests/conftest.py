import sys
from pathlib import Path

import numpy as np
import pytest

# Flat-module layout: make the repository root importable
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from cr_calculus import HermitianMatrix  # noqa: E402
from problems import make_random_hermitian  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def kernel_matrix():
    """[[1, -1], [-1, 1]]: annihilates (1, 1), minimum 0 on the manifold"""
    return HermitianMatrix(np.array([[1.0, -1.0], [-1.0, 1.0]]))


@pytest.fixture
def random_instances():
    def build(n, count=10, seed=0):
        return [make_random_hermitian(n, seed + k).A for k in range(count)]
    return build
