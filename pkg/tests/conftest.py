"""Shared fixtures: named example algebras and seeded generators."""

from __future__ import annotations

import numpy as np
import pytest

from quasisolvable_spectra import MatrixLieAlgebra, ToleranceConfig, verify_algebra


def unit(d: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((d, d))
    m[i, j] = 1.0
    return m


@pytest.fixture
def cfg() -> ToleranceConfig:
    return ToleranceConfig()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def solvable_2d(cfg: ToleranceConfig) -> MatrixLieAlgebra:
    """span{A = diag(1, 0), B = E12} with [A, B] = B."""
    return verify_algebra([np.diag([1.0, 0.0]), unit(2, 0, 1)], cfg, names=["A", "B"])


@pytest.fixture
def heisenberg(cfg: ToleranceConfig) -> MatrixLieAlgebra:
    """span{X = E12, Y = E23, Z = E13} with [X, Y] = Z."""
    return verify_algebra([unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)], cfg, names=["X", "Y", "Z"])


@pytest.fixture
def diagonal_pair(cfg: ToleranceConfig) -> MatrixLieAlgebra:
    """span{diag(1, 0, 2), diag(0, 1, -1)}."""
    return verify_algebra(
        [np.diag([1.0, 0.0, 2.0]), np.diag([0.0, 1.0, -1.0])], cfg, names=["D1", "D2"]
    )


@pytest.fixture
def single_diag(cfg: ToleranceConfig) -> MatrixLieAlgebra:
    """span{diag(1, 2)}."""
    return verify_algebra([np.diag([1.0, 2.0])], cfg, names=["T"])
