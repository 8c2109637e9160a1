from __future__ import annotations

import numpy as np
import pytest

from eaton_bands.lattice.basis import EXAMPLE54_SHIFT, Lattice2, named_lattice
from eaton_bands.models.geometry import Vec2
from eaton_bands.raytrace.engine import Model, SceneConfig


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240521)


@pytest.fixture
def square() -> Lattice2:
    return named_lattice("square")


@pytest.fixture
def hexagonal() -> Lattice2:
    return named_lattice("hexagonal")


@pytest.fixture
def example54() -> Lattice2:
    return named_lattice("example54")


@pytest.fixture
def skewed() -> Lattice2:
    """짧은 벡터로 이루어진 비대칭 단위 격자."""
    return Lattice2(Vec2(1.3, 0.2), Vec2(0.4, 1.08 / 1.3))


@pytest.fixture
def flat_square() -> SceneConfig:
    return SceneConfig(named_lattice("square"), 0.25, Model.FLAT)


@pytest.fixture
def eaton_square() -> SceneConfig:
    return SceneConfig(named_lattice("square"), 0.25, Model.EATON)


@pytest.fixture
def flat_example54() -> SceneConfig:
    return SceneConfig(named_lattice("example54"), 1.0 / 3.0, Model.FLAT)


@pytest.fixture
def bounce_start() -> Vec2:
    return Vec2(0.1, 0.05)


@pytest.fixture
def shift() -> float:
    return EXAMPLE54_SHIFT


@pytest.fixture
def lens_start() -> Vec2:
    """bounce_start 와 같은 수직선 위, 모든 렌즈 원판 밖의 점."""
    return Vec2(0.1, 0.5)
