"""몬테카를로용 무작위 장면 생성."""
from __future__ import annotations

import logging
import math

import numpy as np

from eaton_bands.lattice.admissibility import is_admissible
from eaton_bands.lattice.basis import Lattice2, PositiveBasis
from eaton_bands.lattice.tiling import StripIndex
from eaton_bands.models.errors import NoConvergence
from eaton_bands.models.geometry import Vec2

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 10_000
# 대각 늘림 계수 e^s, |s| <= STRETCH
STRETCH = math.log(3.0)


def random_admissible_lattice(rng: np.random.Generator, R: float, max_attempts: int = MAX_ATTEMPTS) -> Lattice2:
    """회전 · 대각 늘림 · 전단 곱으로 단위 격자를 뽑고 R-허용이 될 때까지 기각한다."""

    if R <= 0:
        raise ValueError(f"R 은 양수여야 함: {R}")
    for attempt in range(max_attempts):
        angle = rng.uniform(0.0, math.pi)
        s = math.exp(rng.uniform(-STRETCH, STRETCH))
        shear = rng.uniform(-0.5, 0.5)
        rot = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
        m = rot @ np.diag([s, 1.0 / s]) @ np.array([[1.0, shear], [0.0, 1.0]])
        lattice = Lattice2(Vec2(float(m[0, 0]), float(m[1, 0])), Vec2(float(m[0, 1]), float(m[1, 1])))
        if is_admissible(lattice, R):
            logger.debug("허용 격자 생성: %d번째 시도", attempt + 1)
            return lattice
    raise NoConvergence(f"R={R} 허용 격자를 {max_attempts}회 안에 뽑지 못함")


def random_start(rng: np.random.Generator, B: PositiveBasis, R: float, margin: float = 1e-6) -> Vec2:
    """기본 평행사변형 P(γ₊,γ₋) 안에서 어떤 원판(반지름 R + margin)에도 들지 않는 점."""

    index = StripIndex(B.lattice())
    reach = R + margin
    for _ in range(MAX_ATTEMPTS):
        y1, y2 = rng.uniform(-0.5, 0.5, size=2)
        p = B.gamma_plus * float(y1) + B.gamma_minus * float(y2)
        near = index.box_points(p.x - reach, p.x + reach, p.y - reach, p.y + reach)
        if all(math.hypot(p.x - px, p.y - py) > reach for _, _, px, py in near):
            return p
    raise NoConvergence("원판 밖의 시작점을 찾지 못함")
