"""허용성 판정과 양의 기저 알고리즘."""
from __future__ import annotations

import logging
import math

from eaton_bands.lattice.basis import AXIS_EPS, TOL_DET, TOL_POS, Lattice2, PositiveBasis, gauss_reduce, in_rmp, in_rpp, shortest_vector, snap
from eaton_bands.lattice.tiling import StripIndex
from eaton_bands.models.errors import NoConvergence, NotDisjoint
from eaton_bands.models.geometry import Vec2

logger = logging.getLogger(__name__)


def is_admissible(L: Lattice2, R: float, tol: float = TOL_POS) -> bool:
    """반지름 R 원들이 서로소 ⟺ 최단 벡터 길이 > 2R (등호는 서로소가 아님)."""

    if R <= 0:
        raise ValueError(f"R 은 양수여야 함: {R}")
    shortest = shortest_vector(L).norm()
    return shortest - 2 * R > tol * (1.0 + 2 * R)


def horizontal_period(L: Lattice2, limit: float) -> float | None:
    """길이 <= limit 인 가장 짧은 수평 격자 벡터의 길이 (없으면 None)."""

    index = StripIndex(L)
    eps = AXIS_EPS * (1.0 + limit)
    best: float | None = None
    for _, _, px, py in index.box_points(eps, limit, -eps, eps):
        if px > eps and (best is None or px < best):
            best = px
    return best


def slits_disjoint(L: Lattice2, R: float) -> bool:
    """길이 2R 의 열린 수평 슬릿들이 서로 겹치지 않는지.

    슬릿이 만날 수 있는 건 수평 격자 벡터뿐이다. 가장 짧은 수평 벡터의 길이가
    2R 을 넘으면 서로소로 본다.
    """
    if R <= 0:
        raise ValueError(f"R 은 양수여야 함: {R}")
    period = horizontal_period(L, 2 * R)
    return period is None or period > 2 * R


def _initial_positive(reduced: Lattice2) -> tuple[Vec2, Vec2] | None:
    u, v = reduced.b1, reduced.b2
    for a0, b0 in ((u, v), (v, u)):
        for sa in (1, -1):
            for sb in (1, -1):
                a, b = snap(a0 * sa), snap(b0 * sb)
                if in_rpp(a) and in_rmp(b) and a.wedge(b) > 0:
                    return a, b
    return None


def _find_initial_basis(reduced: Lattice2) -> tuple[Vec2, Vec2]:
    found = _initial_positive(reduced)
    if found:
        return found

    u, v = reduced.b1, reduced.b2
    for candidate in (Lattice2(u + v, v), Lattice2(u - v, v), Lattice2(u, v + u), Lattice2(u, v - u)):
        found = _initial_positive(candidate)
        if found:
            logger.debug("합/차 변형으로 초기 양의 기저 발견")
            return found

    vectors = [(m, n, reduced.point(m, n)) for m in range(-3, 4) for n in range(-3, 4) if (m, n) != (0, 0)]
    for m1, n1, a in vectors:
        a = snap(a)
        if not in_rpp(a):
            continue
        for m2, n2, b in vectors:
            b = snap(b)
            if in_rmp(b) and m1 * n2 - n1 * m2 == 1:
                logger.debug("완전 탐색으로 초기 양의 기저 발견")
                return a, b
    raise NoConvergence("초기 양의 기저를 찾지 못함")


def positive_basis(L: Lattice2, R: float, tol: float = TOL_DET, max_steps: int = 100_000) -> PositiveBasis:
    """0 <= γ₂⁺, γ₂⁻ < 1/(2R) 인 양의 기저를 유클리드형 반복으로 찾는다.

    한 번에 a ← a − k·b (또는 b ← b − k·a) 를 수행하며, 각 단계는 k 번의 기본
    빼기와 같고 γ₂⁺ + γ₂⁻ 를 엄격히 줄인다.
    """
    L.check_unimodular(tol)
    if not slits_disjoint(L, R):
        raise NotDisjoint(f"R={R} 에서 슬릿이 겹침")

    a, b = _find_initial_basis(gauss_reduce(L, tol))
    bound = 1.0 / (2.0 * R)

    for step in range(max_steps):
        if a.y < bound and b.y < bound:
            logger.debug("양의 기저 수렴: %d 단계", step)
            return PositiveBasis(a, b)
        if a.y >= b.y:
            k = max(1, math.floor(a.y / b.y))
            a = snap(a - b * k)
            if a.y < 0:
                a = snap(a + b)
        else:
            if a.y <= 0:
                # 수평 a 인데 b.y 가 상한 이상이면 a.x <= 2R
                raise NotDisjoint(f"수평 기저 벡터가 너무 짧음: {a}")
            k = max(1, math.floor(b.y / a.y))
            nb = snap(b - a * k)
            if nb.y <= 0:
                nb = snap(nb + a)
            b = nb
    raise NoConvergence(f"양의 기저 반복이 {max_steps}회 안에 끝나지 않음")


def max_admissible_radius() -> float:
    """단위 R-허용 격자가 존재하는 R 의 상한 1/√(2√3) (육각 격자에서 등호)."""
    return 1.0 / math.sqrt(2.0 * math.sqrt(3.0))

