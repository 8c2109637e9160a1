"""격자 기저 타입과 가우스(라그랑주) 축소.

모든 연산은 입력에 대한 순수 함수이며 반환 값은 불변이다.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

from eaton_bands.models.errors import DegenerateBasis, NoConvergence, NotUnimodular
from eaton_bands.models.geometry import Vec2


TOL_DET = 1e-9
TOL_POS = 1e-9
# 수평/수직 판정 및 R++ / R-+ 경계 스냅용
AXIS_EPS = 1e-12


@dataclass(frozen=True)
class Lattice2:
    """순서 있는 기저 (b1, b2) 로 주어진 평면 격자."""

    b1: Vec2
    b2: Vec2

    @property
    def det(self) -> float:
        return self.b1.wedge(self.b2)

    def point(self, n1: int, n2: int) -> Vec2:
        return Vec2(n1 * self.b1.x + n2 * self.b2.x, n1 * self.b1.y + n2 * self.b2.y)

    def coords(self, v: Vec2) -> tuple[float, float]:
        """v = c1·b1 + c2·b2 의 실수 계수."""
        d = self.det
        return ((v.x * self.b2.y - v.y * self.b2.x) / d, (self.b1.x * v.y - self.b1.y * v.x) / d)

    def check_unimodular(self, tol: float = TOL_DET) -> None:
        d = abs(self.det)
        if d < tol:
            raise DegenerateBasis(f"기저가 퇴화됨: |det|={d:.3e}")
        if abs(d - 1.0) > tol:
            raise NotUnimodular(f"단위 격자가 아님: |det|={d:.12f}")

    def to_dict(self) -> dict[str, Any]:
        return {"basis": [list(self.b1.as_tuple()), list(self.b2.as_tuple())]}


@dataclass(frozen=True)
class PositiveBasis:
    """γ₊ ∈ R₊₊, γ₋ ∈ R₋₊ 인 격자 기저.

    생성자는 det > 0 만 확인한다. 영역 조건과 좌표 상한은 `positive_basis` 가
    보장하며 `is_positive()` 로 확인할 수 있다.
    """

    gamma_plus: Vec2
    gamma_minus: Vec2

    def __post_init__(self) -> None:
        if self.det <= 0:
            raise DegenerateBasis(f"양의 방향 기저가 아님: det={self.det:.3e}")

    @property
    def det(self) -> float:
        return self.gamma_plus.wedge(self.gamma_minus)

    def point(self, m1: int, m2: int) -> Vec2:
        gp, gm = self.gamma_plus, self.gamma_minus
        return Vec2(m1 * gp.x + m2 * gm.x, m1 * gp.y + m2 * gm.y)

    def coords(self, v: Vec2) -> tuple[float, float]:
        gp, gm = self.gamma_plus, self.gamma_minus
        d = self.det
        return ((v.x * gm.y - v.y * gm.x) / d, (gp.x * v.y - gp.y * v.x) / d)

    def is_positive(self) -> bool:
        return in_rpp(self.gamma_plus) and in_rmp(self.gamma_minus)

    def lattice(self) -> Lattice2:
        return Lattice2(self.gamma_plus, self.gamma_minus)

    def slit_bound_ok(self, R: float) -> bool:
        """0 <= γ₂± < 1/(2R): 슬릿 [-R,R]×{0} 이 P(γ₊,γ₋) 내부에 있음."""
        bound = 1.0 / (2.0 * R)
        return all(0.0 <= g.y < bound for g in (self.gamma_plus, self.gamma_minus))


def in_rpp(v: Vec2) -> bool:
    """R₊₊ = {x > 0, y >= 0}."""
    return v.x > 0 and v.y >= 0


def in_rmp(v: Vec2) -> bool:
    """R₋₊ = {x <= 0, y > 0}."""
    return v.x <= 0 and v.y > 0


def snap(v: Vec2) -> Vec2:
    scale = AXIS_EPS * (1.0 + v.norm())
    x = 0.0 if abs(v.x) <= scale else v.x
    y = 0.0 if abs(v.y) <= scale else v.y
    return Vec2(x, y)


def gauss_reduce_path(L: Lattice2, tol: float = TOL_DET) -> tuple[Lattice2, tuple[tuple[int, int], tuple[int, int]]]:
    """라그랑주 축소와 함께 정수 경로를 돌려준다.

    반환되는 ((p11, p12), (p21, p22)) 는 축소된 b1 = p11·L.b1 + p12·L.b2,
    b2 = p21·L.b1 + p22·L.b2 를 뜻한다.
    """
    if abs(L.det) < tol:
        raise DegenerateBasis(f"기저가 퇴화됨: |det|={abs(L.det):.3e}")

    u, v = L.b1, L.b2
    hu, hv = (1, 0), (0, 1)
    if u.dot(u) > v.dot(v):
        u, v, hu, hv = v, u, hv, hu

    max_it = 100_000
    for _ in range(max_it):
        mu = round(u.dot(v) / u.dot(u))
        if mu:
            v = v - u * mu
            hv = (hv[0] - mu * hu[0], hv[1] - mu * hu[1])
        if v.dot(v) < u.dot(u):
            u, v, hu, hv = v, u, hv, hu
            continue
        break
    else:
        raise NoConvergence(f"가우스 축소가 {max_it}회 안에 끝나지 않음")

    if u.wedge(v) < 0:
        v = -v
        hv = (-hv[0], -hv[1])
    return Lattice2(u, v), (hu, hv)


def gauss_reduce(L: Lattice2, tol: float = TOL_DET) -> Lattice2:
    """‖b1‖ <= ‖b2‖ <= ‖b1 ± b2‖ 인 같은 격자의 기저 (b1 은 최단 벡터)."""

    reduced, _ = gauss_reduce_path(L, tol)
    return reduced


def shortest_vector(L: Lattice2) -> Vec2:
    return gauss_reduce(L).b1



EXAMPLE54_SHIFT = (3.0 + math.sqrt(21.0)) / 6.0


def named_lattice(name: str) -> Lattice2:
    if name == "square":
        return Lattice2(Vec2(1.0, 0.0), Vec2(0.0, 1.0))
    if name == "hexagonal":
        side = math.sqrt(2.0 / math.sqrt(3.0))
        return Lattice2(Vec2(side, 0.0), Vec2(side / 2.0, side * math.sqrt(3.0) / 2.0))
    if name == "example54":
        return Lattice2(Vec2(1.0, 0.0), Vec2(EXAMPLE54_SHIFT, 1.0))
    raise ValueError(f"알 수 없는 격자 이름: {name}")


def load_lattice(source: str | dict[str, Any] | Lattice2) -> Lattice2:
    """격자 입력: Lattice2, {"basis": [[..],[..]]}, JSON 문자열 또는 약칭."""

    if isinstance(source, Lattice2):
        return source
    if isinstance(source, str):
        text = source.strip()
        if not text.startswith("{"):
            return named_lattice(text)
        source = json.loads(text)
    try:
        (b1, b2) = source["basis"]
        return Lattice2(Vec2.of(b1), Vec2.of(b2))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"격자 형식 오류: {source!r}") from exc
