"""평면 벡터 값 타입."""
from __future__ import annotations

import math
from dataclasses import dataclass

LINE_EPS = 1e-12


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"유한하지 않은 성분: ({self.x}, {self.y})")

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Vec2:
        return Vec2(-self.x, -self.y)

    def __mul__(self, scalar: float) -> Vec2:
        return Vec2(self.x * scalar, self.y * scalar)

    __rmul__ = __mul__

    def dot(self, other: Vec2) -> float:
        return self.x * other.x + self.y * other.y

    def wedge(self, other: Vec2) -> float:
        """u∧v = u.x·v.y − u.y·v.x."""
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def unit(self) -> Vec2:
        n = self.norm()
        if n == 0:
            raise ValueError("영벡터는 정규화할 수 없음")
        return Vec2(self.x / n, self.y / n)

    def as_line(self) -> Vec2:
        """단위 길이, 둘째 성분 >= 0 (둘째가 0 이면 첫째 > 0) 인 직선 방향 대표."""
        v = self.unit()
        if abs(v.y) < LINE_EPS:
            return Vec2(1.0, 0.0)
        return v if v.y > 0 else -v

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)

    @classmethod
    def of(cls, pair) -> Vec2:
        x, y = pair
        return cls(float(x), float(y))
