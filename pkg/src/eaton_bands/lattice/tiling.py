"""중심 평행사변형 타일링과 박스/띠 격자점 열거."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator

from eaton_bands.lattice.basis import AXIS_EPS, TOL_POS, Lattice2, PositiveBasis, gauss_reduce_path
from eaton_bands.models.errors import BoxTooLarge, NoHitWithinCap, SearchExhausted
from eaton_bands.models.geometry import Vec2

logger = logging.getLogger(__name__)

DEFAULT_BOX_CAP = 10**7
# 수직 주기 탐지 범위
VERTICAL_SCAN = 1e3
_RANGE_EPS = 1e-9


@dataclass(frozen=True, order=True)
class TileIndex:
    m1: int
    m2: int

    def __add__(self, other: TileIndex) -> TileIndex:
        return TileIndex(self.m1 + other.m1, self.m2 + other.m2)


def _half_open_round(c: float, tol: float) -> int:
    """c = m + y, y ∈ [-1/2, 1/2) 인 m. ±1/2 근방은 tol 안에서 위쪽 타일로 보낸다."""
    shifted = c + 0.5
    nearest = round(shifted)
    if abs(shifted - nearest) <= tol * (1.0 + abs(c)):
        return int(nearest)
    return math.floor(shifted)


def tile_index(x: Vec2, B: PositiveBasis, tol: float = TOL_POS) -> tuple[TileIndex, Vec2]:
    """x = m₁γ₊ + m₂γ₋ + y₁γ₊ + y₂γ₋, y ∈ [-1/2, 1/2)² 분해."""

    c1, c2 = B.coords(x)
    m1, m2 = _half_open_round(c1, tol), _half_open_round(c2, tol)
    return TileIndex(m1, m2), Vec2(c1 - m1, c2 - m2)


class StripIndex:
    """축소 기저 위에서 박스 안 격자점을 빠르게 훑는 인덱스.

    `home` 기저가 주어지면 찾은 점의 정수 좌표를 그 기저 좌표로 바꿔 준다.
    광선 추적의 이벤트 탐색은 매 이벤트마다 이 클래스를 호출한다.
    """

    def __init__(self, lattice: Lattice2, home: PositiveBasis | None = None):
        reduced, _ = gauss_reduce_path(lattice)
        self.reduced = reduced
        self._r = (reduced.b1.x, reduced.b1.y, reduced.b2.x, reduced.b2.y)
        d = reduced.det
        r1x, r1y, r2x, r2y = self._r
        self._inv = (r2y / d, -r2x / d, -r1y / d, r1x / d)
        self._to_home: tuple[int, int, int, int] | None = None
        if home is not None:
            u1 = home.coords(reduced.b1)
            u2 = home.coords(reduced.b2)
            self._to_home = (round(u1[0]), round(u1[1]), round(u2[0]), round(u2[1]))
        self._vertical_period: float | None | bool = False

    def to_home(self, k1: int, k2: int) -> tuple[int, int]:
        if self._to_home is None:
            return k1, k2
        a, b, c, d = self._to_home
        return k1 * a + k2 * c, k1 * b + k2 * d

    def box_points(self, xmin: float, xmax: float, ymin: float, ymax: float) -> Iterator[tuple[int, int, float, float]]:
        """닫힌 박스 안의 (k1, k2, x, y). k 는 축소 기저 좌표."""

        r1x, r1y, r2x, r2y = self._r
        i11, i12, i21, i22 = self._inv
        corners = ((xmin, ymin), (xmin, ymax), (xmax, ymin), (xmax, ymax))
        c1 = [i11 * x + i12 * y for x, y in corners]
        c2 = [i21 * x + i22 * y for x, y in corners]
        lo1, hi1 = math.floor(min(c1)), math.ceil(max(c1))
        lo2, hi2 = math.floor(min(c2)), math.ceil(max(c2))

        swap = hi1 - lo1 > hi2 - lo2
        if swap:
            ox, oy, ix, iy = r2x, r2y, r1x, r1y
            lo_o, hi_o, lo_i, hi_i = lo2, hi2, lo1, hi1
        else:
            ox, oy, ix, iy = r1x, r1y, r2x, r2y
            lo_o, hi_o, lo_i, hi_i = lo1, hi1, lo2, hi2

        for ko in range(lo_o, hi_o + 1):
            bx, by = ko * ox, ko * oy
            lo, hi = float(lo_i), float(hi_i)
            if ix != 0.0:
                a, b = (xmin - bx) / ix, (xmax - bx) / ix
                lo, hi = max(lo, min(a, b)), min(hi, max(a, b))
            if iy != 0.0:
                a, b = (ymin - by) / iy, (ymax - by) / iy
                lo, hi = max(lo, min(a, b)), min(hi, max(a, b))
            if hi < lo - _RANGE_EPS:
                continue
            for ki in range(math.ceil(lo - _RANGE_EPS), math.floor(hi + _RANGE_EPS) + 1):
                px, py = bx + ki * ix, by + ki * iy
                if xmin <= px <= xmax and ymin <= py <= ymax:
                    yield (ki, ko, px, py) if swap else (ko, ki, px, py)

    @property
    def vertical_period(self) -> float | None:
        """가장 짧은 수직 격자 벡터의 길이 (VERTICAL_SCAN 이하에 없으면 None)."""
        if self._vertical_period is False:
            eps = AXIS_EPS * (1.0 + VERTICAL_SCAN)
            best: float | None = None
            for _, _, _, py in self.box_points(-eps, eps, eps, VERTICAL_SCAN):
                if best is None or py < best:
                    best = py
            self._vertical_period = best
        return self._vertical_period  # type: ignore[return-value]

    def first_ahead(
        self,
        x_lo: float,
        x_hi: float,
        y_start: float,
        direction: int,
        window: float,
        doublings: int,
        exclude_origin: bool = False,
    ) -> tuple[int, int, float, float]:
        """띠 [x_lo, x_hi] 에서 y_start 보다 진행 방향으로 엄격히 앞선 가장 가까운 격자점.

        창 높이는 `window` 에서 시작해 두 배씩 늘어나며, 각 창은 이전 창 바로 뒤를
        이어 붙인다. 격자에 수직 주기가 있으면 한 주기를 넘게 훑고도 없을 때
        `NoHitWithinCap` 을 던진다.
        """
        period = self.vertical_period
        near = 0.0
        height = window
        for growth in range(doublings + 1):
            far = near + height
            if direction > 0:
                box = self.box_points(x_lo, x_hi, y_start + near, y_start + far)
            else:
                box = self.box_points(x_lo, x_hi, y_start - far, y_start - near)
            best: tuple[int, int, float, float] | None = None
            best_gap = math.inf
            for k1, k2, px, py in box:
                gap = (py - y_start) * direction
                if gap <= 0 or (exclude_origin and k1 == 0 and k2 == 0):
                    continue
                if gap < best_gap:
                    best, best_gap = (k1, k2, px, py), gap
            if best is not None:
                return best
            if period is not None and far > period * (1.0 + _RANGE_EPS):
                raise NoHitWithinCap(f"띠 [{x_lo:.6g}, {x_hi:.6g}] 에 격자점이 없음 (수직 주기 {period:.6g})")
            logger.debug("이벤트 탐색 창 확장 %d: %.3g", growth + 1, far)
            near = far
            height *= 2.0
        raise SearchExhausted(f"탐색 창 {doublings}회 확장 후에도 이벤트 없음")


def enumerate_in_box(
    L: Lattice2,
    xmin: float,
    xmax: float,
    ymin: float,
    ymax: float,
    cap: int = DEFAULT_BOX_CAP,
) -> list[tuple[tuple[int, int], Vec2]]:
    """닫힌 박스 안의 모든 격자점과 축소 기저 정수 좌표."""

    if not (xmin < xmax and ymin < ymax):
        raise ValueError(f"잘못된 박스: [{xmin}, {xmax}]×[{ymin}, {ymax}]")
    expected = (xmax - xmin) * (ymax - ymin) / abs(L.det)
    if expected > cap:
        raise BoxTooLarge(f"예상 점 개수 {expected:.3g} > 상한 {cap}")
    index = StripIndex(L)
    points = [((k1, k2), Vec2(px, py)) for k1, k2, px, py in index.box_points(xmin, xmax, ymin, ymax)]
    points.sort(key=lambda item: (item[1].y, item[1].x))
    return points
