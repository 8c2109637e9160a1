"""수직 광선의 이벤트 기반 추적 엔진.

평면 슬릿 모델 F(Λ,R) 과 원형 이튼 렌즈 배열 L(Λ,R) 두 가지를 지원한다.
광선 위치는 (정수 격자점 앵커, 작은 국소 오프셋) 으로 보관해 먼 거리에서도
부동소수점 오차가 누적되지 않게 한다.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import numpy as np
import pandas as pd

from eaton_bands.config import get_settings
from eaton_bands.lattice.admissibility import is_admissible, positive_basis, slits_disjoint
from eaton_bands.lattice.basis import TOL_POS, Lattice2, PositiveBasis
from eaton_bands.lattice.tiling import StripIndex, TileIndex, tile_index
from eaton_bands.models.errors import DegenerateBasis, InvalidScene, NotDisjoint
from eaton_bands.models.geometry import Vec2

logger = logging.getLogger(__name__)

UP = 1
DOWN = -1
# 단위 밀도에서 폭 2R 띠의 평균 간격 1/(2R) 의 4배
WINDOW_FACTOR = 4.0


class Model(str, Enum):
    FLAT = "flat"
    EATON = "eaton"


class EventKind(str, Enum):
    SLIT_HIT = "slit-hit"
    LENS_ENTRY = "lens-entry"
    LENS_EXIT = "lens-exit"
    CENTER_TURNBACK = "center-turnback"
    SINGULAR_ENDPOINT = "singular-endpoint"


@dataclass(frozen=True)
class SceneConfig:
    """격자, 반지름, 모델과 수치 허용오차."""

    lattice: Lattice2
    R: float
    model: Model = Model.FLAT
    tol_singular: float = 1e-10
    tol_pos: float = TOL_POS
    search_doublings: int = 30

    def __post_init__(self) -> None:
        object.__setattr__(self, "model", Model(self.model))
        if not self.R > 0:
            raise InvalidScene(f"R 은 양수여야 함: {self.R}")
        try:
            self.lattice.check_unimodular()
        except DegenerateBasis as exc:
            raise InvalidScene(str(exc)) from exc
        if self.model is Model.FLAT and not slits_disjoint(self.lattice, self.R):
            raise InvalidScene(f"R={self.R} 에서 슬릿이 겹침")
        if self.model is Model.EATON and not is_admissible(self.lattice, self.R):
            raise InvalidScene(f"R={self.R} 에서 렌즈 원판이 겹침 (허용 격자 아님)")

    @classmethod
    def from_settings(cls, lattice: Lattice2, R: float, model: Model | str = Model.FLAT, **overrides) -> SceneConfig:
        settings = get_settings()
        params = {
            "tol_singular": settings.tol_singular,
            "tol_pos": settings.tol_pos,
            "search_doublings": settings.search_doublings,
        }
        params.update({k: v for k, v in overrides.items() if v is not None})
        return cls(lattice, R, Model(model), **params)

    @cached_property
    def basis(self) -> PositiveBasis:
        try:
            return positive_basis(self.lattice, self.R)
        except NotDisjoint as exc:
            raise InvalidScene(str(exc)) from exc

    @cached_property
    def index(self) -> StripIndex:
        return StripIndex(self.lattice, home=self.basis)

    @property
    def window(self) -> float:
        return WINDOW_FACTOR / (2.0 * self.R)

    def with_model(self, model: Model | str) -> SceneConfig:
        return SceneConfig(self.lattice, self.R, Model(model), self.tol_singular, self.tol_pos, self.search_doublings)

    def to_dict(self) -> dict:
        return {
            "lattice": self.lattice.to_dict(),
            "R": self.R,
            "model": self.model.value,
            "tol_singular": self.tol_singular,
            "tol_pos": self.tol_pos,
            "search_doublings": self.search_doublings,
        }


@dataclass(frozen=True)
class RayState:
    """앵커 격자점(양의 기저 정수 좌표) + 오프셋, 진행 방향, 누적 시간, 시트, 타일."""

    anchor: TileIndex
    anchor_point: Vec2
    offset: Vec2
    dir: int
    time: float
    sheet: int
    tile: TileIndex

    @property
    def pos(self) -> Vec2:
        return self.anchor_point + self.offset


@dataclass(frozen=True)
class Event:
    kind: EventKind
    position: Vec2
    lattice_point: TileIndex
    time: float
    dx: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "position": list(self.position.as_tuple()),
            "lattice_point": [self.lattice_point.m1, self.lattice_point.m2],
            "time": self.time,
            "dx": self.dx,
        }


@dataclass(frozen=True)
class _Hit:
    """탐색 결과: 상대 격자점과 그까지의 수직 이동 거리."""

    event: Event
    rel: TileIndex
    travel: float


def make_state(
    c: SceneConfig,
    anchor: TileIndex,
    offset: Vec2,
    dir: int,
    time: float = 0.0,
    sheet: int = 1,
) -> RayState:
    B = c.basis
    rel, _ = tile_index(offset, B, c.tol_pos)
    return RayState(
        anchor=anchor,
        anchor_point=B.point(anchor.m1, anchor.m2),
        offset=offset,
        dir=dir,
        time=time,
        sheet=sheet,
        tile=anchor + rel,
    )


def start_state(c: SceneConfig, start: Vec2, dir: int) -> RayState:
    """절대 좌표 시작점을 (타일 중심 앵커, 오프셋) 표현으로 바꾸고 전제조건을 확인한다."""

    if dir not in (UP, DOWN):
        raise ValueError(f"방향은 +1(위) 또는 -1(아래): {dir}")
    B = c.basis
    m, _ = tile_index(start, B, c.tol_pos)
    anchor_point = B.point(m.m1, m.m2)
    offset = start - anchor_point
    R = c.R
    for _, _, px, py in c.index.box_points(offset.x - R, offset.x + R, offset.y - R, offset.y + R):
        dx, dy = offset.x - px, offset.y - py
        if c.model is Model.FLAT:
            if abs(dy) <= c.tol_pos and abs(dx) < R - c.tol_singular:
                raise InvalidScene(f"시작점 {start} 이 슬릿 내부에 있음")
        elif math.hypot(dx, dy) < R - c.tol_singular:
            raise InvalidScene(f"시작점 {start} 이 렌즈 원판 내부에 있음")
    return make_state(c, m, offset, dir)


def _nearest_ahead(s: RayState, c: SceneConfig) -> tuple[TileIndex, float, float]:
    """진행 방향으로 |λ.x − x| <= R + tol 인 가장 가까운 격자점 (앵커 기준 상대 좌표)."""

    reach = c.R + c.tol_singular
    k1, k2, px, py = c.index.first_ahead(
        s.offset.x - reach,
        s.offset.x + reach,
        s.offset.y,
        s.dir,
        c.window,
        c.search_doublings,
    )
    rel = TileIndex(*c.index.to_home(k1, k2))
    return rel, px, py


def _is_endpoint(dx: float, c: SceneConfig) -> bool:
    return abs(abs(dx) - c.R) <= c.tol_singular


def _find_flat(s: RayState, c: SceneConfig) -> _Hit:
    rel, px, py = _nearest_ahead(s, c)
    dx = s.offset.x - px
    kind = EventKind.SINGULAR_ENDPOINT if _is_endpoint(dx, c) else EventKind.SLIT_HIT
    travel = (py - s.offset.y) * s.dir
    point = s.anchor + rel
    event = Event(kind, s.pos + Vec2(0.0, travel * s.dir), point, s.time + travel, dx)
    return _Hit(event, rel, travel)


def _find_eaton(s: RayState, c: SceneConfig) -> _Hit:
    rel, px, py = _nearest_ahead(s, c)
    dx = s.offset.x - px
    point = s.anchor + rel
    if _is_endpoint(dx, c):
        # 접선: 현은 한 점으로 퇴화하므로 상호작용 없이 지나간다
        travel = (py - s.offset.y) * s.dir
        event = Event(EventKind.SINGULAR_ENDPOINT, s.pos + Vec2(0.0, travel * s.dir), point, s.time + travel, dx)
        return _Hit(event, rel, travel)
    half_chord = math.sqrt(max(c.R * c.R - dx * dx, 0.0))
    travel = max((py - s.offset.y) * s.dir - half_chord, 0.0)
    kind = EventKind.CENTER_TURNBACK if abs(dx) < c.tol_singular else EventKind.LENS_ENTRY
    event = Event(kind, s.pos + Vec2(0.0, travel * s.dir), point, s.time + travel, dx)
    return _Hit(event, rel, travel)


def next_flat_event(s: RayState, c: SceneConfig) -> Event:
    """다음 슬릿 충돌 (또는 끝점 통과) 이벤트."""
    if c.model is not Model.FLAT:
        raise InvalidScene("평면 모델 장면이 아님")
    return _find_flat(s, c).event


def next_eaton_event(s: RayState, c: SceneConfig) -> Event:
    """다음 렌즈 진입 (중심 반사, 접선 통과 포함) 이벤트."""
    if c.model is not Model.EATON:
        raise InvalidScene("이튼 모델 장면이 아님")
    return _find_eaton(s, c).event


def _advance(s: RayState, c: SceneConfig, e: Event, rel: TileIndex, new_offset: Vec2, flip: bool) -> RayState:
    anchor = s.anchor + rel
    if flip:
        return make_state(c, anchor, new_offset, -s.dir, e.time, -s.sheet)
    return make_state(c, anchor, new_offset, s.dir, e.time, s.sheet)


def reflect_flat(s: RayState, e: Event, c: SceneConfig) -> RayState:
    """슬릿 중심에 대한 점대칭: x ↦ 2λ.x − x, 방향 반전, 시트 교대."""

    rel = e.lattice_point + TileIndex(-s.anchor.m1, -s.anchor.m2)
    if e.kind is EventKind.SINGULAR_ENDPOINT:
        return _advance(s, c, e, rel, Vec2(e.dx, 0.0), flip=False)
    return _advance(s, c, e, rel, Vec2(-e.dx, 0.0), flip=True)


def reflect_eaton(s: RayState, e: Event, c: SceneConfig) -> RayState:
    """수평 현 [x_e, x_l] 중심에 대한 점대칭: 같은 높이의 반대쪽 원 위에서 반대 방향으로 나간다."""

    rel = e.lattice_point + TileIndex(-s.anchor.m1, -s.anchor.m2)
    if e.kind is EventKind.SINGULAR_ENDPOINT:
        return _advance(s, c, e, rel, Vec2(e.dx, 0.0), flip=False)
    half_chord = math.sqrt(max(c.R * c.R - e.dx * e.dx, 0.0))
    return _advance(s, c, e, rel, Vec2(-e.dx, -s.dir * half_chord), flip=True)


@dataclass
class Trajectory:
    """광선 궤도: 이벤트 기록과 sample_dt 간격의 위치 표본."""

    config: SceneConfig
    start: RayState
    end: RayState | None = None
    events: list[Event] = field(default_factory=list)
    event_count: int = 0
    singular_count: int = 0
    t_max: float = 0.0
    sample_dt: float = 1.0
    sample_time: list[float] = field(default_factory=list)
    sample_tile1: list[int] = field(default_factory=list)
    sample_tile2: list[int] = field(default_factory=list)
    sample_off_x: list[float] = field(default_factory=list)
    sample_off_y: list[float] = field(default_factory=list)
    sample_sheet: list[int] = field(default_factory=list)

    @property
    def singular(self) -> bool:
        return self.singular_count > 0

    def _record_sample(self, t: float, s: RayState) -> None:
        # s 의 오프셋을 시각 t 까지 수직으로 옮긴 뒤 타일 기준으로 다시 쓴다
        B = self.config.basis
        off = s.offset + Vec2(0.0, s.dir * (t - s.time))
        rel, _ = tile_index(off, B, self.config.tol_pos)
        local = off - B.point(rel.m1, rel.m2)
        tile = s.anchor + rel
        self.sample_time.append(t)
        self.sample_tile1.append(tile.m1)
        self.sample_tile2.append(tile.m2)
        self.sample_off_x.append(local.x)
        self.sample_off_y.append(local.y)
        self.sample_sheet.append(s.sheet)

    def tiles(self) -> np.ndarray:
        return np.column_stack([self.sample_tile1, self.sample_tile2]).astype(np.int64)

    def frame(self) -> pd.DataFrame:
        """표본 DataFrame: time, x, y, tile1, tile2, sheet."""
        B = self.config.basis
        m1 = np.asarray(self.sample_tile1, dtype=float)
        m2 = np.asarray(self.sample_tile2, dtype=float)
        x = m1 * B.gamma_plus.x + m2 * B.gamma_minus.x + np.asarray(self.sample_off_x, dtype=float)
        y = m1 * B.gamma_plus.y + m2 * B.gamma_minus.y + np.asarray(self.sample_off_y, dtype=float)
        return pd.DataFrame(
            {
                "time": np.asarray(self.sample_time, dtype=float),
                "x": x,
                "y": y,
                "tile1": np.asarray(self.sample_tile1, dtype=np.int64),
                "tile2": np.asarray(self.sample_tile2, dtype=np.int64),
                "sheet": np.asarray(self.sample_sheet, dtype=np.int64),
            }
        )

    def events_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "kind": [e.kind.value for e in self.events],
                "time": [e.time for e in self.events],
                "x": [e.position.x for e in self.events],
                "y": [e.position.y for e in self.events],
                "m1": [e.lattice_point.m1 for e in self.events],
                "m2": [e.lattice_point.m2 for e in self.events],
                "dx": [e.dx for e in self.events],
            }
        )


def trace(
    c: SceneConfig,
    start: Vec2,
    dir: int,
    t_max: float,
    sample_dt: float = 1.0,
    record_events: bool = True,
) -> Trajectory:
    """누적 수직 이동 거리가 t_max 에 이를 때까지 이벤트 탐색과 반사를 반복한다.

    끝점/접선 통과는 치명적이지 않으며 `singular_count` 로 남는다.
    `record_events=False` 면 이벤트 목록 대신 개수만 센다 (긴 궤도용).
    """
    if t_max < 0:
        raise ValueError(f"t_max 는 음수일 수 없음: {t_max}")
    if sample_dt <= 0:
        raise ValueError(f"sample_dt 는 양수여야 함: {sample_dt}")

    s = start_state(c, start, dir)
    traj = Trajectory(config=c, start=s, t_max=t_max, sample_dt=sample_dt)
    find = _find_flat if c.model is Model.FLAT else _find_eaton
    reflect = reflect_flat if c.model is Model.FLAT else reflect_eaton

    n_sample = 0
    next_sample = 0.0
    while True:
        if s.time >= t_max:
            break
        hit = find(s, c)
        t_event = hit.event.time
        t_stop = min(t_event, t_max)
        while next_sample <= t_stop:
            traj._record_sample(next_sample, s)
            n_sample += 1
            next_sample = n_sample * sample_dt
        if t_event > t_max:
            break
        e = hit.event
        new_state = reflect(s, e, c)
        traj.event_count += 1
        if e.kind is EventKind.SINGULAR_ENDPOINT:
            traj.singular_count += 1
            logger.warning("특이 궤도: t=%.6g 에서 끝점 통과 (격자점 %s)", e.time, e.lattice_point)
        if record_events:
            traj.events.append(e)
            if e.kind is EventKind.LENS_ENTRY:
                exit_pos = new_state.pos
                traj.events.append(Event(EventKind.LENS_EXIT, exit_pos, e.lattice_point, e.time, -e.dx))
        s = new_state

    while next_sample <= t_max:
        traj._record_sample(next_sample, s)
        n_sample += 1
        next_sample = n_sample * sample_dt
    offset = s.offset + Vec2(0.0, s.dir * (t_max - s.time))
    traj.end = make_state(c, s.anchor, offset, s.dir, max(t_max, s.time), s.sheet)
    logger.debug("추적 완료: 모델=%s, 이벤트 %d, 특이 %d", c.model.value, traj.event_count, traj.singular_count)
    return traj
