"""궤도 정량 분석: 유계 범함수, 밴드 폭, 편차 지수, 평면/원형 모델 비교."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from eaton_bands.models.errors import EventMismatch, InsufficientData, ZeroCoefficients
from eaton_bands.models.geometry import Vec2
from eaton_bands.predictor.engine import BandPrediction, Method, functional_for_direction
from eaton_bands.raytrace.engine import EventKind, SceneConfig, Trajectory, trace

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 40
MIN_DECADES = 3.0


@dataclass(frozen=True)
class BandReport:
    direction_used: Vec2
    functional: tuple[float, float]
    max_functional_dev: float
    transverse_width: float
    along_displacement_series: pd.Series
    singular_flags: int

    def to_dict(self) -> dict:
        return {
            "direction_used": list(self.direction_used.as_tuple()),
            "functional": list(self.functional),
            "max_functional_dev": self.max_functional_dev,
            "transverse_width": self.transverse_width,
            "singular_flags": self.singular_flags,
        }


@dataclass(frozen=True)
class DeviationFit:
    times: np.ndarray
    displacements: np.ndarray
    slope: float
    r_squared: float

    def to_dict(self) -> dict:
        return {
            "times": self.times.tolist(),
            "displacements": self.displacements.tolist(),
            "slope": self.slope,
            "r_squared": self.r_squared,
        }


def _tile_deltas(t: Trajectory) -> tuple[np.ndarray, np.ndarray]:
    tiles = t.tiles()
    if len(tiles) == 0:
        return np.asarray(t.sample_time, dtype=float), np.zeros((0, 2), dtype=np.int64)
    start = np.array([t.start.tile.m1, t.start.tile.m2], dtype=np.int64)
    return np.asarray(t.sample_time, dtype=float), tiles - start


def bounded_functional_series(t: Trajectory, coeffs: tuple[float, float]) -> pd.Series:
    """a·Δm₁ + b·Δm₂ (시작 타일 기준) 를 표본 시각마다."""

    a, b = coeffs
    if a == 0 and b == 0:
        raise ZeroCoefficients("범함수 계수가 (0, 0)")
    times, dm = _tile_deltas(t)
    values = a * dm[:, 0] + b * dm[:, 1] if len(dm) else np.zeros(0)
    return pd.Series(values, index=pd.Index(times, name="time"), name="functional")


def _until(frame: pd.DataFrame, until: float | None) -> pd.DataFrame:
    if until is None:
        return frame
    return frame[frame["time"] <= until]


def band_report(t: Trajectory, direction: Vec2, until: float | None = None) -> BandReport:
    """direction 직선에 대한 횡방향 최대 거리와 진행 방향 변위.

    `until` 을 주면 그 시각까지의 표본만 쓴다.
    """
    d = direction.unit()
    frame = _until(t.frame(), until)
    start = t.start.pos
    dx = frame["x"].to_numpy() - start.x
    dy = frame["y"].to_numpy() - start.y
    transverse = np.abs(d.x * dy - d.y * dx)
    along = d.x * dx + d.y * dy

    _, functional = functional_for_direction(t.config.basis, d)
    series = bounded_functional_series(t, functional)
    if until is not None:
        series = series[series.index <= until]
    max_dev = float(series.abs().max()) if len(series) else 0.0

    return BandReport(
        direction_used=d,
        functional=functional,
        max_functional_dev=max_dev,
        transverse_width=float(transverse.max()) if len(transverse) else 0.0,
        along_displacement_series=pd.Series(along, index=pd.Index(frame["time"].to_numpy(), name="time"), name="along"),
        singular_flags=t.singular_count,
    )


def fit_deviation(
    times: np.ndarray,
    displacements: np.ndarray,
    t_min: float,
    t_max: float,
    points: int = DEFAULT_GRID_POINTS,
) -> DeviationFit:
    """기하 격자에서 log‖Δm‖ 대 log t 최소제곱 기울기. Δm = 0 인 점은 건너뛴다."""

    if t_min <= 0 or t_max / t_min < 10.0**MIN_DECADES * (1 - 1e-12):
        raise InsufficientData(f"시간 범위가 {MIN_DECADES:g} 자릿수보다 짧음: [{t_min:g}, {t_max:g}]")
    times = np.asarray(times, dtype=float)
    displacements = np.asarray(displacements, dtype=float)
    grid = np.geomspace(t_min, t_max, points)
    idx = np.searchsorted(times, grid, side="right") - 1
    valid = idx >= 0
    grid, idx = grid[valid], idx[valid]
    values = displacements[idx]
    positive = values > 0
    grid, values = grid[positive], values[positive]
    if len(grid) < 3:
        raise InsufficientData(f"양의 변위 표본이 {len(grid)}개뿐")

    log_t, log_d = np.log(grid), np.log(values)
    slope, intercept = np.polyfit(log_t, log_d, 1)
    residual = log_d - (slope * log_t + intercept)
    total = log_d - log_d.mean()
    ss_tot = float(total @ total)
    r_squared = 1.0 - float(residual @ residual) / ss_tot if ss_tot > 0 else 1.0
    return DeviationFit(times=grid, displacements=values, slope=float(slope), r_squared=r_squared)


def deviation_exponent(t: Trajectory, t_min: float | None = None, points: int = DEFAULT_GRID_POINTS) -> DeviationFit:
    """궤도의 호몰로지 변위 ‖Δm(t)‖ 성장 지수."""

    times, dm = _tile_deltas(t)
    norms = np.hypot(dm[:, 0], dm[:, 1]) if len(dm) else np.zeros(0)
    if t_min is None:
        t_min = max(t.sample_dt, t.t_max / 10.0**MIN_DECADES)
    return fit_deviation(times, norms, t_min, t.t_max, points)


def deviation_exponent_or_none(t: Trajectory) -> DeviationFit | None:
    """적합할 수 없는 궤도는 경고만 남기고 None."""
    try:
        return deviation_exponent(t)
    except InsufficientData as exc:
        logger.warning("편차 적합 건너뜀 (시작점 %s): %s", t.start.pos.as_tuple(), exc)
        return None


def _interactions(t: Trajectory) -> list[tuple[tuple[int, int], Vec2, Vec2, float]]:
    """(격자점, 들어온 점, 나간 점, dx) 목록. 끝점/접선 통과는 제외한다."""

    out = []
    events = t.events
    i = 0
    while i < len(events):
        e = events[i]
        key = (e.lattice_point.m1, e.lattice_point.m2)
        if e.kind is EventKind.SLIT_HIT:
            out.append((key, e.position, e.position + Vec2(-2.0 * e.dx, 0.0), e.dx))
        elif e.kind is EventKind.CENTER_TURNBACK:
            out.append((key, e.position, e.position, e.dx))
        elif e.kind is EventKind.LENS_ENTRY:
            exit_event = events[i + 1]
            out.append((key, e.position, exit_event.position, e.dx))
            i += 1
        i += 1
    return out


def compare_models(cfg_flat: SceneConfig, cfg_eaton: SceneConfig, start: Vec2, t_max: float, dir: int = 1) -> float:
    """대응하는 평면/원형 궤도 점 사이 거리의 상한 (격자점 방문 순서가 같아야 함).

    k 번째 상호작용에서 원형 궤도의 렌즈 출구 (x', y_e) 를 같은 높이에서의 평면 궤도
    점 (x, y_e) 와 (x', y_e) 에 각각 비교한다.
    """
    if cfg_flat.lattice != cfg_eaton.lattice or cfg_flat.R != cfg_eaton.R:
        raise ValueError("두 장면의 격자와 R 이 같아야 함")
    flat = _interactions(trace(cfg_flat, start, dir, t_max, sample_dt=max(t_max, 1.0)))
    round_ = _interactions(trace(cfg_eaton, start, dir, t_max, sample_dt=max(t_max, 1.0)))

    sup = 0.0
    for k, (f, r) in enumerate(zip(flat, round_)):
        if f[0] != r[0]:
            raise EventMismatch(f"{k}번째 상호작용의 격자점이 다름: 평면 {f[0]}, 원형 {r[0]}")
        y_e = r[1].y
        flat_in = Vec2(f[1].x, y_e)
        flat_out = Vec2(f[2].x, y_e)
        dist = max((r[2] - flat_in).norm(), (r[2] - flat_out).norm())
        sup = max(sup, dist)
    logger.info("모델 비교: 상호작용 %d개, 최대 거리 %.6g (2R = %.6g)", min(len(flat), len(round_)), sup, 2 * cfg_flat.R)
    return sup


def estimate_direction(t: Trajectory) -> BandPrediction:
    """표본 변위의 주축(SVD) 으로 밴드 방향을 추정한다."""

    frame = t.frame()
    start = t.start.pos
    disp = np.column_stack([frame["x"].to_numpy() - start.x, frame["y"].to_numpy() - start.y])
    disp = disp[np.hypot(disp[:, 0], disp[:, 1]) > 0]
    if len(disp) < 2:
        raise InsufficientData("방향 추정에 쓸 변위 표본이 부족")
    _, singular, vt = np.linalg.svd(disp, full_matrices=False)
    direction = Vec2(float(vt[0, 0]), float(vt[0, 1])).as_line()
    xi, functional = functional_for_direction(t.config.basis, direction)
    anisotropy = float(singular[1] / singular[0]) if singular[0] > 0 and len(singular) > 1 else math.nan
    return BandPrediction(
        direction=direction,
        xi_coeffs=xi,
        bounded_functional=functional,
        method=Method.EMPIRICAL,
        lattice=t.config.lattice,
        notes={"anisotropy": anisotropy},
    )
