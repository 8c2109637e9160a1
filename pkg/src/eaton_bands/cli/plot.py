"""궤도 SVG 그림: 슬릿/렌즈, 궤도 꺾은선, 예측 밴드 경계."""
from __future__ import annotations

import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.patches as patches  # noqa: E402
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from eaton_bands.lattice.tiling import enumerate_in_box  # noqa: E402
from eaton_bands.models.errors import BoxTooLarge  # noqa: E402
from eaton_bands.models.geometry import Vec2  # noqa: E402
from eaton_bands.raytrace.engine import EventKind, Model, Trajectory  # noqa: E402

logger = logging.getLogger(__name__)

# 그림에 그릴 장애물 수 상한
MAX_OBSTACLES = 20_000


def orbit_polyline(t: Trajectory) -> np.ndarray:
    """이벤트가 기록돼 있으면 충돌점 사이를 잇고, 아니면 표본 위치를 쓴다."""
    if not t.events:
        frame = t.frame()
        return frame[["x", "y"]].to_numpy()
    points = [t.start.pos.as_tuple()]
    for e in t.events:
        points.append(e.position.as_tuple())
        if e.kind is EventKind.SLIT_HIT:
            points.append((e.position.x - 2.0 * e.dx, e.position.y))
    if t.end is not None:
        points.append(t.end.pos.as_tuple())
    return np.asarray(points, dtype=float)


def band_edges(t: Trajectory, direction: Vec2) -> tuple[float, float]:
    """시작점 기준 direction 직선에 대한 부호 있는 횡방향 최소/최대."""
    d = direction.unit()
    frame = t.frame()
    start = t.start.pos
    signed = d.x * (frame["y"].to_numpy() - start.y) - d.y * (frame["x"].to_numpy() - start.x)
    return float(signed.min()), float(signed.max())


def draw_trajectory(t: Trajectory, path: str | Path, direction: Vec2 | None = None) -> Path:
    path = Path(path)
    poly = orbit_polyline(t)
    pad = 2.0 * t.config.R + 0.5
    xmin, ymin = poly.min(axis=0) - pad
    xmax, ymax = poly.max(axis=0) + pad

    fig, ax = plt.subplots(figsize=(8, 8))
    ax.set_aspect("equal")
    ax.set_xlim(xmin, xmax)
    ax.set_ylim(ymin, ymax)
    ax.set_title(f"{t.config.model.value} R={t.config.R:g}, t={t.t_max:g}")

    try:
        obstacles = enumerate_in_box(t.config.lattice, xmin, xmax, ymin, ymax, cap=MAX_OBSTACLES)
    except BoxTooLarge:
        logger.warning("장애물이 너무 많아 그리지 않음")
        obstacles = []
    R = t.config.R
    for _, p in obstacles:
        if t.config.model is Model.FLAT:
            ax.plot([p.x - R, p.x + R], [p.y, p.y], color="black", linewidth=1.0)
        else:
            ax.add_patch(patches.Circle((p.x, p.y), R, fill=False, color="black", linewidth=0.6))

    ax.plot(poly[:, 0], poly[:, 1], color="tab:blue", linewidth=0.6)

    if direction is not None:
        d = direction.unit()
        normal = np.array([-d.y, d.x])
        lo, hi = band_edges(t, d)
        span = max(xmax - xmin, ymax - ymin)
        s = np.array([-span, span])
        start = np.array(t.start.pos.as_tuple())
        for offset in (lo, hi):
            base = start + offset * normal
            ax.plot(base[0] + s * d.x, base[1] + s * d.y, color="tab:red", linestyle="--", linewidth=0.8)

    fig.savefig(path, format="svg")
    plt.close(fig)
    logger.info("SVG 저장: %s", path)
    return path
