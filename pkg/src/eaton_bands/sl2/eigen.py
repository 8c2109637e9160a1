"""쌍곡 행렬의 수축 고유방향."""
from __future__ import annotations

import numpy as np

from eaton_bands.models.errors import NotHyperbolic
from eaton_bands.models.geometry import Vec2
from eaton_bands.sl2.group import PSL2Z, SL2Z


def as_array(g: SL2Z | PSL2Z | np.ndarray | list) -> np.ndarray:
    if isinstance(g, PSL2Z):
        g = g.rep
    if isinstance(g, SL2Z):
        return np.array(g.rows(), dtype=float)
    return np.asarray(g, dtype=float).reshape(2, 2)


def is_hyperbolic(g: SL2Z | PSL2Z | np.ndarray | list) -> bool:
    if isinstance(g, PSL2Z):
        g = g.rep
    if isinstance(g, SL2Z):
        return abs(g.trace) > 2
    return abs(float(np.trace(as_array(g)))) > 2.0


def contracting_eigenpair(g: SL2Z | PSL2Z | np.ndarray | list) -> tuple[float, Vec2]:
    """|λ| < 1 인 고유값과 단위 고유벡터 (둘째 성분 양수, 0 이면 첫째 양수)."""

    if not is_hyperbolic(g):
        raise NotHyperbolic(f"쌍곡 행렬이 아님: {as_array(g).tolist()}")
    values, vectors = np.linalg.eig(as_array(g))
    i = int(np.argmin(np.abs(values)))
    lam = float(np.real(values[i]))
    v = np.real(vectors[:, i])
    return lam, Vec2(float(v[0]), float(v[1])).as_line()


def contracting_eigendirection(g: SL2Z | PSL2Z | np.ndarray | list) -> Vec2:
    return contracting_eigenpair(g)[1]
