"""격자 ↔ 슬릿 토러스 좌표 대응과 밴드 방향 예측 엔진."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from eaton_bands.lattice.admissibility import slits_disjoint
from eaton_bands.lattice.basis import TOL_DET, Lattice2, PositiveBasis
from eaton_bands.models.errors import DegenerateBasis, DegenerateDatum, NotDisjoint, NotFixed, NotHyperbolic, ZeroClass
from eaton_bands.models.geometry import LINE_EPS, Vec2
from eaton_bands.sl2.eigen import contracting_eigendirection, is_hyperbolic
from eaton_bands.sl2.group import PSL2Z, SL2Z
from eaton_bands.sl2.torus import TorusPoint, induced_action, torus_act

logger = logging.getLogger(__name__)

# ⟨γ₁, γ₂⟩
INTERSECTION = 2.0


class Method(str, Enum):
    PERIODIC = "periodic-theorem"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class SlitTorusDatum:
    """(u, ϑ): 표준 토러스 위 슬릿 끝점 u 와 방향 ϑ, u∧ϑ > 0."""

    u: Vec2
    theta_dir: Vec2

    def __post_init__(self) -> None:
        if not (-0.5 < self.u.x < 0.5 and -0.5 < self.u.y < 0.5) or (self.u.x == 0 and self.u.y == 0):
            raise DegenerateDatum(f"u 가 (-1/2,1/2)²∖{{0}} 밖에 있음: {self.u}")
        object.__setattr__(self, "theta_dir", self.theta_dir.unit())
        if self.wedge <= LINE_EPS:
            raise DegenerateDatum(f"u∧ϑ = {self.wedge:.3e} <= 0")

    @property
    def wedge(self) -> float:
        return self.u.wedge(self.theta_dir)


@dataclass(frozen=True)
class BandPrediction:
    direction: Vec2
    xi_coeffs: tuple[float, float]
    bounded_functional: tuple[float, float]
    method: Method
    lattice: Lattice2 | None = None
    induced: PSL2Z | None = None
    eta: tuple[tuple[float, float], tuple[float, float]] | None = None
    notes: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        a, b = self.bounded_functional
        if a == 0 and b == 0:
            raise ZeroClass("유계 범함수 계수가 (0, 0)")

    @property
    def slope(self) -> float | str:
        return slope_of(self.direction)


def slope_of(direction: Vec2) -> float | str:
    """Δy/Δx, |Δx| < 1e-12 이면 "vertical"."""
    if abs(direction.x) < LINE_EPS:
        return "vertical"
    return direction.y / direction.x


def _matrix(m: np.ndarray, v: Vec2) -> Vec2:
    return Vec2(float(m[0, 0] * v.x + m[0, 1] * v.y), float(m[1, 0] * v.x + m[1, 1] * v.y))


def _wrap(t: float) -> float:
    return t - math.floor(t + 0.5)


def lattice_to_torus(B: PositiveBasis, R: float) -> SlitTorusDatum:
    """g(γ₊) = (1,0), g(γ₋) = (0,1) 인 g 로 u = g(R,0), ϑ = g(0,1) 방향."""

    if abs(B.det) < TOL_DET:
        raise DegenerateBasis(f"기저가 퇴화됨: det={B.det:.3e}")
    basis = np.array([[B.gamma_plus.x, B.gamma_minus.x], [B.gamma_plus.y, B.gamma_minus.y]])
    g = np.linalg.inv(basis)
    u = _matrix(g, Vec2(R, 0.0))
    u = Vec2(_wrap(u.x), _wrap(u.y))
    theta = _matrix(g, Vec2(0.0, 1.0))
    return SlitTorusDatum(u, theta)


def eta_matrix(d: SlitTorusDatum, R: float) -> np.ndarray:
    """η u = (R, 0), η ϑ = (0, (u∧ϑ)/R) 를 만족하는 η ∈ SL(2,R)."""

    if R <= 0:
        raise ValueError(f"R 은 양수여야 함: {R}")
    cols = np.array([[d.u.x, d.theta_dir.x], [d.u.y, d.theta_dir.y]])
    if abs(np.linalg.det(cols)) < LINE_EPS:
        raise DegenerateDatum("u 와 ϑ 가 평행")
    target = np.array([[R, 0.0], [0.0, d.wedge / R]])
    return target @ np.linalg.inv(cols)


def torus_to_lattice(d: SlitTorusDatum, R: float) -> tuple[PositiveBasis, np.ndarray]:
    """η_{u,ϑ} 와 기저 γ₊ = η(1,0), γ₋ = η(0,1).

    반환 기저가 R₊₊ × R₋₊ 에 들어간다는 보장은 없다 (`is_positive()` 로 확인).
    """
    eta = eta_matrix(d, R)
    gp = Vec2(float(eta[0, 0]), float(eta[1, 0]))
    gm = Vec2(float(eta[0, 1]), float(eta[1, 1]))
    return PositiveBasis(gp, gm), eta


def band_direction_from_class(B: PositiveBasis, xi_coeffs: tuple[float, float]) -> Vec2:
    """v̄(Λ, ξ) = ⟨γ₂,ξ⟩γ₊ − ⟨γ₁,ξ⟩γ₋ = −2(θ₁γ₊ + θ₂γ₋), 직선 방향으로 정규화."""

    t1, t2 = xi_coeffs
    if t1 == 0 and t2 == 0:
        raise ZeroClass("ξ = 0")
    v = (B.gamma_plus * t1 + B.gamma_minus * t2) * (-INTERSECTION)
    return v.as_line()


def functional_for_direction(B: PositiveBasis, direction: Vec2) -> tuple[tuple[float, float], tuple[float, float]]:
    """기저 B 의 타일 좌표에서 direction 밴드에 대응하는 (ξ 계수, 유계 범함수).

    θ' = B⁻¹·direction 을 단위 길이로 맞춘 뒤 (a, b) = (θ'₂, −θ'₁).
    """
    c1, c2 = B.coords(direction)
    n = math.hypot(c1, c2)
    if n == 0:
        raise ZeroClass("영 방향")
    t1, t2 = c1 / n, c2 / n
    return (t1, t2), (t2, -t1)


def band_width_bound(C: float, functional: tuple[float, float], B: PositiveBasis) -> float:
    """C̄ = (C/√(a²+b²) + 1)(‖γ₊‖ + ‖γ₋‖)."""
    a, b = functional
    return (C / math.hypot(a, b) + 1.0) * (B.gamma_plus.norm() + B.gamma_minus.norm())


def predict_band_periodic(u: TorusPoint, h: SL2Z, R: float) -> BandPrediction:
    """주기적 경우: hu = u 이고 h, h_*(u) 가 모두 쌍곡일 때 밴드 방향 η_{u,ϑ}θ."""

    if not is_hyperbolic(h):
        raise NotHyperbolic(f"h 가 쌍곡이 아님: {h}")
    if torus_act(h, u) != u:
        raise NotFixed(f"h u = {torus_act(h, u)} ≠ u = {u}")
    induced = induced_action(h, u)
    if not is_hyperbolic(induced):
        raise NotHyperbolic(f"h_*(u) = {induced.rep} 가 쌍곡이 아님")

    u_vec = u.to_vec()
    vartheta = contracting_eigendirection(h)
    if u_vec.wedge(vartheta) < 0:
        vartheta = -vartheta
    datum = SlitTorusDatum(u_vec, vartheta)
    basis, eta = torus_to_lattice(datum, R)
    lattice = basis.lattice()
    if not slits_disjoint(lattice, R):
        raise NotDisjoint(f"Λ_(u,ϑ) 에서 R={R} 슬릿이 겹침")

    theta = contracting_eigendirection(induced)
    direction = _matrix(eta, theta).as_line()
    logger.info("주기 예측: h=%s, h_*(u)=%s, 기울기=%s", h, induced.rep, slope_of(direction))
    return BandPrediction(
        direction=direction,
        xi_coeffs=(theta.x, theta.y),
        bounded_functional=(theta.y, -theta.x),
        method=Method.PERIODIC,
        lattice=lattice,
        induced=induced,
        eta=((float(eta[0, 0]), float(eta[0, 1])), (float(eta[1, 0]), float(eta[1, 1]))),
    )
