"""토러스 T² = [-1/2, 1/2)² 위의 유리점, SL(2,Z) 자기동형 작용과 유도 호몰로지 작용."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from eaton_bands.models.errors import ExcludedPoint
from eaton_bands.models.geometry import Vec2
from eaton_bands.sl2.group import PSL2Z, SL2Z, GenWord, Generator, _check_int64, decompose_word, inverse, mul

HALF = Fraction(1, 2)
EXCLUDED = frozenset(
    {
        (Fraction(0), Fraction(0)),
        (-HALF, -HALF),
        (-HALF, Fraction(0)),
        (Fraction(0), -HALF),
    }
)


def _wrap(v: Fraction) -> Fraction:
    """[-1/2, 1/2) 로 정확히 환원."""
    return v - math.floor(v + HALF)


@dataclass(frozen=True)
class TorusPoint:
    """T²₀ 의 유리점. 생성 시 [-1/2, 1/2)² 로 환원하고 제외된 4점을 거부한다."""

    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        x, y = _wrap(Fraction(self.x)), _wrap(Fraction(self.y))
        for v in (x, y):
            _check_int64(v.numerator, v.denominator)
        if (x, y) in EXCLUDED:
            raise ExcludedPoint(f"제외된 점: ({x}, {y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def parse(cls, text: str) -> TorusPoint:
        """"1/3,0" 형식."""
        try:
            sx, sy = text.split(",")
            return cls(Fraction(sx.strip()), Fraction(sy.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"토러스 점 형식 오류: {text!r}") from exc

    def in_s(self) -> bool:
        """S = {-1/2 <= x + y < 1/2}."""
        return -HALF <= self.x + self.y < HALF

    def to_vec(self) -> Vec2:
        return Vec2(float(self.x), float(self.y))

    def __str__(self) -> str:
        return f"{self.x},{self.y}"


def torus_act(g: SL2Z, u: TorusPoint) -> TorusPoint:
    return TorusPoint(g.a * u.x + g.b * u.y, g.c * u.x + g.d * u.y)


def _generator_step(gen: Generator, sign: int, p: TorusPoint) -> tuple[SL2Z, TorusPoint]:
    """한 단위 문자 (h±)^(±1) 의 유도 행렬과 상(image)."""

    h = gen.matrix
    if sign > 0:
        induced = h if p.in_s() else inverse(h)
        return induced, torus_act(h, p)
    h_inv = inverse(h)
    q = torus_act(h_inv, p)
    # (h⁻¹)_*(p) = [h_*(h⁻¹p)]⁻¹
    induced = h_inv if q.in_s() else h
    return induced, q


def induced_action_word(word: GenWord, u: TorusPoint) -> PSL2Z:
    """(g₁g₂)_*(u) = (g₁)_*(g₂u)·(g₂)_*(u) 를 오른쪽 문자부터 적용."""

    acc = SL2Z.identity()
    p = u
    for gen, sign in reversed(word.steps()):
        step, p = _generator_step(gen, sign, p)
        acc = mul(step, acc)
    return PSL2Z(acc)


def induced_action(g: SL2Z, u: TorusPoint) -> PSL2Z:
    """g_*(u) ∈ PSL(2,Z). −I 인수는 항등 클래스로 본다."""

    word, _ = decompose_word(g)
    return induced_action_word(word, u)
