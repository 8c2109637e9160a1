"""도메인 예외 계층.

CLI는 `EatonBandsError` 하위 예외를 도메인 오류(종료 코드 1)로 취급한다.
"""
from __future__ import annotations


class EatonBandsError(RuntimeError):
    """라이브러리 전반의 도메인 오류를 표현."""


class InvalidScene(EatonBandsError):
    """장면 설정이 모델 전제조건을 만족하지 않음."""


# lattice
class DegenerateBasis(EatonBandsError):
    """기저 벡터가 (거의) 일차종속."""


class NotUnimodular(DegenerateBasis):
    """|det| 가 1 이 아님."""


class NotDisjoint(EatonBandsError):
    """슬릿이 서로 겹침."""


class NoConvergence(EatonBandsError):
    """반복 상한 내에 알고리즘이 끝나지 않음."""


class BoxTooLarge(EatonBandsError):
    """열거할 박스의 예상 점 개수가 상한을 넘음."""


# sl2
class Overflow(EatonBandsError):
    """64비트 정수 범위 초과."""


class ExcludedPoint(EatonBandsError):
    """토러스 점이 제외된 4점 집합에 떨어짐."""


class NotHyperbolic(EatonBandsError):
    """|trace| <= 2."""


# predictor
class NotFixed(EatonBandsError):
    """h u != u."""


class DegenerateDatum(EatonBandsError):
    """u 와 방향 벡터가 평행."""


class ZeroClass(EatonBandsError):
    """호몰로지 클래스 계수가 0."""


# raytrace
class SearchExhausted(EatonBandsError):
    """이벤트 탐색 창 확장 상한 초과."""


class NoHitWithinCap(EatonBandsError):
    """광선이 어떤 슬릿/렌즈에도 닿지 않음."""


class NonPositiveRadius(EatonBandsError):
    """굴절률이 정의되지 않는 반경 r <= 0."""


# analysis
class ZeroCoefficients(EatonBandsError):
    """범함수 계수가 (0, 0)."""


class InsufficientData(EatonBandsError):
    """적합에 필요한 표본이 부족."""


class EventMismatch(EatonBandsError):
    """평면/원형 모델의 격자점 방문 순서가 다름."""
