"""주기적 예시 탐색: hu = u 이고 h, h_*(u) 가 쌍곡인 (u, h) 쌍을 찾는다."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from eaton_bands.models.errors import ExcludedPoint, SearchExhausted
from eaton_bands.sl2.eigen import is_hyperbolic
from eaton_bands.sl2.group import PSL2Z, SL2Z, GenWord, Generator
from eaton_bands.sl2.torus import TorusPoint, induced_action_word, torus_act

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PeriodicCandidate:
    u: TorusPoint
    word: GenWord
    h: SL2Z
    induced: PSL2Z


def torus_points(denominator: int) -> Iterator[TorusPoint]:
    """분모가 denominator 를 나누는 T²₀ 의 모든 유리점."""
    if denominator < 2:
        raise ValueError(f"분모는 2 이상이어야 함: {denominator}")
    half = denominator // 2
    values = [Fraction(k, denominator) for k in range(-half, denominator - half)]
    for x in values:
        for y in values:
            try:
                yield TorusPoint(x, y)
            except ExcludedPoint:
                continue


def positive_words(max_length: int) -> Iterator[GenWord]:
    """양의 지수만 쓰는 길이 2..max_length 의 단어 (L, R 모두 포함)."""
    for length in range(2, max_length + 1):
        for letters in itertools.product((Generator.PLUS, Generator.MINUS), repeat=length):
            if len(set(letters)) < 2:
                continue
            yield GenWord(tuple((gen, 1) for gen in letters))


def search_periodic(denominator: int, max_length: int, limit: int | None = None) -> list[PeriodicCandidate]:
    """양의 단어 h 와 분모 denominator 의 u 중 정리가 적용되는 쌍을 모두 찾는다.

    같은 행렬을 주는 단어는 처음 것만 남긴다. 결과가 없으면 `SearchExhausted`.
    """
    points = list(torus_points(denominator))
    seen: set[SL2Z] = set()
    found: list[PeriodicCandidate] = []
    for word in positive_words(max_length):
        h = word.matrix()
        if h in seen or not is_hyperbolic(h):
            continue
        seen.add(h)
        for u in points:
            if torus_act(h, u) != u:
                continue
            try:
                induced = induced_action_word(word, u)
            except ExcludedPoint:
                continue
            if is_hyperbolic(induced):
                found.append(PeriodicCandidate(u, word, h, induced))
                if limit is not None and len(found) >= limit:
                    return found
    if not found:
        raise SearchExhausted(f"분모 {denominator}, 길이 <= {max_length} 에서 주기적 예시 없음")
    logger.info("주기적 예시 %d개 발견 (분모 %d, 길이 <= %d)", len(found), denominator, max_length)
    return found
