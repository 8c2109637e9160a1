"""정확한 정수 SL(2,Z)/PSL(2,Z) 연산과 h± 생성원 단어.

단어 표기는 `L` = h⁺ = [[1,1],[0,1]], `R` = h⁻ = [[1,0],[1,1]] 이고 지수는 `^` 로 쓴다.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from eaton_bands.models.errors import Overflow

INT64_MAX = 2**63 - 1


def _check_int64(*values: int) -> None:
    for v in values:
        if not -INT64_MAX - 1 <= v <= INT64_MAX:
            raise Overflow(f"64비트 정수 범위 초과: {v}")


@dataclass(frozen=True)
class SL2Z:
    """행 우선 [[a, b], [c, d]], ad − bc = 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        _check_int64(self.a, self.b, self.c, self.d)
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"행렬식이 1 이 아님: {self.rows()}")

    @classmethod
    def identity(cls) -> SL2Z:
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> SL2Z:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def __matmul__(self, other: SL2Z) -> SL2Z:
        return mul(self, other)

    def __neg__(self) -> SL2Z:
        return SL2Z(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, n: int) -> SL2Z:
        base = self if n >= 0 else inverse(self)
        result = SL2Z.identity()
        n = abs(n)
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


H_PLUS = SL2Z(1, 1, 0, 1)
H_MINUS = SL2Z(1, 0, 1, 1)


def mul(g: SL2Z, h: SL2Z) -> SL2Z:
    entries = (
        g.a * h.a + g.b * h.c,
        g.a * h.b + g.b * h.d,
        g.c * h.a + g.d * h.c,
        g.c * h.b + g.d * h.d,
    )
    _check_int64(*entries)
    return SL2Z(*entries)


def inverse(g: SL2Z) -> SL2Z:
    return SL2Z(g.d, -g.b, -g.c, g.a)


@dataclass(frozen=True)
class PSL2Z:
    """±1 로 동일시한 클래스. 대표원은 (a, b, c, d) 중 첫 번째 0 아닌 성분이 양수."""

    rep: SL2Z

    def __post_init__(self) -> None:
        first = next(v for v in (self.rep.a, self.rep.b, self.rep.c, self.rep.d) if v != 0)
        if first < 0:
            object.__setattr__(self, "rep", -self.rep)

    def __matmul__(self, other: PSL2Z) -> PSL2Z:
        return PSL2Z(mul(self.rep, other.rep))

    def inverse(self) -> PSL2Z:
        return PSL2Z(inverse(self.rep))

    @classmethod
    def identity(cls) -> PSL2Z:
        return cls(SL2Z.identity())


class Generator(str, Enum):
    PLUS = "L"
    MINUS = "R"

    @property
    def matrix(self) -> SL2Z:
        return H_PLUS if self is Generator.PLUS else H_MINUS

    def power(self, k: int) -> SL2Z:
        _check_int64(k)
        return SL2Z(1, k, 0, 1) if self is Generator.PLUS else SL2Z(1, 0, k, 1)


_TOKEN = re.compile(r"\s*([LR])(?:\^(-?\d+))?")


@dataclass(frozen=True)
class GenWord:
    """(생성원, 0 아닌 지수) 의 나열. 인접한 문자는 서로 다른 생성원(정규형)."""

    letters: tuple[tuple[Generator, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _normalize(self.letters))

    def matrix(self) -> SL2Z:
        result = SL2Z.identity()
        for gen, exp in self.letters:
            result = mul(result, gen.power(exp))
        return result

    def __len__(self) -> int:
        return sum(abs(exp) for _, exp in self.letters)

    def __matmul__(self, other: GenWord) -> GenWord:
        return GenWord(self.letters + other.letters)

    def inverse(self) -> GenWord:
        return GenWord(tuple((gen, -exp) for gen, exp in reversed(self.letters)))

    def steps(self) -> list[tuple[Generator, int]]:
        """단위 지수 (생성원, ±1) 로 펼친 목록, 왼쪽부터."""
        return [(gen, 1 if exp > 0 else -1) for gen, exp in self.letters for _ in range(abs(exp))]

    def __str__(self) -> str:
        return " ".join(gen.value if exp == 1 else f"{gen.value}^{exp}" for gen, exp in self.letters)

    @classmethod
    def parse(cls, text: str) -> GenWord:
        """"R^3 L" 같은 문자열을 읽는다. 빈 문자열은 항등원."""
        letters: list[tuple[Generator, int]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if not match:
                raise ValueError(f"단어 형식 오류: {text!r} (위치 {pos})")
            exp = int(match.group(2)) if match.group(2) is not None else 1
            letters.append((Generator(match.group(1)), exp))
            pos = match.end()
        return cls(tuple(letters))


def _normalize(letters) -> tuple[tuple[Generator, int], ...]:
    out: list[tuple[Generator, int]] = []
    for gen, exp in letters:
        gen = Generator(gen)
        if out and out[-1][0] is gen:
            exp += out.pop()[1]
        if exp:
            out.append((gen, int(exp)))
    return tuple(out)


def _sign(v: int) -> int:
    return 1 if v > 0 else -1


def decompose_word(g: SL2Z) -> tuple[GenWord, int]:
    """첫 열 (a, c) 에 대한 유클리드 축소로 g = sign · word 를 찾는다.

    |a| > |c| 이면 a 를, 그렇지 않으면 (동률 포함) c 를 줄인다.
    """
    ops: list[tuple[Generator, int]] = []
    cur = g
    while cur.c != 0:
        if cur.a == 0:
            # c = ±1
            k = cur.c
            cur = mul(Generator.PLUS.power(k), cur)
            ops.append((Generator.PLUS, k))
        elif abs(cur.a) > abs(cur.c):
            q = (abs(cur.a) // abs(cur.c)) * _sign(cur.a) * _sign(cur.c)
            cur = mul(Generator.PLUS.power(-q), cur)
            ops.append((Generator.PLUS, -q))
        else:
            q = (abs(cur.c) // abs(cur.a)) * _sign(cur.a) * _sign(cur.c)
            cur = mul(Generator.MINUS.power(-q), cur)
            ops.append((Generator.MINUS, -q))

    # cur = [[s, b], [0, s]] = s · (h⁺)^(b·s)
    sign = cur.a
    shift = cur.b * sign
    if shift:
        ops.append((Generator.PLUS, -shift))

    # ops_n ⋯ ops_1 · g = sign · I  ⇒  g = sign · ops_1⁻¹ ⋯ ops_n⁻¹
    word = GenWord(tuple((gen, -exp) for gen, exp in ops))
    return word, sign
