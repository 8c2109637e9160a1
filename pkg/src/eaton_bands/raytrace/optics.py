"""이튼 렌즈 굴절률 분포."""
from __future__ import annotations

import math

from eaton_bands.models.errors import NonPositiveRadius


def refractive_index(r: float, R: float) -> float:
    """극좌표 반경 r 에서의 굴절률 √(2R/r − 1). 렌즈 밖(r > R)은 1."""
    if R <= 0:
        raise ValueError(f"R 은 양수여야 함: {R}")
    if r <= 0:
        raise NonPositiveRadius(f"렌즈 중심에서는 굴절률이 정의되지 않음: r={r}")
    if r > R:
        return 1.0
    return math.sqrt(2.0 * R / r - 1.0)
