"""격자 ↔ 슬릿 토러스 대응과 밴드 방향 예측."""

from eaton_bands.predictor.engine import (
    BandPrediction,
    Method,
    SlitTorusDatum,
    band_direction_from_class,
    band_width_bound,
    eta_matrix,
    functional_for_direction,
    lattice_to_torus,
    predict_band_periodic,
    slope_of,
    torus_to_lattice,
)
from eaton_bands.predictor.search import PeriodicCandidate, search_periodic

__all__ = [
    "BandPrediction",
    "Method",
    "PeriodicCandidate",
    "SlitTorusDatum",
    "band_direction_from_class",
    "band_width_bound",
    "eta_matrix",
    "functional_for_direction",
    "lattice_to_torus",
    "predict_band_periodic",
    "search_periodic",
    "slope_of",
    "torus_to_lattice",
]
