"""궤도 정량 분석."""

from eaton_bands.analysis.batch import OrbitJob, run_orbits, run_orbits_async
from eaton_bands.analysis.engine import (
    BandReport,
    DeviationFit,
    band_report,
    bounded_functional_series,
    compare_models,
    deviation_exponent,
    deviation_exponent_or_none,
    estimate_direction,
    fit_deviation,
)

__all__ = [
    "BandReport",
    "DeviationFit",
    "OrbitJob",
    "band_report",
    "bounded_functional_series",
    "compare_models",
    "deviation_exponent",
    "deviation_exponent_or_none",
    "estimate_direction",
    "fit_deviation",
    "run_orbits",
    "run_orbits_async",
]
