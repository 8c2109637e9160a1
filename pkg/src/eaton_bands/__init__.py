"""이튼 렌즈 배열 밴드 예측/검증 패키지 진입점."""

from eaton_bands.predictor.engine import BandPrediction, predict_band_periodic
from eaton_bands.raytrace.engine import SceneConfig, Trajectory, trace

__all__ = ["BandPrediction", "SceneConfig", "Trajectory", "predict_band_periodic", "trace"]
