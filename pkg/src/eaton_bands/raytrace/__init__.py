"""수직 광선 추적."""

from eaton_bands.raytrace.engine import (
    DOWN,
    UP,
    Event,
    EventKind,
    Model,
    RayState,
    SceneConfig,
    Trajectory,
    next_eaton_event,
    next_flat_event,
    reflect_eaton,
    reflect_flat,
    start_state,
    trace,
)
from eaton_bands.raytrace.optics import refractive_index
from eaton_bands.raytrace.scenes import random_admissible_lattice, random_start

__all__ = [
    "DOWN",
    "UP",
    "Event",
    "EventKind",
    "Model",
    "RayState",
    "SceneConfig",
    "Trajectory",
    "next_eaton_event",
    "next_flat_event",
    "random_admissible_lattice",
    "random_start",
    "reflect_eaton",
    "reflect_flat",
    "refractive_index",
    "start_state",
    "trace",
]
