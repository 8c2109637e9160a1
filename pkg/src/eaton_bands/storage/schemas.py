"""JSON 출력 스키마 (pydantic)."""
from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel

from eaton_bands.analysis.engine import BandReport, DeviationFit
from eaton_bands.predictor.engine import BandPrediction
from eaton_bands.raytrace.engine import Trajectory


class LatticeRecord(BaseModel):
    basis: list[list[float]]


class PredictionRecord(BaseModel):
    direction: list[float]
    slope: float | Literal["vertical"]
    xi: list[float]
    functional: list[float]
    lattice: LatticeRecord | None = None
    method: str
    induced: list[list[int]] | None = None
    eta: list[list[float]] | None = None
    seed: int | None = None

    @classmethod
    def from_prediction(cls, p: BandPrediction, seed: int | None = None) -> PredictionRecord:
        return cls(
            direction=list(p.direction.as_tuple()),
            slope=p.slope,
            xi=list(p.xi_coeffs),
            functional=list(p.bounded_functional),
            lattice=LatticeRecord(**p.lattice.to_dict()) if p.lattice is not None else None,
            method=p.method.value,
            induced=p.induced.rep.rows() if p.induced is not None else None,
            eta=[list(row) for row in p.eta] if p.eta is not None else None,
            seed=seed,
        )


class BandReportRecord(BaseModel):
    direction_used: list[float]
    functional: list[float]
    max_functional_dev: float
    transverse_width: float
    singular_flags: int
    seed: int | None = None

    @classmethod
    def from_report(cls, r: BandReport, seed: int | None = None) -> BandReportRecord:
        return cls(**r.to_dict(), seed=seed)


class DeviationFitRecord(BaseModel):
    times: list[float]
    displacements: list[float]
    slope: float
    r_squared: float
    seed: int | None = None

    @classmethod
    def from_fit(cls, f: DeviationFit, seed: int | None = None) -> DeviationFitRecord:
        return cls(**f.to_dict(), seed=seed)


class EventRecord(BaseModel):
    kind: str
    position: list[float]
    lattice_point: list[int]
    time: float
    dx: float


class TrajectoryRecord(BaseModel):
    config: dict[str, Any]
    start: list[float]
    direction: int
    t_max: float
    sample_dt: float
    event_count: int
    singular_count: int
    singular: bool
    events: list[EventRecord]
    samples: list[list[float]]
    seed: int | None = None

    @classmethod
    def from_trajectory(cls, t: Trajectory, seed: int | None = None) -> TrajectoryRecord:
        frame = t.frame()
        return cls(
            config=t.config.to_dict(),
            start=list(t.start.pos.as_tuple()),
            direction=t.start.dir,
            t_max=t.t_max,
            sample_dt=t.sample_dt,
            event_count=t.event_count,
            singular_count=t.singular_count,
            singular=t.singular,
            events=[EventRecord(**e.to_dict()) for e in t.events],
            samples=frame[["time", "x", "y"]].to_numpy().tolist(),
            seed=seed,
        )
