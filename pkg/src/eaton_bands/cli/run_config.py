"""--config JSON 스키마. 시뮬레이션 전에 전부 검증하고 모르는 키는 거부한다."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from eaton_bands.lattice.basis import Lattice2, load_lattice
from eaton_bands.models.geometry import Vec2
from eaton_bands.raytrace.engine import SceneConfig


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lattice: str | dict[str, Any] = "square"
    R: float = Field(0.25, gt=0)
    model: Literal["flat", "eaton"] = "flat"

    t_max: float = Field(1e3, ge=0)
    sample_dt: float = Field(1.0, gt=0)
    seed: int = Field(0, ge=0, lt=2**64)
    orbits: int = Field(1, ge=1)
    start: tuple[float, float] | None = None
    direction: Literal["up", "down"] = "up"

    u: str | None = None
    word: str | None = None
    band_direction: tuple[float, float] | None = None

    tol_singular: float | None = Field(None, gt=0)
    tol_pos: float | None = Field(None, gt=0)
    search_doublings: int | None = Field(None, ge=1)

    out: str | None = None
    format: Literal["json", "csv", "svg"] = "json"

    @field_validator("lattice")
    @classmethod
    def _lattice_parses(cls, value: str | dict[str, Any]) -> str | dict[str, Any]:
        load_lattice(value)
        return value

    @classmethod
    def load(cls, path: str | Path | None, **overrides: Any) -> RunConfig:
        """설정 파일을 읽고 None 이 아닌 명령행 값으로 덮어쓴다."""
        data: dict[str, Any] = {}
        if path is not None:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
            if not isinstance(data, dict):
                raise ValueError(f"설정 파일 최상위는 객체여야 함: {path}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(data)

    def lattice2(self) -> Lattice2:
        return load_lattice(self.lattice)

    def scene(self, model: str | None = None) -> SceneConfig:
        return SceneConfig.from_settings(
            self.lattice2(),
            self.R,
            model or self.model,
            tol_singular=self.tol_singular,
            tol_pos=self.tol_pos,
            search_doublings=self.search_doublings,
        )

    @property
    def dir(self) -> int:
        return 1 if self.direction == "up" else -1

    def start_vec(self) -> Vec2 | None:
        return Vec2.of(self.start) if self.start is not None else None
