"""실험 결과 파일 출력 레이어."""
from __future__ import annotations

import logging
from pathlib import Path

import pandas as pd
from pydantic import BaseModel

from eaton_bands.config import get_settings

logger = logging.getLogger(__name__)


class OutputStore:
    """궤도 CSV, 리포트 JSON 을 한 디렉터리에 모은다. 모든 쓰기는 이 객체 하나를 거친다."""

    def __init__(self, base_dir: str | Path | None = None):
        settings = get_settings()
        self.base_dir = Path(base_dir or settings.output_dir)
        self.base_dir.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        return self.base_dir / name

    def write_json(self, name: str, record: BaseModel) -> Path:
        path = self.path(name)
        path.write_text(record.model_dump_json(indent=2), encoding="utf-8")
        logger.info("JSON 저장: %s", path)
        return path

    def write_csv(self, name: str, frame: pd.DataFrame | pd.Series) -> Path:
        path = self.path(name)
        if isinstance(frame, pd.Series):
            frame = frame.reset_index()
        frame.to_csv(path, index=False)
        logger.info("CSV 저장: %s", path)
        return path

    def load_csv(self, name: str) -> pd.DataFrame:
        path = self.path(name)
        if not path.exists():
            raise FileNotFoundError(f"파일이 없습니다: {path}")
        return pd.read_csv(path)
