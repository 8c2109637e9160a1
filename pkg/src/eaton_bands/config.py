"""글로벌 설정 모듈.

수치 허용오차와 탐색 상한을 환경 변수 기반으로 관리한다.
"""
from __future__ import annotations

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """시뮬레이션 공통 설정.

    - 환경 변수(`EATON_` 접두사)로 허용오차, 탐색 상한 등을 주입한다.
    - .env 파일을 사용해 로컬 실험 환경에서 값을 로드할 수 있다.
    """

    model_config = SettingsConfigDict(env_prefix="EATON_", env_file=".env", env_file_encoding="utf-8")

    tol_pos: float = Field(1e-9, description="위치 비교 상대 허용오차")
    tol_singular: float = Field(1e-10, description="슬릿 끝점/렌즈 중심 판정 허용오차")

    search_doublings: int = Field(30, description="이벤트 탐색 창을 두 배로 늘리는 최대 횟수")
    max_word_length: int = Field(64, description="SL(2,Z) 단어 분해 시 허용하는 최대 문자 수")

    workers: int = Field(1, description="몬테카를로 궤도 병렬 프로세스 수")
    log_level: str = Field("INFO", description="로깅 레벨")
    output_dir: str = Field("out", description="궤도/리포트 출력 경로")


def get_settings() -> Settings:
    """호출할 때마다 환경 변수와 .env 를 다시 읽어 새 Settings 를 만든다."""

    return Settings()
