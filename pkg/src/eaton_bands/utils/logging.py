"""CLI 와 작업 프로세스 공용 로깅 설정."""
from __future__ import annotations

import logging

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

# DEBUG 에서도 조용히 둘 서드파티 로거
QUIET_LOGGERS = ("matplotlib", "PIL")


def resolve_level(level: int | str) -> int:
    """"debug", "INFO" 같은 이름이나 정수를 logging 레벨로 바꾼다."""
    if isinstance(level, int):
        return level
    value = logging.getLevelName(level.strip().upper())
    if not isinstance(value, int):
        raise ValueError(f"알 수 없는 로그 레벨: {level!r}")
    return value


def setup_logging(level: int | str = logging.INFO) -> None:
    resolved = resolve_level(level)
    logging.basicConfig(level=resolved, format=LOG_FORMAT)
    logging.getLogger().setLevel(resolved)
    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(max(resolved, logging.WARNING))
