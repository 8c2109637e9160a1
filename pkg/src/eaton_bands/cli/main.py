"""eaton-bands 명령행 진입점.

종료 코드: 0 성공, 1 도메인 오류, 2 사용법/입력 형식 오류.
단어 문자 표기는 `L` = h⁺ = [[1,1],[0,1]], `R` = h⁻ = [[1,0],[1,1]] 이다.
"""
from __future__ import annotations

import argparse
import json
import logging
import statistics
import sys
from fractions import Fraction
from typing import Any, Sequence

import numpy as np
from pydantic import BaseModel, ValidationError

from eaton_bands.acceptance import AcceptanceRunner
from eaton_bands.analysis.batch import OrbitJob, run_orbits
from eaton_bands.analysis.engine import band_report, compare_models, deviation_exponent_or_none, estimate_direction
from eaton_bands.cli.plot import draw_trajectory
from eaton_bands.cli.run_config import RunConfig
from eaton_bands.config import get_settings
from eaton_bands.lattice.admissibility import is_admissible, max_admissible_radius, positive_basis, slits_disjoint
from eaton_bands.lattice.basis import gauss_reduce, shortest_vector
from eaton_bands.models.errors import EatonBandsError, InsufficientData
from eaton_bands.models.geometry import Vec2
from eaton_bands.predictor.engine import BandPrediction, predict_band_periodic
from eaton_bands.predictor.search import search_periodic
from eaton_bands.raytrace.engine import Trajectory, trace
from eaton_bands.raytrace.scenes import random_start
from eaton_bands.sl2.group import SL2Z, GenWord
from eaton_bands.sl2.torus import TorusPoint
from eaton_bands.storage.files import OutputStore
from eaton_bands.storage.schemas import BandReportRecord, DeviationFitRecord, PredictionRecord, TrajectoryRecord
from eaton_bands.utils.logging import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    """명령행 값 조합 오류."""


def _real(text: str) -> float:
    """"1/3" 같은 유리수 표기도 받는 실수."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"실수 형식 오류: {text!r}") from exc


def _pair(text: str) -> tuple[float, float]:
    try:
        x, y = (_real(v) for v in text.split(","))
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise argparse.ArgumentTypeError(f"'x,y' 형식 오류: {text!r}") from exc
    return x, y


def _emit(payload: BaseModel | dict[str, Any]) -> None:
    if isinstance(payload, BaseModel):
        print(payload.model_dump_json(indent=2))
    else:
        print(json.dumps(payload, indent=2, ensure_ascii=False))


def _matrix(args: argparse.Namespace) -> SL2Z:
    if args.word is not None and args.matrix is not None:
        raise UsageError("--word 와 --matrix 중 하나만 지정")
    if args.matrix is not None:
        try:
            a, b, c, d = (int(v) for v in args.matrix.split(","))
        except ValueError as exc:
            raise UsageError(f"--matrix 는 'a,b,c,d' 정수 4개: {args.matrix!r}") from exc
        return SL2Z(a, b, c, d)
    if args.word is None:
        raise UsageError("--word 또는 --matrix 가 필요")
    word = GenWord.parse(args.word)
    if len(word) > get_settings().max_word_length:
        raise UsageError(f"단어가 너무 김: {len(word)} 문자")
    return word.matrix()


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.load(
        args.config,
        lattice=getattr(args, "lattice", None),
        R=getattr(args, "R", None),
        model=getattr(args, "model", None),
        t_max=getattr(args, "t_max", None),
        sample_dt=getattr(args, "sample_dt", None),
        seed=args.seed,
        orbits=getattr(args, "orbits", None),
        start=getattr(args, "start", None),
        direction=getattr(args, "dir", None),
        u=getattr(args, "u", None),
        word=getattr(args, "word", None),
        band_direction=getattr(args, "band_direction", None),
        tol_singular=args.tol_singular,
        out=args.out,
        format=args.format,
    )


def _start(cfg: RunConfig, rng: np.random.Generator, scene) -> Vec2:
    start = cfg.start_vec()
    return start if start is not None else random_start(rng, scene.basis, scene.R)


def _prediction(cfg: RunConfig) -> BandPrediction | None:
    if cfg.u is None or cfg.word is None:
        return None
    return predict_band_periodic(TorusPoint.parse(cfg.u), GenWord.parse(cfg.word).matrix(), cfg.R)


def _direction(cfg: RunConfig, t: Trajectory) -> tuple[Vec2, str]:
    if cfg.band_direction is not None:
        return Vec2.of(cfg.band_direction).as_line(), "given"
    prediction = _prediction(cfg)
    if prediction is not None:
        return prediction.direction, prediction.method.value
    estimate = estimate_direction(t)
    return estimate.direction, estimate.method.value


def cmd_admissible(args: argparse.Namespace) -> int:
    cfg = _config(args)
    lattice = cfg.lattice2()
    admissible = is_admissible(lattice, cfg.R)
    shortest = shortest_vector(lattice)
    _emit(
        {
            "lattice": lattice.to_dict(),
            "R": cfg.R,
            "admissible": admissible,
            "shortest_vector": list(shortest.as_tuple()),
            "shortest_length": shortest.norm(),
            "slits_disjoint": slits_disjoint(lattice, cfg.R),
            "max_admissible_radius": max_admissible_radius(),
            "seed": cfg.seed,
        }
    )
    return EXIT_OK if admissible else EXIT_DOMAIN


def cmd_reduce_basis(args: argparse.Namespace) -> int:
    cfg = _config(args)
    lattice = cfg.lattice2()
    reduced = gauss_reduce(lattice)
    B = positive_basis(lattice, cfg.R)
    _emit(
        {
            "reduced": reduced.to_dict(),
            "gamma_plus": list(B.gamma_plus.as_tuple()),
            "gamma_minus": list(B.gamma_minus.as_tuple()),
            "det": B.det,
            "seed": cfg.seed,
        }
    )
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    u = TorusPoint.parse(args.u)
    h = _matrix(args)
    prediction = predict_band_periodic(u, h, args.R)
    record = PredictionRecord.from_prediction(prediction, seed=args.seed)
    if args.out:
        OutputStore(args.out).write_json("prediction.json", record)
    _emit(record)
    return EXIT_OK


def cmd_trace(args: argparse.Namespace) -> int:
    cfg = _config(args)
    scene = cfg.scene()
    rng = np.random.default_rng(cfg.seed)
    t = trace(scene, _start(cfg, rng, scene), cfg.dir, cfg.t_max, cfg.sample_dt)
    store = OutputStore(cfg.out)
    if cfg.format == "csv":
        store.write_csv("trajectory.csv", t.frame())
    elif cfg.format == "svg":
        prediction = _prediction(cfg)
        draw_trajectory(t, store.path("trajectory.svg"), prediction.direction if prediction else None)
    else:
        store.write_json("trajectory.json", TrajectoryRecord.from_trajectory(t, seed=cfg.seed))
    _emit(
        {
            "events": t.event_count,
            "singular": t.singular,
            "end": list(t.end.pos.as_tuple()) if t.end else None,
            "seed": cfg.seed,
            "out": str(store.base_dir),
        }
    )
    return EXIT_OK


def cmd_band_report(args: argparse.Namespace) -> int:
    cfg = _config(args)
    scene = cfg.scene()
    rng = np.random.default_rng(cfg.seed)
    t = trace(scene, _start(cfg, rng, scene), cfg.dir, cfg.t_max, cfg.sample_dt)
    direction, source = _direction(cfg, t)
    report = band_report(t, direction)
    record = BandReportRecord.from_report(report, seed=cfg.seed)
    if cfg.out:
        store = OutputStore(cfg.out)
        store.write_json("band_report.json", record)
        store.write_csv("along_displacement.csv", report.along_displacement_series)
    payload = record.model_dump()
    payload["direction_source"] = source
    _emit(payload)
    return EXIT_OK


def cmd_deviation(args: argparse.Namespace) -> int:
    cfg = _config(args)
    scene = cfg.scene()
    rng = np.random.default_rng(cfg.seed)
    jobs = [OrbitJob(scene, _start(cfg, rng, scene), cfg.dir, cfg.t_max, cfg.sample_dt) for _ in range(cfg.orbits)]
    results = run_orbits(jobs, get_settings().workers, deviation_exponent_or_none)
    fits = [f for f in results if f is not None]
    skipped = len(results) - len(fits)
    if not fits:
        raise InsufficientData(f"궤도 {len(results)}개 모두 편차 적합 불가")
    if cfg.out:
        store = OutputStore(cfg.out)
        for k, fit in enumerate(fits):
            store.write_json(f"deviation_{k:03d}.json", DeviationFitRecord.from_fit(fit, seed=cfg.seed))
    slopes = [f.slope for f in fits]
    _emit(
        {
            "slopes": slopes,
            "median_slope": statistics.median(slopes),
            "r_squared": [f.r_squared for f in fits],
            "skipped": skipped,
            "seed": cfg.seed,
        }
    )
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = _config(args)
    flat = cfg.scene("flat")
    eaton = flat.with_model("eaton")
    rng = np.random.default_rng(cfg.seed)
    start = _start(cfg, rng, eaton)
    sup = compare_models(flat, eaton, start, cfg.t_max, cfg.dir)
    _emit(
        {
            "start": list(start.as_tuple()),
            "sup_distance": sup,
            "two_R": 2 * cfg.R,
            "within_bound": sup <= 2 * cfg.R,
            "seed": cfg.seed,
        }
    )
    return EXIT_OK if sup <= 2 * cfg.R else EXIT_DOMAIN


def cmd_search_periodic(args: argparse.Namespace) -> int:
    candidates = search_periodic(args.denominator, args.max_length, args.limit)
    _emit(
        {
            "candidates": [
                {"u": str(c.u), "word": str(c.word), "h": c.h.rows(), "induced": c.induced.rep.rows()}
                for c in candidates
            ],
            "seed": args.seed,
        }
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    scale = 0.01 if args.quick else args.scale
    runner = AcceptanceRunner(seed=args.seed, scale=scale, workers=get_settings().workers)
    results = runner.run(args.suite)
    print(f"seed={args.seed} scale={scale:g}")
    for result in results:
        print(result.line())
    return EXIT_OK if runner.passed else EXIT_DOMAIN


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="RunConfig JSON 파일")
    common.add_argument("--seed", type=int, default=0, help="난수 시드 (출력에 항상 기록)")
    common.add_argument("--out", help="출력 디렉터리")
    common.add_argument("--tol-singular", type=_real, help="끝점/중심 판정 허용오차")
    common.add_argument("--format", choices=["json", "csv", "svg"], help="trace 출력 형식")
    common.add_argument("--log-level", default=None, help="로깅 레벨 (기본: 설정값)")
    return common


def _scene_args(p: argparse.ArgumentParser, dynamic: bool = True) -> None:
    p.add_argument("--lattice", help='"square", "hexagonal", "example54" 또는 {"basis": [[..],[..]]}')
    p.add_argument("--R", type=_real, help="슬릿 반길이 / 렌즈 반지름")
    if not dynamic:
        return
    p.add_argument("--model", choices=["flat", "eaton"])
    p.add_argument("--start", type=_pair, help="시작점 x,y (없으면 시드로 무작위)")
    p.add_argument("--dir", choices=["up", "down"])
    p.add_argument("--t-max", dest="t_max", type=_real)
    p.add_argument("--sample-dt", dest="sample_dt", type=_real)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="eaton-bands", description="이튼 렌즈 배열 광선 시뮬레이션과 밴드 예측")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("admissible", parents=[common], help="R-허용성/슬릿 서로소 판정")
    _scene_args(p, dynamic=False)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("reduce-basis", parents=[common], help="가우스 축소와 양의 기저")
    _scene_args(p, dynamic=False)
    p.set_defaults(func=cmd_reduce_basis)

    p = sub.add_parser("predict", parents=[common], help="주기적 경우 밴드 방향 예측")
    p.add_argument("--u", required=True, help='토러스 점 "x,y" (유리수, 예: 1/3,0)')
    p.add_argument("--word", help='h 의 단어, 예: "R^3 L" (L=h⁺, R=h⁻)')
    p.add_argument("--matrix", help="h 의 성분 a,b,c,d")
    p.add_argument("--R", type=_real, required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("trace", parents=[common], help="광선 추적과 파일 출력")
    _scene_args(p)
    p.add_argument("--u", help="밴드 경계 표시용 예측의 u")
    p.add_argument("--word", help="밴드 경계 표시용 예측의 단어")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("band-report", parents=[common], help="유계 범함수와 밴드 폭")
    _scene_args(p)
    p.add_argument("--u")
    p.add_argument("--word")
    p.add_argument("--band-direction", dest="band_direction", type=_pair, help="직접 지정하는 밴드 방향 dx,dy")
    p.set_defaults(func=cmd_band_report)

    p = sub.add_parser("deviation", parents=[common], help="편차 지수 적합")
    _scene_args(p)
    p.add_argument("--orbits", type=int)
    p.set_defaults(func=cmd_deviation)

    p = sub.add_parser("compare", parents=[common], help="평면/원형 모델 궤도 거리")
    _scene_args(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("search-periodic", parents=[common], help="정리가 적용되는 (u, h) 탐색")
    p.add_argument("--denominator", type=int, required=True)
    p.add_argument("--max-length", dest="max_length", type=int, default=6)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_search_periodic)

    p = sub.add_parser("verify", parents=[common], help="수용 기준 실행")
    p.add_argument(
        "--suite",
        default="all",
        choices=["all", "example54", "correspondence", "algebra", "deviation", "admissibility", "oracle"],
    )
    p.add_argument("--scale", type=float, default=1.0, help="궤도 수/시간 지평 배율 (0, 1]")
    p.add_argument("--quick", action="store_true", help="scale=0.01 로 빠르게 실행")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        setup_logging(args.log_level or get_settings().log_level)
        return args.func(args)
    except EatonBandsError as exc:
        print(f"오류: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValidationError as exc:
        print(f"설정 오류: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"입력 오류: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
