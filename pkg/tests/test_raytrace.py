from __future__ import annotations

import math

import pandas as pd
import pytest

from eaton_bands.lattice import Lattice2, TileIndex, enumerate_in_box, is_admissible, named_lattice, tile_index
from eaton_bands.models.errors import InvalidScene, NoHitWithinCap, NonPositiveRadius
from eaton_bands.models.geometry import Vec2
from eaton_bands.raytrace import (
    DOWN,
    UP,
    EventKind,
    Model,
    SceneConfig,
    next_eaton_event,
    next_flat_event,
    random_admissible_lattice,
    random_start,
    reflect_eaton,
    reflect_flat,
    refractive_index,
    start_state,
    trace,
)

HALF_CHORD = math.sqrt(0.0525)


def _close(v: Vec2, x: float, y: float, tol: float = 1e-12) -> bool:
    return abs(v.x - x) < tol and abs(v.y - y) < tol


def test_scene_validation(square, hexagonal):
    with pytest.raises(InvalidScene):
        SceneConfig(square, 0.0)
    with pytest.raises(InvalidScene):
        SceneConfig(square, 0.6, Model.FLAT)
    with pytest.raises(InvalidScene):
        SceneConfig(square, 0.5, Model.EATON)
    with pytest.raises(InvalidScene):
        SceneConfig(Lattice2(Vec2(2.0, 0.0), Vec2(0.0, 1.0)), 0.25)
    assert SceneConfig(hexagonal, 0.53, Model.EATON).model is Model.EATON
    assert SceneConfig(square, 0.25, "eaton").model is Model.EATON


def test_scene_overrides_ignore_none(square):
    c = SceneConfig.from_settings(square, 0.25, "flat", tol_singular=None, search_doublings=5)
    assert c.search_doublings == 5
    assert c.tol_singular == 1e-10
    assert c.with_model(Model.EATON).search_doublings == 5


def test_flat_first_event(flat_square, bounce_start):
    s = start_state(flat_square, bounce_start, UP)
    e = next_flat_event(s, flat_square)
    assert e.kind is EventKind.SLIT_HIT
    assert _close(e.position, 0.1, 1.0)
    assert e.lattice_point == TileIndex(0, 1)
    assert e.time == pytest.approx(0.95)
    assert e.dx == pytest.approx(0.1)

    after = reflect_flat(s, e, flat_square)
    assert _close(after.pos, -0.1, 1.0)
    assert after.dir == DOWN
    assert after.sheet == -s.sheet


def test_flat_reflection_through_center(flat_square):
    s = start_state(flat_square, Vec2(0.0, 0.5), UP)
    e = next_flat_event(s, flat_square)
    after = reflect_flat(s, e, flat_square)
    assert _close(after.pos, 0.0, 1.0)
    assert after.dir == DOWN


def test_flat_bounce_orbit(flat_square, bounce_start):
    t = trace(flat_square, bounce_start, UP, 10.0)
    assert t.event_count == 10
    assert [e.lattice_point for e in t.events] == [TileIndex(0, 1), TileIndex(0, 0)] * 5
    for k, e in enumerate(t.events):
        x, y = (0.1, 1.0) if k % 2 == 0 else (-0.1, 0.0)
        assert _close(e.position, x, y)
        assert e.time == pytest.approx(0.95 + k)
    assert not t.singular
    frame = t.frame()
    assert set(frame["x"].round(12)) <= {0.1, -0.1}
    assert list(frame["time"]) == [float(k) for k in range(11)]


def test_two_flat_reflections_compose_point_symmetries(flat_example54, rng):
    c = flat_example54
    start = random_start(rng, c.basis, c.R)
    s = start_state(c, start, UP)
    e1 = next_flat_event(s, c)
    s1 = reflect_flat(s, e1, c)
    e2 = next_flat_event(s1, c)
    s2 = reflect_flat(s1, e2, c)
    assert e1.kind is EventKind.SLIT_HIT and e2.kind is EventKind.SLIT_HIT
    assert s2.dir == UP and s2.sheet == s.sheet
    # x ↦ 2λ₁.x − x 다음 x ↦ 2λ₂.x − x
    center1 = e1.position.x - e1.dx
    center2 = e2.position.x - e2.dx
    assert s2.pos.x == pytest.approx(start.x + 2.0 * (center2 - center1), abs=1e-9)


def test_singular_endpoint_passes_straight(flat_square):
    t = trace(flat_square, Vec2(0.25, 0.05), UP, 3.0)
    assert t.singular
    assert t.singular_count == t.event_count == 3
    assert all(e.kind is EventKind.SINGULAR_ENDPOINT for e in t.events)
    assert all(abs(x - 0.25) < 1e-12 for x in t.frame()["x"])


def test_no_hit_on_vertical_period(flat_square):
    s = start_state(flat_square, Vec2(0.5, 0.05), UP)
    with pytest.raises(NoHitWithinCap):
        next_flat_event(s, flat_square)
    with pytest.raises(NoHitWithinCap):
        trace(flat_square, Vec2(0.5, 0.05), UP, 10.0)


def test_start_inside_obstacle_rejected(flat_square, eaton_square):
    with pytest.raises(InvalidScene):
        start_state(flat_square, Vec2(0.1, 0.0), UP)
    with pytest.raises(InvalidScene):
        start_state(eaton_square, Vec2(0.0, 0.05), UP)
    with pytest.raises(ValueError):
        start_state(flat_square, Vec2(0.1, 0.05), 0)


def test_model_mismatch_rejected(flat_square, eaton_square, bounce_start, lens_start):
    s = start_state(flat_square, bounce_start, UP)
    with pytest.raises(InvalidScene):
        next_eaton_event(s, flat_square)
    with pytest.raises(InvalidScene):
        next_flat_event(start_state(eaton_square, lens_start, UP), eaton_square)


def test_eaton_entry_and_exit(eaton_square, lens_start):
    s = start_state(eaton_square, lens_start, UP)
    e = next_eaton_event(s, eaton_square)
    assert e.kind is EventKind.LENS_ENTRY
    assert _close(e.position, 0.1, 1.0 - HALF_CHORD)
    assert e.time == pytest.approx(0.5 - HALF_CHORD)

    after = reflect_eaton(s, e, eaton_square)
    assert _close(after.pos, -0.1, 1.0 - HALF_CHORD)
    assert after.dir == DOWN


def test_eaton_trace_pairs_entry_with_exit(eaton_square, lens_start):
    t = trace(eaton_square, lens_start, UP, 5.0)
    kinds = [e.kind for e in t.events]
    assert kinds[:4] == [EventKind.LENS_ENTRY, EventKind.LENS_EXIT] * 2
    times = [e.time for e in t.events]
    assert times == sorted(times)
    entry, exit_ = t.events[0], t.events[1]
    assert exit_.lattice_point == entry.lattice_point
    assert _close(exit_.position, -0.1, entry.position.y)


def test_eaton_center_turnback(eaton_square):
    s = start_state(eaton_square, Vec2(0.0, 0.5), UP)
    e = next_eaton_event(s, eaton_square)
    assert e.kind is EventKind.CENTER_TURNBACK
    assert _close(e.position, 0.0, 0.75)
    after = reflect_eaton(s, e, eaton_square)
    assert _close(after.pos, 0.0, 0.75)
    assert after.dir == DOWN


def test_zero_time_trace(flat_square, bounce_start):
    t = trace(flat_square, bounce_start, UP, 0.0)
    assert t.events == [] and t.event_count == 0
    assert len(t.frame()) == 1
    with pytest.raises(ValueError):
        trace(flat_square, bounce_start, UP, -1.0)
    with pytest.raises(ValueError):
        trace(flat_square, bounce_start, UP, 1.0, sample_dt=0.0)


def test_refractive_index():
    R = 0.3
    assert refractive_index(R, R) == pytest.approx(1.0)
    assert refractive_index(R / 2.0, R) == pytest.approx(math.sqrt(3.0))
    assert refractive_index(2.0 * R, R) == 1.0
    assert math.isfinite(refractive_index(R * 1e-6, R))
    assert refractive_index(R * 1e-6, R) > 1000.0
    with pytest.raises(NonPositiveRadius):
        refractive_index(0.0, R)
    with pytest.raises(ValueError):
        refractive_index(0.1, -1.0)


def test_tile_bookkeeping_matches_positions(flat_example54, rng):
    c = flat_example54
    t = trace(c, random_start(rng, c.basis, c.R), UP, 200.0, sample_dt=0.5)
    frame = t.frame()
    for row in frame.itertuples():
        m, _ = tile_index(Vec2(row.x, row.y), c.basis)
        assert (m.m1, m.m2) == (row.tile1, row.tile2)


def test_trace_is_deterministic(flat_example54, rng):
    c = flat_example54
    start = random_start(rng, c.basis, c.R)
    t1 = trace(c, start, UP, 300.0)
    t2 = trace(c, start, UP, 300.0)
    pd.testing.assert_frame_equal(t1.frame(), t2.frame())
    assert t1.events == t2.events


def test_flat_trace_is_reversible(flat_example54, rng):
    c = flat_example54
    start = random_start(rng, c.basis, c.R)
    forward = trace(c, start, UP, 50.0)
    backward = trace(c, forward.end.pos, -forward.end.dir, 50.0)
    points = [e.lattice_point for e in forward.events]
    assert [e.lattice_point for e in backward.events] == points[::-1]
    assert (backward.end.pos - start).norm() < 1e-9


def test_random_scenes_are_valid(rng):
    for _ in range(10):
        R = float(rng.uniform(0.05, 0.3))
        L = random_admissible_lattice(rng, R)
        assert is_admissible(L, R)
        c = SceneConfig(L, R, Model.EATON)
        start = random_start(rng, c.basis, R)
        near = enumerate_in_box(L, start.x - 1.0, start.x + 1.0, start.y - 1.0, start.y + 1.0)
        assert all((start - p).norm() > R for _, p in near)
        try:
            t = trace(c, start, int(rng.choice([UP, DOWN])), 100.0)
        except NoHitWithinCap:
            continue
        # 짧은 벡터가 거의 수직이면 t=100 안에 렌즈를 만나지 않을 수 있다
        times = [e.time for e in t.events]
        assert times == sorted(times)
        assert all(0.0 <= s <= 100.0 for s in times)
        assert t.end.time == pytest.approx(100.0)


def test_eaton_trace_is_reversible(rng):
    c = SceneConfig(named_lattice("example54"), 1.0 / 3.0, Model.EATON)
    start = random_start(rng, c.basis, c.R)
    forward = trace(c, start, UP, 60.0)
    assert forward.event_count > 0
    backward = trace(c, forward.end.pos, -forward.end.dir, 60.0)
    assert [e.lattice_point for e in backward.events] == [e.lattice_point for e in forward.events][::-1]
    assert backward.end.dir == DOWN
    assert (backward.end.pos - start).norm() < 1e-8


def test_flat_reflections_mirror_offsets(flat_example54, rng):
    c = flat_example54
    s = start_state(c, random_start(rng, c.basis, c.R), UP)
    incoming, outgoing = [], []
    for _ in range(40):
        e = next_flat_event(s, c)
        assert e.kind is EventKind.SLIT_HIT
        assert abs(e.dx) < c.R
        s = reflect_flat(s, e, c)
        center = e.position.x - e.dx
        incoming.append(e.dx)
        outgoing.append(s.pos.x - center)
    assert sorted(outgoing) == pytest.approx(sorted(-dx for dx in incoming), abs=1e-12)
    assert all(abs(a + b) < 1e-12 for a, b in zip(incoming, outgoing))
