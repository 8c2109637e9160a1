from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from eaton_bands.lattice import PositiveBasis, positive_basis
from eaton_bands.models.errors import DegenerateDatum, NotDisjoint, NotFixed, NotHyperbolic, SearchExhausted, ZeroClass
from eaton_bands.models.geometry import Vec2
from eaton_bands.predictor import (
    BandPrediction,
    Method,
    SlitTorusDatum,
    band_direction_from_class,
    band_width_bound,
    eta_matrix,
    functional_for_direction,
    lattice_to_torus,
    predict_band_periodic,
    search_periodic,
    slope_of,
    torus_to_lattice,
)
from eaton_bands.raytrace.scenes import random_admissible_lattice
from eaton_bands.sl2 import H_MINUS, H_PLUS, PSL2Z, SL2Z, TorusPoint, contracting_eigendirection, inverse, torus_act

EXAMPLE54_SLOPE = -(math.sqrt(21.0) + 3.0 * math.sqrt(5.0)) / 4.0

U = TorusPoint(Fraction(1, 3), Fraction(0))
H = SL2Z(1, 1, 3, 4)


def _parallel(v: Vec2, w: Vec2, tol: float = 1e-12) -> bool:
    return abs(v.unit().wedge(w.unit())) < tol


def test_example_prediction(shift):
    p = predict_band_periodic(U, H, 1.0 / 3.0)
    assert p.slope == pytest.approx(EXAMPLE54_SLOPE, abs=1e-9)
    assert p.method is Method.PERIODIC
    assert p.induced == PSL2Z(SL2Z(1, 1, 1, 2))
    assert p.lattice.b1.x == pytest.approx(1.0, abs=1e-12)
    assert abs(p.lattice.b1.y) < 1e-12
    assert p.lattice.b2.x == pytest.approx(shift, abs=1e-12)
    assert p.lattice.b2.y == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(np.array(p.eta), [[1.0, shift], [0.0, 1.0]], atol=1e-12)
    a, b = p.bounded_functional
    assert (a, b) == (p.xi_coeffs[1], -p.xi_coeffs[0])


def test_prediction_invariant_under_powers():
    p1 = predict_band_periodic(U, H, 1.0 / 3.0)
    p2 = predict_band_periodic(U, H @ H, 1.0 / 3.0)
    assert _parallel(p1.direction, p2.direction, 1e-9)


def test_prediction_scales_with_radius():
    p1 = predict_band_periodic(U, H, 1.0 / 3.0)
    p2 = predict_band_periodic(U, H, 0.2)
    assert p2.slope == pytest.approx(p1.slope * ((1.0 / 3.0) / 0.2) ** 2, rel=1e-9)


def test_prediction_errors():
    with pytest.raises(NotHyperbolic):
        predict_band_periodic(U, SL2Z.identity(), 1.0 / 3.0)
    with pytest.raises(NotHyperbolic):
        predict_band_periodic(U, H_PLUS, 1.0 / 3.0)
    with pytest.raises(NotFixed):
        predict_band_periodic(TorusPoint(Fraction(1, 5), Fraction(0)), H, 1.0 / 3.0)


def test_band_direction_from_class_matches_prediction(shift):
    p = predict_band_periodic(U, H, 1.0 / 3.0)
    B = PositiveBasis(Vec2(1.0, 0.0), Vec2(shift, 1.0))
    v = band_direction_from_class(B, p.xi_coeffs)
    assert abs(v.x - p.direction.x) < 1e-12 and abs(v.y - p.direction.y) < 1e-12


def test_band_direction_from_class_simple_cases():
    B = PositiveBasis(Vec2(1.0, 0.0), Vec2(0.0, 1.0))
    assert band_direction_from_class(B, (1.0, 0.0)) == Vec2(1.0, 0.0)
    assert band_direction_from_class(B, (2.0, 0.0)) == band_direction_from_class(B, (1.0, 0.0))
    v = band_direction_from_class(B, (1.0, 1.0))
    assert _parallel(v, Vec2(1.0, 1.0))
    with pytest.raises(ZeroClass):
        band_direction_from_class(B, (0.0, 0.0))


def test_functional_for_direction_round_trips_through_class(example54):
    B = positive_basis(example54, 1.0 / 3.0)
    direction = Vec2(0.3, 1.0).as_line()
    xi, (a, b) = functional_for_direction(B, direction)
    c1, c2 = B.coords(direction)
    assert abs(a * c1 + b * c2) < 1e-12
    v = band_direction_from_class(B, xi)
    assert abs(v.x - direction.x) < 1e-12 and abs(v.y - direction.y) < 1e-12


def test_band_width_bound_formula():
    B = PositiveBasis(Vec2(1.0, 0.0), Vec2(0.0, 1.0))
    assert band_width_bound(0.0, (1.0, 0.0), B) == pytest.approx(2.0)
    assert band_width_bound(3.0, (0.0, 2.0), B) == pytest.approx(5.0)


def test_lattice_to_torus_square():
    d = lattice_to_torus(PositiveBasis(Vec2(1.0, 0.0), Vec2(0.0, 1.0)), 1.0 / 3.0)
    assert d.u.x == pytest.approx(1.0 / 3.0) and d.u.y == 0.0
    assert d.theta_dir == Vec2(0.0, 1.0)


def test_torus_to_lattice_example(shift):
    c = shift
    n = math.hypot(c, 1.0)
    d = SlitTorusDatum(Vec2(1.0 / 3.0, 0.0), Vec2(-c / n, 1.0 / n))
    B, eta = torus_to_lattice(d, 1.0 / 3.0)
    assert np.allclose(eta, [[1.0, c], [0.0, 1.0]], atol=1e-12)
    assert B.gamma_plus.x == pytest.approx(1.0) and B.gamma_minus.x == pytest.approx(c)


def test_eta_identity_case():
    R = 0.2
    eta = eta_matrix(SlitTorusDatum(Vec2(R, 0.0), Vec2(0.0, 1.0)), R)
    assert np.allclose(eta, np.eye(2), atol=1e-12)


def test_eta_is_unimodular_for_random_data(rng):
    for _ in range(100):
        u = Vec2(*(float(v) for v in rng.uniform(-0.49, 0.49, size=2)))
        if u.norm() < 1e-3:
            continue
        angle = float(rng.uniform(0.0, 2.0 * math.pi))
        theta = Vec2(math.cos(angle), math.sin(angle))
        if u.wedge(theta) < 0:
            theta = -theta
        if u.unit().wedge(theta) < 1e-3:
            continue
        R = float(rng.uniform(0.05, 0.4))
        eta = eta_matrix(SlitTorusDatum(u, theta), R)
        assert np.linalg.det(eta) == pytest.approx(1.0, abs=1e-9)
        assert np.allclose(eta @ np.array([u.x, u.y]), [R, 0.0], atol=1e-9)


def test_correspondence_round_trip(rng):
    for _ in range(40):
        R = float(rng.uniform(0.05, 0.3))
        B = positive_basis(random_admissible_lattice(rng, R), R)
        d = lattice_to_torus(B, R)
        assert d.wedge > 0
        back, _ = torus_to_lattice(d, R)
        assert (back.gamma_plus - B.gamma_plus).norm() < 1e-8 * (1.0 + B.gamma_plus.norm())
        assert (back.gamma_minus - B.gamma_minus).norm() < 1e-8 * (1.0 + B.gamma_minus.norm())


def test_degenerate_datum_rejected():
    with pytest.raises(DegenerateDatum):
        SlitTorusDatum(Vec2(0.25, 0.0), Vec2(1.0, 0.0))
    with pytest.raises(DegenerateDatum):
        SlitTorusDatum(Vec2(0.0, 0.0), Vec2(0.0, 1.0))
    with pytest.raises(DegenerateDatum):
        SlitTorusDatum(Vec2(0.25, 0.0), Vec2(0.0, -1.0))


def test_prediction_requires_nonzero_functional():
    with pytest.raises(ZeroClass):
        BandPrediction(Vec2(1.0, 0.0), (1.0, 0.0), (0.0, 0.0), Method.EMPIRICAL)


def test_slope_of_vertical():
    assert slope_of(Vec2(0.0, 1.0)) == "vertical"
    assert slope_of(Vec2(1.0, 2.0)) == pytest.approx(2.0)


def test_search_finds_example():
    found = search_periodic(3, 4)
    assert any(c.u == U and c.h == H for c in found)
    for c in found:
        assert c.word.matrix() == c.h
        assert predict_band_periodic(c.u, c.h, 0.1).induced == c.induced


def test_search_limit_and_exhaustion():
    assert len(search_periodic(3, 4, limit=1)) == 1
    with pytest.raises(SearchExhausted):
        search_periodic(2, 3)


@pytest.mark.parametrize("change", [H_PLUS, H_MINUS, H_PLUS @ H_MINUS], ids=["L", "R", "LR"])
def test_prediction_is_independent_of_basis(change):
    # 기저를 B·M 으로 바꾸면 토러스 자료는 (M⁻¹u, M⁻¹ϑ), 사상은 M⁻¹hM
    R = 1.0 / 3.0
    p = predict_band_periodic(U, H, R)
    m_inv = inverse(change)
    q = predict_band_periodic(torus_act(m_inv, U), m_inv @ H @ change, R)

    assert q.slope == pytest.approx(p.slope, rel=1e-9)
    b1, b2 = p.lattice.b1, p.lattice.b2
    expected1 = b1 * change.a + b2 * change.c
    expected2 = b1 * change.b + b2 * change.d
    assert (q.lattice.b1 - expected1).norm() < 1e-9
    assert (q.lattice.b2 - expected2).norm() < 1e-9


def test_direction_from_class_is_basis_independent(shift):
    B = PositiveBasis(Vec2(1.0, 0.0), Vec2(shift, 1.0))
    xi = predict_band_periodic(U, H, 1.0 / 3.0).xi_coeffs
    for m in (H_PLUS, H_MINUS, SL2Z(2, 1, 1, 1)):
        moved = PositiveBasis(B.gamma_plus * m.a + B.gamma_minus * m.c, B.gamma_plus * m.b + B.gamma_minus * m.d)
        m_inv = inverse(m)
        xi_moved = (m_inv.a * xi[0] + m_inv.b * xi[1], m_inv.c * xi[0] + m_inv.d * xi[1])
        assert _parallel(band_direction_from_class(moved, xi_moved), band_direction_from_class(B, xi), 1e-12)


@pytest.mark.parametrize("max_length", [4, 5])
def test_search_candidates_round_trip_through_lattice(max_length):
    R = 0.05
    checked = 0
    for c in search_periodic(3, max_length, limit=12):
        try:
            p = predict_band_periodic(c.u, c.h, R)
        except NotDisjoint:
            continue
        checked += 1
        B = PositiveBasis(p.lattice.b1, p.lattice.b2)
        datum = lattice_to_torus(B, R)
        u = c.u.to_vec()
        assert abs(datum.u.x - u.x) < 1e-9 and abs(datum.u.y - u.y) < 1e-9
        assert _parallel(datum.theta_dir, contracting_eigendirection(c.h), 1e-9)
        assert _parallel(band_direction_from_class(B, p.xi_coeffs), p.direction, 1e-9)
    assert checked > 1
