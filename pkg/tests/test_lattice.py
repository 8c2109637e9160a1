from __future__ import annotations

import itertools
import json
import math

import numpy as np
import pytest

from eaton_bands.lattice import (
    Lattice2,
    PositiveBasis,
    TileIndex,
    enumerate_in_box,
    gauss_reduce,
    is_admissible,
    load_lattice,
    max_admissible_radius,
    positive_basis,
    shortest_vector,
    slits_disjoint,
    tile_index,
)
from eaton_bands.models.errors import BoxTooLarge, DegenerateBasis, NotDisjoint
from eaton_bands.models.geometry import Vec2
from eaton_bands.raytrace.scenes import random_admissible_lattice


def _brute_shortest(L: Lattice2, n: int = 10) -> float:
    return min(L.point(m, k).norm() for m, k in itertools.product(range(-n, n + 1), repeat=2) if (m, k) != (0, 0))


def _integer_coords(L: Lattice2, v: Vec2) -> tuple[int, int]:
    c1, c2 = L.coords(v)
    assert abs(c1 - round(c1)) < 1e-9 and abs(c2 - round(c2)) < 1e-9
    return round(c1), round(c2)


def test_gauss_reduce_recovers_standard_basis():
    reduced = gauss_reduce(Lattice2(Vec2(1.0, 0.0), Vec2(5.0, 1.0)))
    assert reduced.b1 == Vec2(1.0, 0.0)
    assert reduced.b2 == Vec2(0.0, 1.0)


def test_gauss_reduce_keeps_reduced_basis():
    square = Lattice2(Vec2(1.0, 0.0), Vec2(0.0, 1.0))
    assert gauss_reduce(square) == square


def test_gauss_reduce_matches_brute_force_and_preserves_lattice():
    L = Lattice2(Vec2(2.0, 1.0), Vec2(3.0, 2.0))
    reduced = gauss_reduce(L)
    b1, b2 = reduced.b1, reduced.b2
    assert b1.norm() == pytest.approx(_brute_shortest(L), abs=1e-12)
    assert b1.norm() <= b2.norm() + 1e-12
    assert b2.norm() <= (b1 + b2).norm() + 1e-12
    assert b2.norm() <= (b1 - b2).norm() + 1e-12
    m = np.array([_integer_coords(L, b1), _integer_coords(L, b2)])
    assert abs(round(np.linalg.det(m))) == 1


def test_gauss_reduce_rejects_degenerate_basis():
    with pytest.raises(DegenerateBasis):
        gauss_reduce(Lattice2(Vec2(1.0, 2.0), Vec2(2.0, 4.0)))


def test_is_admissible_examples(square, hexagonal, example54):
    assert is_admissible(square, 0.25)
    assert not is_admissible(hexagonal, max_admissible_radius())
    assert is_admissible(example54, 1.0 / 3.0)
    assert _brute_shortest(example54) > 2.0 / 3.0


def test_admissibility_threshold_brackets_hexagonal_packing(hexagonal):
    assert max_admissible_radius() == pytest.approx(0.5373, abs=1e-4)
    assert is_admissible(hexagonal, 0.53)
    assert not is_admissible(hexagonal, 0.54)


def test_is_admissible_rejects_non_positive_radius(square):
    with pytest.raises(ValueError):
        is_admissible(square, 0.0)


def test_slits_disjoint_examples(square, example54):
    assert slits_disjoint(square, 0.4)
    assert not slits_disjoint(square, 0.6)
    assert slits_disjoint(example54, 1.0 / 3.0)


def test_admissible_implies_slits_disjoint(rng):
    for _ in range(30):
        R = float(rng.uniform(0.05, 0.3))
        L = random_admissible_lattice(rng, R)
        assert slits_disjoint(L, R)


def test_positive_basis_square(square):
    B = positive_basis(square, 0.25)
    assert B.gamma_plus == Vec2(1.0, 0.0)
    assert B.gamma_minus == Vec2(0.0, 1.0)


def test_positive_basis_example54_generates_lattice(example54):
    R = 1.0 / 3.0
    B = positive_basis(example54, R)
    assert B.is_positive()
    assert B.slit_bound_ok(R)
    assert B.det == pytest.approx(1.0, abs=1e-9)
    m = np.array([_integer_coords(example54, B.gamma_plus), _integer_coords(example54, B.gamma_minus)])
    assert abs(round(np.linalg.det(m))) == 1


def test_positive_basis_random_postconditions(rng):
    for _ in range(40):
        R = float(rng.uniform(0.05, 0.3))
        L = random_admissible_lattice(rng, R)
        B = positive_basis(L, R)
        assert B.is_positive()
        assert B.slit_bound_ok(R)
        assert B.det == pytest.approx(1.0, abs=1e-9)
        _integer_coords(L, B.gamma_plus)
        _integer_coords(L, B.gamma_minus)


def test_positive_basis_rejects_non_unimodular():
    with pytest.raises(DegenerateBasis):
        positive_basis(Lattice2(Vec2(3.0, 2.0), Vec2(-1.0, 1.0)), 0.1)


def test_positive_basis_rejects_overlapping_slits(square):
    with pytest.raises(NotDisjoint):
        positive_basis(square, 0.6)


def test_positive_basis_constructor_requires_orientation():
    with pytest.raises(DegenerateBasis):
        PositiveBasis(Vec2(0.0, 1.0), Vec2(1.0, 0.0))


def test_tile_index_examples():
    B = PositiveBasis(Vec2(1.0, 0.0), Vec2(-0.3, 1.0))
    m, y = tile_index(Vec2(0.0, 0.0), B)
    assert m == TileIndex(0, 0) and y == Vec2(0.0, 0.0)

    m, y = tile_index(B.gamma_plus + B.gamma_minus, B)
    assert m == TileIndex(1, 1)
    assert abs(y.x) < 1e-12 and abs(y.y) < 1e-12

    m, y = tile_index(B.gamma_plus * 0.5, B)
    assert m == TileIndex(1, 0)
    assert y.x == pytest.approx(-0.5)


def test_tile_index_reconstruction(rng, example54):
    B = positive_basis(example54, 1.0 / 3.0)
    for _ in range(500):
        x = Vec2(*(float(v) for v in rng.uniform(-100.0, 100.0, size=2)))
        m, y = tile_index(x, B)
        assert -0.5 - 1e-6 <= y.x < 0.5 and -0.5 - 1e-6 <= y.y < 0.5
        back = B.point(m.m1, m.m2) + B.gamma_plus * y.x + B.gamma_minus * y.y
        assert (back - x).norm() <= 1e-9 * (1.0 + x.norm())


def test_enumerate_in_box_small_boxes(square):
    points = enumerate_in_box(square, -0.5, 0.5, -0.5, 0.5)
    assert [p for _, p in points] == [Vec2(0.0, 0.0)]
    assert len(enumerate_in_box(square, 0.0, 2.0, 0.0, 1.0)) == 6


def test_enumerate_in_box_matches_brute_force(skewed):
    found = {(round(p.x, 9), round(p.y, 9)) for _, p in enumerate_in_box(skewed, -5.0, 5.0, -5.0, 5.0)}
    brute = set()
    for m, k in itertools.product(range(-25, 26), repeat=2):
        p = skewed.point(m, k)
        if -5.0 <= p.x <= 5.0 and -5.0 <= p.y <= 5.0:
            brute.add((round(p.x, 9), round(p.y, 9)))
    assert found == brute
    assert abs(len(found) - 100) <= 30


def test_enumerate_in_box_is_sorted_and_reports_reduced_coords(skewed):
    points = enumerate_in_box(skewed, -3.0, 3.0, -3.0, 3.0)
    keys = [(p.y, p.x) for _, p in points]
    assert keys == sorted(keys)
    reduced = gauss_reduce(skewed)
    for (k1, k2), p in points:
        assert (reduced.point(k1, k2) - p).norm() < 1e-12


def test_enumerate_in_box_errors(square):
    with pytest.raises(ValueError):
        enumerate_in_box(square, 1.0, 0.0, 0.0, 1.0)
    with pytest.raises(BoxTooLarge):
        enumerate_in_box(square, 0.0, 100.0, 0.0, 100.0, cap=100)


def test_load_lattice_formats(shift):
    assert load_lattice("square") == Lattice2(Vec2(1.0, 0.0), Vec2(0.0, 1.0))
    assert load_lattice("example54").b2.x == pytest.approx(shift)
    text = json.dumps({"basis": [[1, 0], [0.5, 1]]})
    assert load_lattice(text) == Lattice2(Vec2(1.0, 0.0), Vec2(0.5, 1.0))
    assert load_lattice({"basis": [[1, 0], [0, 1]]}).det == 1.0
    with pytest.raises(ValueError):
        load_lattice("pentagonal")
    with pytest.raises(ValueError):
        load_lattice({"vectors": []})


def test_hexagonal_is_unimodular(hexagonal):
    assert abs(hexagonal.det) == pytest.approx(1.0, abs=1e-12)
    assert shortest_vector(hexagonal).norm() == pytest.approx(math.sqrt(2.0 / math.sqrt(3.0)))
