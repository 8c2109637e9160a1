"""평면 격자 대수."""

from eaton_bands.lattice.admissibility import (
    horizontal_period,
    is_admissible,
    max_admissible_radius,
    positive_basis,
    slits_disjoint,
)
from eaton_bands.lattice.basis import Lattice2, PositiveBasis, gauss_reduce, load_lattice, named_lattice, shortest_vector
from eaton_bands.lattice.tiling import StripIndex, TileIndex, enumerate_in_box, tile_index

__all__ = [
    "Lattice2",
    "PositiveBasis",
    "StripIndex",
    "TileIndex",
    "enumerate_in_box",
    "gauss_reduce",
    "horizontal_period",
    "is_admissible",
    "load_lattice",
    "max_admissible_radius",
    "named_lattice",
    "positive_basis",
    "shortest_vector",
    "slits_disjoint",
    "tile_index",
]
