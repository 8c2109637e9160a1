"""SL(2,Z) 기호 계층."""

from eaton_bands.sl2.eigen import contracting_eigendirection, contracting_eigenpair, is_hyperbolic
from eaton_bands.sl2.group import H_MINUS, H_PLUS, PSL2Z, SL2Z, GenWord, Generator, decompose_word, inverse, mul
from eaton_bands.sl2.torus import TorusPoint, induced_action, induced_action_word, torus_act

__all__ = [
    "H_MINUS",
    "H_PLUS",
    "PSL2Z",
    "SL2Z",
    "GenWord",
    "Generator",
    "TorusPoint",
    "contracting_eigendirection",
    "contracting_eigenpair",
    "decompose_word",
    "induced_action",
    "induced_action_word",
    "inverse",
    "is_hyperbolic",
    "mul",
    "torus_act",
]
