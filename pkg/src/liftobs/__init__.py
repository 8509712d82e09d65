"""Lifting obstructions for group actions on manifolds: translation numbers,
homological translation vectors, abelianization torsion and relator deck words,
plus simulators for annulus, torus and nilmanifold example actions.
"""

__version__ = "0.1.0"

from .circle import Rotation, translation_number
from .heisenberg import HeisenbergElement, heisenberg_normal_form
from .intmat import IntMatrix, smith_normal_form
from .lifts import construct_lift_assignment, search_deck_corrections
from .plane import commutator_deck_element, compare_maps
from .words import abelianization, parse_presentation

__all__ = [
    "HeisenbergElement", "IntMatrix", "Rotation", "abelianization", "commutator_deck_element",
    "compare_maps", "construct_lift_assignment", "heisenberg_normal_form", "parse_presentation",
    "search_deck_corrections", "smith_normal_form", "translation_number",
]
