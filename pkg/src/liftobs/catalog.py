"""Named example actions."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .circle import Reflection, Rotation, build_bs13_action, circle_translation
from .maps import Compose
from .plane import (RP3_A, RP3_B, RP3_C, ActionAssignment, SkewPerturbed, affine_shear,
                    horizontal_translation, linear_map, nil_j, nil_k, nil_S, nil_T, nil_U,
                    translate, vertical_profile, vertical_translation)
from .words import GroupPresentation, baumslag_solitar, free_abelian_presentation, parse_presentation

Z2 = free_abelian_presentation(2)


def annulus_basic() -> ActionAssignment:
    return ActionAssignment(Z2, (affine_shear(), vertical_translation()), (horizontal_translation(),),
                            space="annulus", name="annulus_basic")


def lifted_toral(m: int = 0) -> ActionAssignment:
    """The shear followed by a vertical shift by ``m``, together with ``g0``."""
    f = affine_shear() if m == 0 else Compose(translate(0, m), affine_shear())
    if m:
        f.name = f"t(0,{m}) o f0"
    return ActionAssignment(Z2, (f, vertical_translation()), (horizontal_translation(),),
                            space="annulus", name=f"lifted_toral({m})")


def sin_profile() -> ActionAssignment:
    f = vertical_profile(name="f")
    return ActionAssignment(Z2, (f, vertical_translation()), (horizontal_translation(),),
                            space="annulus", name="sin_profile")


def sin_skew() -> ActionAssignment:
    f = SkewPerturbed(1, 2, Fraction(1, 8), 1, Fraction(1, 4), name="f")
    return ActionAssignment(Z2, (f, vertical_translation()), (horizontal_translation(),),
                            space="annulus", name="sin_skew")


def nilmanifold() -> ActionAssignment:
    return ActionAssignment(Z2, (nil_j(), nil_k()), (nil_S(), nil_T(), nil_U()),
                            space="nil3", deck_kind="nilpotent", name="nilmanifold")


def nilmanifold_corrected() -> ActionAssignment:
    tj, uk = Compose(nil_T(), nil_j()), Compose(nil_U(), nil_k())
    tj.name, uk.name = "Tj", "Uk"
    return ActionAssignment(Z2, (tj, uk), (nil_S(), nil_T(), nil_U()),
                            space="nil3", deck_kind="nilpotent", name="nilmanifold_corrected")


def rp3() -> ActionAssignment:
    """Linear maps of R^4 restricting to the 3-sphere; the deck map is ``x -> -x``."""
    return ActionAssignment(Z2, (linear_map(RP3_A, "A"), linear_map(RP3_B, "B")),
                            (linear_map(RP3_C, "C"),), space="s3", deck_kind="finite",
                            name="rp3", notes={"deck_order": 2})


def circle_z2() -> ActionAssignment:
    """Commuting reflection and half-turn of the circle; the reflection has no homotopy lift."""
    return ActionAssignment(Z2, (Reflection(0), Rotation(Fraction(1, 2))), (circle_translation(),),
                            space="circle", name="circle_z2",
                            notes={"orientation_reversing": ["a"]})


def bs13() -> ActionAssignment:
    f, g = build_bs13_action()
    return ActionAssignment(baumslag_solitar(1, 3), (f, g), (circle_translation(),),
                            space="circle", name="bs13")


def half_turn() -> ActionAssignment:
    return ActionAssignment(parse_presentation("a; a^2"), (Rotation(Fraction(1, 2)),),
                            (circle_translation(),), space="circle", name="half_turn")


def torus_translations(a=(Fraction(1, 3), Fraction(1, 5)), b=(Fraction(2, 7), Fraction(0))) -> ActionAssignment:
    return ActionAssignment(Z2, (translate(*a), translate(*b)), (translate(1, 0), translate(0, 1)),
                            space="torus", name="torus_translations")


CATALOG: dict[str, Callable[[], ActionAssignment]] = {
    "annulus_basic": annulus_basic,
    "lifted_toral": lifted_toral,
    "sin_profile": sin_profile,
    "sin_skew": sin_skew,
    "nilmanifold": nilmanifold,
    "nilmanifold_corrected": nilmanifold_corrected,
    "rp3": rp3,
    "circle_z2": circle_z2,
    "bs13": bs13,
    "half_turn": half_turn,
    "torus_translations": torus_translations,
}


def build_catalog(lifted_toral_offsets=(0, 1, -1, 2)) -> dict[str, ActionAssignment]:
    out = {name: make() for name, make in CATALOG.items() if name != "lifted_toral"}
    for m in lifted_toral_offsets:
        out[f"lifted_toral({m})"] = lifted_toral(m)
    out["lifted_toral"] = out["lifted_toral(0)"] if 0 in lifted_toral_offsets else lifted_toral(0)
    return dict(sorted(out.items()))


def get(name: str) -> ActionAssignment:
    """Resolve ``name`` or ``lifted_toral(m)``."""
    if name.startswith("lifted_toral(") and name.endswith(")"):
        return lifted_toral(int(name[len("lifted_toral("):-1]))
    if name not in CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(sorted(CATALOG))}")
    return CATALOG[name]()
