"""JSON descriptions of group actions: the map grammar and its validation."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import catalog
from .circle import (ChartAffine, DoubleCoverLift, PiecewiseLinear, Reflection, Rotation,
                     StandardCircleMap, circle_translation)
from .maps import AffineMap, Compose, Identity, Map, as_number
from .plane import (ActionAssignment, CertificateError, SineShear, SkewPerturbed, affine_shear,
                    deck_normalization_check, horizontal_translation, nil_j, nil_k, nil_S, nil_T,
                    nil_U, translate, vertical_translation)
from .words import GroupPresentation, PresentationParseError, parse_presentation

SPACES = {"circle": 1, "annulus": 2, "torus": 2, "nil3": 3, "s3": 4}

NAMED_MAPS = {
    "f0": affine_shear, "g0": vertical_translation, "h0": horizontal_translation,
    "S": nil_S, "T": nil_T, "U": nil_U, "j": nil_j, "k": nil_k,
    "circle_T": circle_translation,
}


class SpecError(ValueError):
    """Invalid action description; ``where`` locates the offending item."""

    def __init__(self, message: str, where: str = "", position: int | None = None):
        self.where = where
        self.position = position
        loc = where + (f" (offset {position})" if position is not None else "")
        super().__init__(f"{loc}: {message}" if loc else message)


def default_deck(space: str) -> tuple[Map, ...]:
    if space == "circle":
        return (circle_translation(),)
    if space == "annulus":
        return (horizontal_translation(),)
    if space == "torus":
        return (translate(1, 0), translate(0, 1))
    if space == "nil3":
        return (nil_S(), nil_T(), nil_U())
    raise SpecError(f"no default deck group for space {space!r}", "space")


def _num(obj: dict, key: str, where: str, default=None):
    if key not in obj:
        if default is None:
            raise SpecError(f"missing field {key!r}", where)
        return as_number(default)
    try:
        return as_number(obj[key])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SpecError(f"bad number {obj[key]!r}: {exc}", f"{where}.{key}") from exc


def _nums(seq, where: str) -> list:
    if not isinstance(seq, list):
        raise SpecError("expected a list", where)
    out = []
    for i, v in enumerate(seq):
        try:
            out.append(as_number(v))
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise SpecError(f"bad number {v!r}: {exc}", f"{where}[{i}]") from exc
    return out


def map_from_json(obj: Any, where: str = "map") -> Map:
    """Build a map from its JSON description (the inverse of ``Map.to_json``)."""
    if isinstance(obj, str):
        if obj not in NAMED_MAPS:
            raise SpecError(f"unknown primitive {obj!r}", where)
        return NAMED_MAPS[obj]()
    if not isinstance(obj, dict) or "type" not in obj:
        raise SpecError("a map is a primitive name or an object with a 'type'", where)
    kind = obj["type"]
    try:
        if kind == "identity":
            return Identity(int(obj.get("dim", 2)))
        if kind == "compose":
            maps = [map_from_json(m, f"{where}.maps[{i}]") for i, m in enumerate(obj.get("maps", []))]
            if not maps:
                raise SpecError("empty composition", where)
            return maps[0] if len(maps) == 1 else Compose(*maps)
        if kind == "inverse":
            return map_from_json(obj.get("of"), f"{where}.of").inverse()
        if kind == "power":
            return map_from_json(obj.get("of"), f"{where}.of").power(int(obj.get("k", 1)))
        if kind == "affine":
            rows = [_nums(r, f"{where}.matrix[{i}]") for i, r in enumerate(obj.get("matrix", []))]
            offset = _nums(obj["offset"], f"{where}.offset") if "offset" in obj else None
            return AffineMap(rows, offset, name=obj.get("name", ""))
        if kind == "translate":
            if "by" in obj:
                return translate(*_nums(obj["by"], f"{where}.by"), name=obj.get("name", ""))
            return translate(_num(obj, "dx", where, 0), _num(obj, "dy", where, 0), name=obj.get("name", ""))
        if kind in NAMED_MAPS or kind == "affine_shear":
            return NAMED_MAPS["f0" if kind == "affine_shear" else kind]()
        if kind == "rotation":
            return Rotation(_num(obj, "alpha", where))
        if kind == "reflection":
            return Reflection(_num(obj, "c", where, 0))
        if kind == "piecewise_linear":
            pts = [_nums(p, f"{where}.breakpoints[{i}]") for i, p in enumerate(obj.get("breakpoints", []))]
            return PiecewiseLinear(pts)
        if kind == "chart_affine":
            return ChartAffine(_num(obj, "slope", where), _num(obj, "offset", where, 0))
        if kind == "double_cover":
            return DoubleCoverLift(map_from_json(obj.get("base"), f"{where}.base"), int(obj.get("shift", 0)))
        if kind == "standard":
            return StandardCircleMap(_num(obj, "alpha", where), _num(obj, "k", where))
        if kind in ("vertical_profile", "skew_perturbed"):
            return SkewPerturbed(_num(obj, "k_amplitude", where, 0), _num(obj, "k_frequency", where, 1),
                                 _num(obj, "l_amplitude", where), _num(obj, "l_frequency", where, 1),
                                 _num(obj, "l_phase", where, 0), name=obj.get("name", ""))
        if kind == "sine_shear":
            offset = _nums(obj.get("offset", [0, 0]), f"{where}.offset")
            return SineShear(_num(obj, "amplitude", where), _num(obj, "frequency", where, 1),
                             _num(obj, "phase", where, 0), offset, obj.get("axis", "y"),
                             name=obj.get("name", ""))
    except CertificateError as exc:
        raise SpecError(f"certificate violation: {exc}", where) from exc
    except SpecError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise SpecError(str(exc), where) from exc
    raise SpecError(f"unknown primitive {kind!r}", f"{where}.type")


@dataclass
class ActionSpec:
    space: str
    presentation: GroupPresentation
    generator_maps: tuple[Map, ...]
    deck: tuple[Map, ...]
    options: dict = field(default_factory=dict)
    source: str = ""

    def assignment(self) -> ActionAssignment:
        return ActionAssignment(self.presentation, self.generator_maps, self.deck, space=self.space,
                                deck_kind="nilpotent" if self.space == "nil3" else "central",
                                name=self.source)

    def to_dict(self) -> dict:
        return {"space": self.space, "presentation": self.presentation.to_text(),
                "generator_maps": [m.to_json() for m in self.generator_maps],
                "deck": [m.to_json() for m in self.deck], "options": self.options,
                "source": self.source}


def _validate(spec: ActionSpec, check_maps: bool) -> ActionSpec:
    n = spec.presentation.generator_count
    if len(spec.generator_maps) != n:
        raise SpecError(f"presentation has {n} generators but {len(spec.generator_maps)} maps given",
                        "generator_maps")
    dim = SPACES[spec.space]
    for i, m in enumerate(spec.generator_maps):
        if m.dim != dim:
            raise SpecError(f"map acts on dimension {m.dim}, space {spec.space} needs {dim}",
                            f"generator_maps[{i}]")
    if check_maps:
        for i, m in enumerate(spec.generator_maps):
            for res in deck_normalization_check(m, spec.deck, bound=1, samples=16):
                if res.status == "not_deck":
                    raise SpecError(f"{m.label()} does not normalize the deck group of {spec.space}",
                                    f"generator_maps[{i}]")
    return spec


def from_catalog(name: str) -> ActionSpec:
    try:
        a = catalog.get(name)
    except (KeyError, ValueError) as exc:
        raise SpecError(str(exc), "catalog") from exc
    return ActionSpec(a.space, a.presentation, a.images, a.deck, source=f"catalog:{name}")


def parse_action_spec(text: str | dict, check_maps: bool = True) -> ActionSpec:
    """Parse a JSON action description or a bare catalog name."""
    if isinstance(text, str):
        stripped = text.strip()
        if not stripped.startswith("{"):
            return from_catalog(stripped)
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise SpecError(exc.msg, "json", exc.pos) from exc
    else:
        obj = text
    if "catalog" in obj:
        return from_catalog(obj["catalog"])
    space = obj.get("space")
    if space not in SPACES:
        raise SpecError(f"unknown space {space!r}; expected one of {sorted(SPACES)}", "space")
    try:
        p = parse_presentation(obj.get("presentation", ""))
    except PresentationParseError as exc:
        raise SpecError(str(exc), "presentation", exc.position) from exc
    maps = tuple(map_from_json(m, f"generator_maps[{i}]")
                 for i, m in enumerate(obj.get("generator_maps", [])))
    deck = (tuple(map_from_json(m, f"deck[{i}]") for i, m in enumerate(obj["deck"]))
            if "deck" in obj else default_deck(space))
    spec = ActionSpec(space, p, maps, deck, dict(obj.get("options", {})), source="json")
    return _validate(spec, check_maps)
