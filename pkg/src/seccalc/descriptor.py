"""JSON wire format for divisor classes.

``{"surface": {"kind": "P", "n": 2}, "degree": 9, "mults": [6, 6, 6]}``;
Hirzebruch classes use ``{"kind": "Hirzebruch", "e": 1}`` and
``"degree": {"a": 4, "b": 4}``.
"""

from __future__ import annotations

import json

from .lattice import DivisorClass, SurfaceModel


class DescriptorError(ValueError):
    pass


def _int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise DescriptorError(f"{what} must be an integer, got {value!r}")
    return value


def parse_surface(obj) -> SurfaceModel:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DescriptorError("surface must be an object with a 'kind'")
    kind = obj["kind"]
    try:
        if kind == "P":
            return SurfaceModel("P", n=_int(obj.get("n", 2), "n"))
        if kind == "Hirzebruch":
            return SurfaceModel("Hirzebruch", e=_int(obj.get("e"), "e"))
        if kind == "K3":
            return SurfaceModel("K3", n=_int(obj.get("n"), "n"))
    except DescriptorError:
        raise
    except ValueError as exc:
        raise DescriptorError(str(exc)) from exc
    raise DescriptorError(f"unknown surface kind {kind!r}")


def from_descriptor(obj) -> DivisorClass:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DescriptorError("a descriptor is a JSON object")
    missing = {"surface", "degree", "mults"} - obj.keys()
    if missing:
        raise DescriptorError(f"missing keys: {sorted(missing)}")
    surface = parse_surface(obj["surface"])
    deg = obj["degree"]
    if surface.kind == "Hirzebruch":
        if not isinstance(deg, dict) or set(deg) != {"a", "b"}:
            raise DescriptorError("Hirzebruch degree must be {'a': int, 'b': int}")
        degrees = (_int(deg["a"], "a"), _int(deg["b"], "b"))
    else:
        degrees = (_int(deg, "degree"),)
    mults = obj["mults"]
    if not isinstance(mults, list):
        raise DescriptorError("mults must be a list")
    return DivisorClass(surface, degrees, tuple(_int(m, "multiplicity") for m in mults))


def to_descriptor(L: DivisorClass) -> dict:
    s = L.surface
    if s.kind == "Hirzebruch":
        surface = {"kind": "Hirzebruch", "e": s.e}
        degree = {"a": L.degrees[0], "b": L.degrees[1]}
    else:
        surface = {"kind": s.kind, "n": s.n}
        degree = L.degrees[0]
    return {"surface": surface, "degree": degree, "mults": list(L.mults)}


def dumps(L: DivisorClass) -> str:
    return json.dumps(to_descriptor(L), separators=(",", ":"))
