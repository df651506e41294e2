"""Builders for the bundled test corpora.

Run ``python -m seccalc.corpora`` to regenerate the JSON files shipped in
``seccalc/corpora/``.  Entries have the shape
``{"label": str, "descriptor": {...}, "expected": {"vdim"?, "dim"?, "special"}}``.
"""

from __future__ import annotations

import json
import random
from importlib import resources
from math import comb
from pathlib import Path

from .descriptor import to_descriptor
from .hirzebruch import LAFACE_TABLE, instantiate
from .lattice import K3, P, F, expected_dimension, make_class, virtual_dimension

BUNDLED = ("alexander-hirschowitz", "laface-table", "paper-examples")

# double-point systems on P^n that are special although d >= 3
QUARTIC_EXCEPTIONS = ((2, 4, 5), (3, 4, 9), (4, 4, 14), (4, 3, 7))

RANDOM_SEED = 20240601
RANDOM_COUNT = 40
MAX_COLUMNS = 84


def _entry(label, L, **expected):
    return {"label": label, "descriptor": to_descriptor(L), "expected": expected}


def alexander_hirschowitz_entries(seed: int = RANDOM_SEED, count: int = RANDOM_COUNT):
    out = []
    for n in range(2, 7):
        for h in range(2, n + 1):
            L = make_class(P(n), 2, (2,) * h)
            # quadric cones singular along the span of the points
            out.append(_entry(f"quadrics P{n} 2^{h}", L, vdim=virtual_dimension(L),
                              dim=comb(n - h + 2, 2) - 1, special=True))
    for n, d, h in QUARTIC_EXCEPTIONS:
        L = make_class(P(n), d, (2,) * h)
        out.append(_entry(f"exception P{n} d={d} 2^{h}", L, vdim=virtual_dimension(L),
                          dim=0, special=True))
    rng = random.Random(seed)
    seen = set()
    while len(seen) < count:
        n = rng.choice((2, 3, 4))
        d = rng.randint(3, {2: 11, 3: 6, 4: 4}[n])
        cols = comb(d + n, n)
        h = rng.randint(1, cols // (n + 1) + 2)
        if (n, d, h) in QUARTIC_EXCEPTIONS or (n, d, h) in seen or cols > MAX_COLUMNS:
            continue
        seen.add((n, d, h))
        L = make_class(P(n), d, (2,) * h)
        out.append(_entry(f"random P{n} d={d} 2^{h}", L, vdim=virtual_dimension(L),
                          dim=expected_dimension(L), special=False))
    return out


def laface_table_entries():
    """Every table row on the default grid, with the table's own columns."""
    out = []
    for row in LAFACE_TABLE:
        for params, L, vdim, dim in instantiate(row):
            tag = ",".join(f"{k}={v}" for k, v in params.items())
            out.append(_entry(f"{row.label} {tag}".strip(), L, vdim=vdim, dim=dim, special=True))
    return out


def worked_example_entries():
    return [
        _entry("three sextuple points", make_class(P(2), 9, (6, 6, 6)), vdim=-9, dim=0, special=True),
        _entry("double conic through two points", make_class(P(2), 2, (2, 2)), vdim=-1, dim=0,
               special=True),
        _entry("line through two points", make_class(P(2), 1, (1, 1)), vdim=0, dim=0, special=False),
        _entry("quartics with two double points", make_class(P(2), 4, (2, 2)), vdim=8, dim=8,
               special=False),
        _entry("cubics through three points", make_class(P(2), 3, (1, 1, 1)), vdim=6, dim=6,
               special=False),
        _entry("double conic through five points", make_class(P(2), 4, (2,) * 5), vdim=-1, dim=0,
               special=True),
        _entry("double quadric in P3", make_class(P(3), 4, (2,) * 9), vdim=-2, dim=0, special=True),
        _entry("quadric in P3", make_class(P(3), 2, (1,) * 9), vdim=0, dim=0, special=False),
        _entry("double quadric in P4", make_class(P(4), 4, (2,) * 14), vdim=-1, dim=0, special=True),
        _entry("F1 double points", make_class(F(1), (4, 4), (2,) * 5), vdim=-1, dim=0, special=True),
        _entry("K3 degree 2 family d=3", make_class(K3(2), 3, (3, 3)), vdim=-2, special=True),
        _entry("K3 degree 4 family d=3", make_class(K3(4), 3, (6,)), vdim=-2, special=True),
    ]


BUILDERS = {
    "alexander-hirschowitz": alexander_hirschowitz_entries,
    "laface-table": laface_table_entries,
    "paper-examples": worked_example_entries,
}


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("seccalc") / "corpora" / f"{name}.json"))


def load(path_or_name: str):
    """Load a corpus from a file path, or by the name of a bundled corpus."""
    name = path_or_name[:-5] if path_or_name.endswith(".json") else path_or_name
    path = bundled_path(name) if name in BUNDLED and not Path(path_or_name).exists() \
        else Path(path_or_name)
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError(f"{path}: a corpus is a JSON list of entries")
    return data


def write_bundled(directory: Path | None = None):
    directory = directory or bundled_path(BUNDLED[0]).parent
    directory.mkdir(parents=True, exist_ok=True)
    for name, build in BUILDERS.items():
        text = json.dumps(build(), indent=1, separators=(",", ": "))
        (directory / f"{name}.json").write_text(text + "\n", encoding="utf-8")


if __name__ == "__main__":
    write_bundled()
