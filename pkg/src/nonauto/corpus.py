"""Built-in systems, addressable by name from the CLI and the tests."""

from __future__ import annotations

import copy
from pathlib import Path

from .specfile import SystemSpecFile, build, parse_spec

WRAP = {"components": [{"kind": "wrap_circle"}]}
UNIT = {"components": [{"kind": "interval", "a": 0.0, "b": 1.0}]}
TWO_CIRCLES = {"components": [{"kind": "planar_circle", "radius": 1.0}, {"kind": "planar_circle", "radius": 2.0}]}

# f_1 sends S_1 -> S_2 rotating by alpha and S_2 -> S_1 rotating by 2 alpha; f_2 swaps the angles
SWAP_F1 = {"kind": "rotation_swap", "targets": [1, 0], "angles": ["irrational", "2*irrational"], "label": "f1"}
SWAP_F2 = {"kind": "rotation_swap", "targets": [1, 0], "angles": ["2*irrational", "irrational"], "label": "f2"}

SYSTEMS = {
    "paper-example": {
        "space": TWO_CIRCLES,
        "family": [SWAP_F1, SWAP_F2],
        "params": {"N": 1000, "eps_grid": 0.05},
    },
    "two-circle-f1": {
        "space": TWO_CIRCLES,
        "family": [SWAP_F1],
        "params": {"N": 1000, "eps_grid": 0.05},
    },
    "doubling1": {"space": WRAP, "family": [{"kind": "doubling"}]},
    "doubling2": {"space": WRAP, "family": [{"kind": "doubling"}, {"kind": "doubling"}]},
    "doubling-tent": {"space": WRAP, "family": [{"kind": "doubling"}, {"kind": "tent"}]},
    "tent2": {"space": UNIT, "family": [{"kind": "tent"}, {"kind": "tent"}]},
    "rot-irrational": {"space": WRAP, "family": [{"kind": "rigid_rotation", "angle": "irrational"}]},
    "rot-rational": {"space": WRAP, "family": [{"kind": "rigid_rotation", "angle": 1 / 3}]},
    "rot-pair": {
        "space": WRAP,
        "family": [{"kind": "rigid_rotation", "angle": "irrational"},
                   {"kind": "rigid_rotation", "angle": 0.41421356237309503}],
    },
    "identity": {"space": WRAP, "family": [{"kind": "identity"}]},
    "half-contraction": {"space": UNIT, "family": [{"kind": "affine", "slope": 0.5, "intercept": 0.0}]},
}

ROTATION_SYSTEMS = ("rot-irrational", "rot-rational", "rot-pair")


def names() -> list[str]:
    return sorted(SYSTEMS)


def spec_data(name: str) -> dict:
    if name not in SYSTEMS:
        raise KeyError(f"unknown corpus system {name!r}; available: {', '.join(names())}")
    return {"name": name} | copy.deepcopy(SYSTEMS[name])


def load(name: str) -> SystemSpecFile:
    return build(spec_data(name), name)


def load_system(name_or_path: str) -> SystemSpecFile:
    """Corpus name, or a path to a JSON spec file."""
    if name_or_path in SYSTEMS:
        return load(name_or_path)
    if Path(name_or_path).exists():
        return parse_spec(name_or_path)
    raise KeyError(f"{name_or_path!r} is neither a corpus system ({', '.join(names())}) nor a readable file")
