from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .space import Point


class Status(str, Enum):
    WITNESSED = "witnessed"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"

    def __str__(self):
        return self.value


@dataclass
class Verdict:
    """Outcome of a finite-horizon detector.

    ``witnessed`` is evidence at the stated horizon and resolution, never a
    proof.  ``exact`` marks verdicts that hold beyond the horizon (diagonal
    pairs, orbit collisions, structural component invariance).
    """

    detector: str
    status: Status
    witness: dict | None = None
    measured: dict = field(default_factory=dict)
    exact: bool = False

    @property
    def decisive(self) -> bool:
        return self.status != Status.INCONCLUSIVE

    def to_dict(self) -> dict:
        return {
            "detector": self.detector,
            "status": self.status.value,
            "exact": self.exact,
            "measured": jsonable(self.measured),
            "witness": jsonable(self.witness),
        }


def jsonable(obj):
    """Convert numpy scalars, Points and nested containers into JSON types."""
    if isinstance(obj, Point):
        d = {"component": obj.component, "coord": float(obj.coord)}
        if obj.lattice is not None:
            d["lattice"] = obj.lattice
        return d
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj
