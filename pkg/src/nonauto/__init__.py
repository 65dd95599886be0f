"""Numerical lab for non-autonomous systems generated by a finite family of maps."""

__version__ = "0.1.0"

from .detectors import HorizonParams
from .dynamics import Family, MapSpec, apply, composed, omega, orbit_segment, power, prefix_block, suffix_block
from .space import Point, SpaceSpec, diameter, distance, epsilon_net
from .verdict import Status, Verdict

__all__ = [
    "Family", "HorizonParams", "MapSpec", "Point", "SpaceSpec", "Status", "Verdict",
    "apply", "composed", "diameter", "distance", "epsilon_net", "omega", "orbit_segment",
    "power", "prefix_block", "suffix_block",
]
