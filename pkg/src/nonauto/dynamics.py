"""Maps, finitely generated families and the non-autonomous orbit engine.

A family ``(f_1, ..., f_k)`` is applied cyclically: step ``n`` uses
``f_{((n-1) mod k) + 1}``, so ``omega(F, n, x) = f_n(...f_1(x))`` and ``k``
family steps equal one step of the composed map ``f = f_k o ... o f_1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .space import (
    INTERVAL,
    LATTICE,
    PLANAR,
    Batch,
    Point,
    SpaceSpec,
    nearest_distances,
    net_batch,
)
from .verdict import Status, Verdict

MAP_KINDS = ("identity", "rigid_rotation", "rotation_swap", "doubling", "tent", "affine", "composition")



def _unit_near(target: int) -> int:
    # nearest shift coprime to the lattice size: its rotation cycles through every lattice point
    for d in range(LATTICE):
        for s in (target + d, target - d):
            if math.gcd(s, LATTICE) == 1:
                return s
    raise AssertionError("unreachable")


# golden-ratio conjugate (sqrt(5) - 1) / 2 of a turn, on the lattice
GOLDEN_SHIFT = _unit_near((math.isqrt(5 * LATTICE * LATTICE) - LATTICE) // 2)
DEFAULT_ALPHA = math.pi * (math.sqrt(5.0) - 1.0)
DEFAULT_MAX_STEPS = 10**8
_MAX_INT_SLOPE = 1024


@dataclass(frozen=True)
class IrrationalAngle:
    """``multiple`` times the default irrational rotation, kept exact on the lattice."""

    multiple: int = 1

    @property
    def shift(self) -> int:
        return (self.multiple * GOLDEN_SHIFT) % LATTICE

    def __str__(self):
        return "irrational" if self.multiple == 1 else f"{self.multiple}*irrational"


ALPHA = IrrationalAngle(1)


def angle_shift(space: SpaceSpec, comp: int, angle) -> int:
    """Lattice shift for an angle in the component's native unit."""
    if isinstance(angle, IrrationalAngle):
        return angle.shift
    c = space.components[comp]
    return round((float(angle) / c.period) % 1.0 * LATTICE) % LATTICE


@dataclass(frozen=True, eq=False)
class MapSpec:
    """A continuous self-map of ``space`` from one of the built-in kinds.

    Rotation amounts are stored as lattice shifts per source component.
    ``parts`` of a composition are applied first to last.
    """

    kind: str
    space: SpaceSpec
    shifts: tuple[int, ...] = ()
    targets: tuple[int, ...] = ()
    slope: float = 1.0
    intercept: float = 0.0
    parts: tuple["MapSpec", ...] = ()
    label: str = ""

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise InvalidInputError(f"unknown map kind {self.kind!r}; supported: {', '.join(MAP_KINDS)}")
        comps = self.space.components
        n = len(comps)
        if self.kind in ("rigid_rotation", "rotation_swap") and len(self.shifts) != n:
            raise InvalidInputError(f"{self.kind} needs one angle per component ({n}), got {len(self.shifts)}")
        if self.kind == "rigid_rotation":
            for j, (c, s) in enumerate(zip(comps, self.shifts)):
                if c.kind == INTERVAL and s % LATTICE:
                    raise InvalidInputError(f"rigid_rotation cannot rotate interval component {j}")
        if self.kind == "rotation_swap":
            if len(self.targets) != n:
                raise InvalidInputError(f"rotation_swap needs one target per component ({n})")
            for j, t in enumerate(self.targets):
                if not 0 <= t < n:
                    raise InvalidInputError(f"rotation_swap target {t} out of range")
                if not (comps[j].is_circle and comps[t].is_circle):
                    raise InvalidInputError(f"rotation_swap maps circles to circles; component {j} -> {t}")
        if self.kind == "doubling" and not all(c.is_circle for c in comps):
            raise InvalidInputError("doubling is only defined on circle components")
        if self.kind == "affine":
            for j, c in enumerate(comps):
                if c.is_circle:
                    if self.slope != int(self.slope) or abs(self.slope) >= _MAX_INT_SLOPE:
                        raise InvalidInputError(
                            f"affine on circle component {j} needs an integer slope below {_MAX_INT_SLOPE}"
                        )
                else:
                    tol = 1e-12 * (c.b - c.a)
                    for x in (c.a, c.b):
                        y = self.slope * x + self.intercept
                        if not c.a - tol <= y <= c.b + tol:
                            raise InvalidInputError(
                                f"affine map sends {x} to {y}, outside interval component {j} [{c.a}, {c.b}]"
                            )
        if self.kind == "composition":
            if not self.parts:
                raise InvalidInputError("composition needs at least one part")
            if any(p.space != self.space for p in self.parts):
                raise InvalidInputError("composition parts must share one space")

    # -- structure -------------------------------------------------------------

    @cached_property
    def component_map(self) -> tuple[int, ...]:
        """Image component of each component (all kinds act component-wise)."""
        n = len(self.space.components)
        if self.kind == "rotation_swap":
            return tuple(self.targets)
        if self.kind == "composition":
            cm = tuple(range(n))
            for p in self.parts:
                cm = tuple(p.component_map[c] for c in cm)
            return cm
        return tuple(range(n))

    @cached_property
    def _tables(self):
        sp = self.space
        shifts = np.array(self.shifts or [0] * len(sp.components), dtype=np.int64)
        targets = np.array(self.component_map, dtype=np.int64)
        inter = np.zeros(len(sp.components), dtype=float)
        for j, c in enumerate(sp.components):
            if c.is_circle:
                inter[j] = round((self.intercept / c.period) % 1.0 * LATTICE) % LATTICE
            else:
                inter[j] = (self.slope * c.a + self.intercept - c.a) / (c.b - c.a) * LATTICE
        return shifts, targets, inter, sp._arrays["circle"]

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.kind == "composition":
            return "(" + " then ".join(p.describe() for p in self.parts) + ")"
        return self.kind

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind in ("rigid_rotation", "rotation_swap"):
            d["shifts"] = list(self.shifts)
        if self.kind == "rotation_swap":
            d["targets"] = list(self.targets)
        if self.kind == "affine":
            d["slope"], d["intercept"] = self.slope, self.intercept
        if self.kind == "composition":
            d["parts"] = [p.to_dict() for p in self.parts]
        if self.label:
            d["label"] = self.label
        return d

    # -- evaluation ------------------------------------------------------------

    def step(self, b: Batch) -> Batch:
        kind = self.kind
        if kind == "identity":
            return b
        if kind == "composition":
            for p in self.parts:
                b = p.step(b)
            return b
        shifts, targets, inter, circle = self._tables
        comp, idx = b.comp, b.idx
        if kind == "rigid_rotation":
            return Batch(comp, (idx + shifts[comp]) % LATTICE)
        if kind == "rotation_swap":
            return Batch(targets[comp], (idx + shifts[comp]) % LATTICE)
        if kind == "doubling":
            return Batch(comp, (2 * idx) % LATTICE)
        circ = circle[comp]
        if kind == "tent":
            t = 2 * idx
            t = np.where(t <= LATTICE, t, 2 * LATTICE - t)
            return Batch(comp, np.where(circ, t % LATTICE, t))
        # affine
        s = self.slope
        on_circle = (int(s) * idx + inter[comp].astype(np.int64)) % LATTICE
        on_interval = np.clip(np.rint(s * idx + inter[comp]), 0, LATTICE).astype(np.int64)
        return Batch(comp, np.where(circ, on_circle, on_interval))


def identity(space: SpaceSpec) -> MapSpec:
    return MapSpec("identity", space, label="identity")


def rigid_rotation(space: SpaceSpec, angles, label: str = "") -> MapSpec:
    """Rotate every circle component; ``angles`` is one value or one per component.

    Angles are radians on planar circles and turns on wrap circles; an
    :class:`IrrationalAngle` gives an exact multiple of the default angle.
    """
    n = len(space.components)
    if not isinstance(angles, (list, tuple)):
        angles = [0.0 if c.kind == INTERVAL else angles for c in space.components]
    if len(angles) != n:
        raise InvalidInputError(f"rigid_rotation needs one angle per component ({n})")
    shifts = tuple(angle_shift(space, j, a) for j, a in enumerate(angles))
    return MapSpec("rigid_rotation", space, shifts=shifts, label=label or f"rotation{list(map(str, angles))}")


def rotation_swap(space: SpaceSpec, targets: Sequence[int], angles: Sequence, label: str = "") -> MapSpec:
    """Send component ``j`` to ``targets[j]`` while rotating by ``angles[j]``."""
    if len(angles) != len(space.components):
        raise InvalidInputError(f"rotation_swap needs one angle per component ({len(space.components)})")
    shifts = tuple(angle_shift(space, j, a) for j, a in enumerate(angles))
    return MapSpec("rotation_swap", space, shifts=shifts, targets=tuple(int(t) for t in targets), label=label)


def doubling(space: SpaceSpec) -> MapSpec:
    return MapSpec("doubling", space, label="doubling")


def tent(space: SpaceSpec) -> MapSpec:
    return MapSpec("tent", space, label="tent")


def affine(space: SpaceSpec, slope: float, intercept: float = 0.0) -> MapSpec:
    return MapSpec("affine", space, slope=float(slope), intercept=float(intercept),
                   label=f"affine({slope:g}, {intercept:g})")


def compose(parts: Sequence[MapSpec], label: str = "") -> MapSpec:
    """Map applying ``parts[0]`` first and ``parts[-1]`` last."""
    parts = tuple(parts)
    if len(parts) == 1 and not label:
        return parts[0]
    if not parts:
        raise InvalidInputError("cannot compose an empty list of maps")
    return MapSpec("composition", parts[0].space, parts=parts, label=label)


@dataclass(frozen=True, eq=False)
class Family:
    maps: tuple[MapSpec, ...]
    space: SpaceSpec
    name: str = ""

    def __post_init__(self):
        maps = tuple(self.maps)
        object.__setattr__(self, "maps", maps)
        if not maps:
            raise InvalidInputError("a family needs at least one map")
        for m in maps:
            if m.space != self.space:
                raise InvalidInputError("all maps of a family must act on the family's space")

    @property
    def k(self) -> int:
        return len(self.maps)

    def map_for_step(self, n: int) -> MapSpec:
        return self.maps[(n - 1) % self.k]

    def advance(self, b: Batch, start: int, steps: int) -> Batch:
        """Apply steps ``start+1 .. start+steps`` to a batch."""
        for n in range(start + 1, start + steps + 1):
            b = self.maps[(n - 1) % self.k].step(b)
        return b

    def trajectory(self, b: Batch, horizon: int) -> Iterator[tuple[int, Batch]]:
        yield 0, b
        for n in range(1, horizon + 1):
            b = self.maps[(n - 1) % self.k].step(b)
            yield n, b

    def to_dict(self) -> dict:
        return {"name": self.name, "space": self.space.to_dict(), "maps": [m.to_dict() for m in self.maps]}


def family(maps: Sequence[MapSpec], name: str = "") -> Family:
    maps = tuple(maps)
    if not maps:
        raise InvalidInputError("a family needs at least one map")
    return Family(maps, maps[0].space, name)


def singleton(m: MapSpec, name: str = "") -> Family:
    return Family((m,), m.space, name)


def apply(m: MapSpec, x: Point) -> Point:
    sp = m.space
    b = m.step(sp.batch([x]))
    return sp.point(b.comp[0], b.idx[0])


def omega(fam: Family, n: int, x: Point) -> Point:
    if n < 0:
        raise InvalidInputError(f"omega needs n >= 0, got {n}")
    b = fam.advance(fam.space.batch([x]), 0, n)
    return fam.space.point(b.comp[0], b.idx[0])


def composed(fam: Family) -> MapSpec:
    """The autonomous map f = f_k o ... o f_1."""
    return compose(fam.maps, label="" if fam.k == 1 else "composed")


def prefix_block(fam: Family, r: int) -> MapSpec:
    """g_r = f_r o ... o f_1 for 1 <= r <= k."""
    if not 1 <= r <= fam.k:
        raise InvalidInputError(f"prefix block index must be in 1..{fam.k}, got {r}")
    return compose(fam.maps[:r])


def suffix_block(fam: Family, r: int) -> MapSpec:
    """h_r = f_k o ... o f_{k-r} for 0 <= r <= k-1."""
    if not 0 <= r <= fam.k - 1:
        raise InvalidInputError(f"suffix block index must be in 0..{fam.k - 1}, got {r}")
    return compose(fam.maps[fam.k - 1 - r:])


def power(m: MapSpec, times: int) -> MapSpec:
    if times < 1:
        raise InvalidInputError(f"power needs m >= 1, got {times}; use identity() for m = 0")
    return compose([m] * times)


@dataclass(frozen=True)
class Orbit:
    """Entries ``n = 0..horizon`` hold ``omega(offset + n * stride)(start)``."""

    start: Point
    space: SpaceSpec
    comp: np.ndarray
    idx: np.ndarray
    stride: int = 1
    offset: int = 0

    @property
    def horizon(self) -> int:
        return len(self.idx) - 1

    @property
    def batch(self) -> Batch:
        return Batch(self.comp, self.idx)

    @property
    def points(self) -> list[Point]:
        return self.space.points(self.batch)

    def times(self) -> np.ndarray:
        return self.offset + self.stride * np.arange(len(self.idx))


def orbit_segment(fam: Family, x: Point, N: int, stride: int = 1, offset: int = 0,
                  max_steps: int = DEFAULT_MAX_STEPS) -> Orbit:
    if N < 1 or stride < 1 or offset < 0:
        raise InvalidInputError(f"orbit_segment needs N >= 1, stride >= 1, offset >= 0 (got {N}, {stride}, {offset})")
    total = offset + N * stride
    if total > max_steps:
        raise ResourceLimitError(f"orbit needs {total} map applications", f"max_steps={max_steps}")
    sp = fam.space
    comp, idx = _scalar_orbit(fam, sp.lattice_index(x), x.component, N, stride, offset)
    return Orbit(x, sp, comp, idx, stride, offset)


def _scalar_orbit(fam: Family, i0: int, c0: int, N: int, stride: int, offset: int):
    comp = np.empty(N + 1, dtype=np.int64)
    idx = np.empty(N + 1, dtype=np.int64)
    b = Batch(np.array([c0], dtype=np.int64), np.array([i0], dtype=np.int64))
    b = fam.advance(b, 0, offset)
    comp[0], idx[0] = b.comp[0], b.idx[0]
    n = offset
    for j in range(1, N + 1):
        b = fam.advance(b, n, stride)
        n += stride
        comp[j], idx[j] = b.comp[0], b.idx[0]
    return comp, idx


def reachable_components(fam: Family, start_comp: int, stride: int = 1, offset: int = 0) -> set[int]:
    """Components visited by ``omega(offset + j*stride)`` for all j >= 0.

    Every map kind moves whole components, so this is exact and independent
    of the coordinate; the (component, phase) state space has at most
    ``C * k`` states, which bounds the enumeration.
    """
    k = fam.k
    tables = [m.component_map for m in fam.maps]
    c, n = start_comp, 0
    for _ in range(offset):
        n += 1
        c = tables[(n - 1) % k][c]
    seen_states, visited = set(), set()
    while (c, n % k) not in seen_states:
        seen_states.add((c, n % k))
        visited.add(c)
        for _ in range(stride):
            n += 1
            c = tables[(n - 1) % k][c]
    return visited


def check_surjectivity(m: MapSpec, eps: float) -> Verdict:
    """Witnessed when the image of an eps/2-net comes within eps of every net point."""
    if not eps > 0:
        raise InvalidInputError(f"eps must be positive, got {eps}")
    sp = m.space
    net = net_batch(sp, eps / 2)
    image = m.step(net)
    gaps = nearest_distances(sp, net, image)
    worst = int(np.argmax(gaps))
    measured = {"eps": eps, "max_gap": float(gaps[worst]), "net_size": len(net)}
    if gaps[worst] <= eps:
        return Verdict("surjectivity", Status.WITNESSED, None, measured)
    bad = int(np.flatnonzero(gaps > eps)[0])
    witness = {"point": sp.point(net.comp[bad], net.idx[bad]), "gap": float(gaps[bad])}
    return Verdict("surjectivity", Status.REFUTED, witness, measured)
