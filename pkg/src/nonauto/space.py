"""Compact metric spaces built as finite unions of circles and intervals.

Coordinates are stored internally on an integer lattice: a circle is
``Z / LATTICE`` (one full turn is ``LATTICE`` units) and an interval
``[a, b]`` is ``{0, ..., LATTICE}``.  Expanding maps such as doubling or the
tent map are exact on this lattice, so their orbits never collapse onto 0
the way IEEE doubles do after ~53 iterations, and rotations preserve
lattice differences exactly.

``LATTICE = 720720 * P`` with ``P`` prime and 2 a primitive root mod ``P``;
the smooth factor makes rotations by 1/2, 1/3, ..., 1/16 of a turn exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, ResourceLimitError

LATTICE_PRIME = 6248750659
LATTICE = 720720 * LATTICE_PRIME
DEFAULT_NET_CAP = 10**7
TWO_PI = 2.0 * math.pi

PLANAR = "planar_circle"
WRAP = "wrap_circle"
INTERVAL = "interval"
KINDS = (PLANAR, WRAP, INTERVAL)


@dataclass(frozen=True)
class ComponentSpec:
    kind: str
    radius: float = 1.0
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown component kind {self.kind!r}; supported: {', '.join(KINDS)}")
        if self.kind == PLANAR and not self.radius > 0:
            raise InvalidInputError(f"planar_circle radius must be positive, got {self.radius}")
        if self.kind == INTERVAL and not self.a < self.b:
            raise InvalidInputError(f"interval needs a < b, got a={self.a}, b={self.b}")

    @property
    def is_circle(self) -> bool:
        return self.kind != INTERVAL

    @property
    def period(self) -> float:
        """Native coordinate length of the component (2*pi, 1 or b - a)."""
        if self.kind == PLANAR:
            return TWO_PI
        if self.kind == WRAP:
            return 1.0
        return self.b - self.a

    @property
    def diameter(self) -> float:
        if self.kind == PLANAR:
            return 2.0 * self.radius
        if self.kind == WRAP:
            return 0.5
        return self.b - self.a

    def to_dict(self) -> dict:
        if self.kind == PLANAR:
            return {"kind": PLANAR, "radius": self.radius}
        if self.kind == WRAP:
            return {"kind": WRAP}
        return {"kind": INTERVAL, "a": self.a, "b": self.b}


def planar_circle(radius: float = 1.0) -> ComponentSpec:
    return ComponentSpec(PLANAR, radius=float(radius))


def wrap_circle() -> ComponentSpec:
    return ComponentSpec(WRAP)


def interval(a: float = 0.0, b: float = 1.0) -> ComponentSpec:
    return ComponentSpec(INTERVAL, a=float(a), b=float(b))


@dataclass(frozen=True)
class Point:
    """A location in a space: component index plus native coordinate.

    Circle coordinates are angles in radians (planar) or turns in [0, 1)
    (wrap); interval coordinates are positions in [a, b].
    """

    component: int
    coord: float
    # exact lattice index when the point came out of the engine; makes replays bit-exact
    lattice: int | None = field(default=None, compare=False, repr=False)

    def __str__(self):
        return f"{self.component}:{self.coord!r}"


@dataclass(frozen=True)
class Batch:
    """Many points at once, as parallel arrays of component and lattice index."""

    comp: np.ndarray
    idx: np.ndarray

    def __len__(self):
        return len(self.idx)

    def take(self, sel) -> "Batch":
        return Batch(self.comp[sel], self.idx[sel])

    @staticmethod
    def concat(batches: Sequence["Batch"]) -> "Batch":
        return Batch(np.concatenate([b.comp for b in batches]), np.concatenate([b.idx for b in batches]))


@dataclass(frozen=True)
class SpaceSpec:
    components: tuple[ComponentSpec, ...]
    net_cap: int = DEFAULT_NET_CAP
    _arrays: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise InvalidInputError("a space needs at least one component")
        object.__setattr__(self, "components", comps)
        planar = np.array([c.kind == PLANAR for c in comps])
        arrays = {
            "planar": planar,
            "wrap": np.array([c.kind == WRAP for c in comps]),
            "interval": np.array([c.kind == INTERVAL for c in comps]),
            "circle": np.array([c.is_circle for c in comps]),
            "radius": np.array([c.radius if c.kind == PLANAR else 0.0 for c in comps]),
            "length": np.array([c.b - c.a if c.kind == INTERVAL else 1.0 for c in comps]),
        }
        object.__setattr__(self, "_arrays", arrays)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def gap(self) -> float:
        """Distance between points in different groups.

        All planar circles form one group (they share the ambient plane);
        every other component is its own group.  The gap dominates every
        group diameter so the union metric satisfies the triangle inequality.
        """
        diams = [1.0]
        radii = [c.radius for c in self.components if c.kind == PLANAR]
        if radii:
            diams.append(2.0 * max(radii))
        diams += [c.diameter for c in self.components if c.kind != PLANAR]
        return max(diams)

    @property
    def diameter(self) -> float:
        if self.connected:
            return self.components[0].diameter
        kinds = {c.kind for c in self.components}
        if kinds == {PLANAR}:
            return 2.0 * max(c.radius for c in self.components)
        return self.gap

    def to_dict(self) -> dict:
        return {"components": [c.to_dict() for c in self.components]}

    # -- coordinate conversion -------------------------------------------------

    def check_point(self, p: Point) -> None:
        if not isinstance(p, Point):
            raise InvalidInputError(f"expected a Point, got {p!r}")
        if not 0 <= p.component < len(self.components):
            raise InvalidInputError(
                f"component {p.component} out of range for a space with {len(self.components)} components"
            )
        c = self.components[p.component]
        if not math.isfinite(p.coord):
            raise InvalidInputError(f"non-finite coordinate {p.coord}")
        if c.kind == INTERVAL and not (c.a - 1e-12 <= p.coord <= c.b + 1e-12):
            raise InvalidInputError(f"coordinate {p.coord} outside interval [{c.a}, {c.b}]")

    def lattice_index(self, p: Point) -> int:
        self.check_point(p)
        c = self.components[p.component]
        if p.lattice is not None and 0 <= p.lattice <= (LATTICE if c.kind == INTERVAL else LATTICE - 1):
            return int(p.lattice)
        if c.kind == INTERVAL:
            frac = (p.coord - c.a) / (c.b - c.a)
            return min(max(round(frac * LATTICE), 0), LATTICE)
        return round((p.coord / c.period) % 1.0 * LATTICE) % LATTICE

    def coord_of(self, comp: int, idx: int) -> float:
        c = self.components[comp]
        if c.kind == INTERVAL:
            return c.a + (c.b - c.a) * (int(idx) / LATTICE)
        return c.period * (int(idx) / LATTICE)

    def point(self, comp: int, idx: int) -> Point:
        return Point(int(comp), self.coord_of(comp, idx), int(idx))

    def batch(self, points: Sequence[Point]) -> Batch:
        comp = np.array([p.component for p in points], dtype=np.int64)
        idx = np.array([self.lattice_index(p) for p in points], dtype=np.int64)
        return Batch(comp, idx)

    def points(self, batch: Batch) -> list[Point]:
        return [self.point(c, i) for c, i in zip(batch.comp.tolist(), batch.idx.tolist())]

    def normalize(self, p: Point) -> Point:
        return self.point(p.component, self.lattice_index(p))

    def ambient(self, comp: int, idx: int) -> tuple[float, float] | None:
        """Planar embedding (r cos t, r sin t) for planar circles, else None."""
        c = self.components[comp]
        if c.kind != PLANAR:
            return None
        t = TWO_PI * (int(idx) / LATTICE)
        return c.radius * math.cos(t), c.radius * math.sin(t)

    # -- metric ----------------------------------------------------------------

    def pair_distance(self, c1, i1, c2, i2) -> np.ndarray:
        """Elementwise (broadcasting) distance between lattice points."""
        c1, i1, c2, i2 = np.broadcast_arrays(
            np.asarray(c1, dtype=np.int64), np.asarray(i1, dtype=np.int64),
            np.asarray(c2, dtype=np.int64), np.asarray(i2, dtype=np.int64),
        )
        ar = self._arrays
        out = np.full(c1.shape, self.gap, dtype=float)
        same = c1 == c2
        pp = ar["planar"][c1] & ar["planar"][c2]
        if pp.any():
            d = np.abs(i1[pp] - i2[pp])
            d = np.minimum(d, LATTICE - d)
            s = np.sin(d * (math.pi / LATTICE))
            r1 = ar["radius"][c1[pp]]
            r2 = ar["radius"][c2[pp]]
            out[pp] = np.sqrt((r1 - r2) ** 2 + 4.0 * r1 * r2 * s * s)
        m = same & ar["wrap"][c1]
        if m.any():
            d = np.abs(i1[m] - i2[m])
            out[m] = np.minimum(d, LATTICE - d) / LATTICE
        m = same & ar["interval"][c1]
        if m.any():
            out[m] = np.abs(i1[m] - i2[m]) / LATTICE * ar["length"][c1[m]]
        return out

    def lower_bound(self, c1: int, c2: int) -> float:
        """Smallest possible distance between points of components c1 and c2."""
        if c1 == c2:
            return 0.0
        a, b = self.components[c1], self.components[c2]
        if a.kind == PLANAR and b.kind == PLANAR:
            return abs(a.radius - b.radius)
        return self.gap

    # -- lattice displacement --------------------------------------------------

    def lattice_offsets(self, comp: np.ndarray, dist: float) -> np.ndarray:
        """Per-point lattice step whose displacement is at most ``dist``."""
        comp = np.asarray(comp, dtype=np.int64)
        table = np.zeros(len(self.components), dtype=np.int64)
        for j, c in enumerate(self.components):
            if c.kind == WRAP:
                table[j] = LATTICE // 2 if dist >= 0.5 else math.floor(dist * LATTICE)
            elif c.kind == INTERVAL:
                table[j] = min(LATTICE, math.floor(dist / (c.b - c.a) * LATTICE))
            elif dist >= 2.0 * c.radius:
                table[j] = LATTICE // 2
            else:
                theta = 2.0 * math.asin(dist / (2.0 * c.radius))
                table[j] = math.floor(theta / TWO_PI * LATTICE)
        return table[comp]

    def shift(self, batch: Batch, offsets) -> tuple[Batch, np.ndarray]:
        """Move points along their component; returns new batch and validity mask."""
        idx = batch.idx + np.asarray(offsets, dtype=np.int64)
        circ = self._arrays["circle"][batch.comp]
        valid = circ | ((idx >= 0) & (idx <= LATTICE))
        idx = np.where(circ, np.mod(idx, LATTICE), np.clip(idx, 0, LATTICE))
        return Batch(batch.comp.copy(), idx), valid


def distance(space: SpaceSpec, p: Point, q: Point) -> float:
    i, j = space.lattice_index(p), space.lattice_index(q)
    return float(space.pair_distance(p.component, i, q.component, j))


def distance_matrix(space: SpaceSpec, a: Batch, b: Batch) -> np.ndarray:
    return space.pair_distance(a.comp[:, None], a.idx[:, None], b.comp[None, :], b.idx[None, :])


def _grid(count: int, closed: bool) -> np.ndarray:
    # round(j * LATTICE / m) without overflowing int64
    m = count - 1 if closed else count
    if m == 0:
        return np.zeros(1, dtype=np.int64)
    j = np.arange(count, dtype=np.int64)
    q, r = divmod(LATTICE, m)
    return j * q + (j * r + m // 2) // m


def _count(length: float, eps: float) -> int:
    return max(1, math.ceil(round(length / eps, 9)))


def net_batch(space: SpaceSpec, eps: float) -> Batch:
    if not eps > 0:
        raise InvalidInputError(f"net resolution must be positive, got {eps}")
    radii = [c.radius for c in space.components if c.kind == PLANAR]
    # planar circles share one angular grid so rotations carry the net onto itself
    n_planar = _count(TWO_PI * max(radii), eps) if radii else 0
    counts = []
    for c in space.components:
        if c.kind == PLANAR:
            counts.append(n_planar)
        elif c.kind == WRAP:
            counts.append(_count(1.0, eps))
        else:
            counts.append(_count(c.b - c.a, eps) + 1)
    total = sum(counts)
    if total > space.net_cap:
        raise ResourceLimitError(
            f"epsilon net at eps={eps} needs {total} points", f"net_cap={space.net_cap}"
        )
    comps, idxs = [], []
    for j, (c, n) in enumerate(zip(space.components, counts)):
        idxs.append(_grid(n, closed=c.kind == INTERVAL))
        comps.append(np.full(n, j, dtype=np.int64))
    return Batch(np.concatenate(comps), np.concatenate(idxs))


def epsilon_net(space: SpaceSpec, eps: float) -> list[Point]:
    """Deterministic finite set within ``eps`` of every point of the space."""
    return space.points(net_batch(space, eps))


def nearest_distances(space: SpaceSpec, targets: Batch, sources: Batch, chunk: int = 512) -> np.ndarray:
    """Distance from each target to its nearest source point."""
    if len(sources) == 0:
        raise InvalidInputError("nearest_distances needs at least one source point")
    out = np.full(len(targets), np.inf)
    circle = space._arrays["circle"]
    src_comps = np.unique(sources.comp)
    for ct in np.unique(targets.comp).tolist():
        tsel = np.flatnonzero(targets.comp == ct)
        tidx = targets.idx[tsel]
        best = np.full(len(tsel), np.inf)
        for cs in sorted(src_comps.tolist(), key=lambda c: space.lower_bound(ct, c)):
            if space.lower_bound(ct, cs) >= best.max():
                continue
            sidx = np.sort(sources.idx[sources.comp == cs])
            if cs == ct:
                # metric is monotone in lattice separation within a component
                pos = np.searchsorted(sidx, tidx)
                n = len(sidx)
                if circle[ct]:
                    cands = [sidx[pos % n], sidx[(pos - 1) % n]]
                else:
                    cands = [sidx[np.minimum(pos, n - 1)], sidx[np.maximum(pos - 1, 0)]]
                for cand in cands:
                    best = np.minimum(best, space.pair_distance(ct, tidx, ct, cand))
            else:
                for lo in range(0, len(tidx), chunk):
                    d = space.pair_distance(ct, tidx[lo:lo + chunk, None], cs, sidx[None, :])
                    best[lo:lo + chunk] = np.minimum(best[lo:lo + chunk], d.min(axis=1))
        out[tsel] = best
    return out


def set_diameters(space: SpaceSpec, comp: np.ndarray, idx: np.ndarray, valid: np.ndarray) -> np.ndarray:
    """Diameter of each row of an (n, m) array of point sets; invalid entries ignored."""
    d = space.pair_distance(comp[:, :, None], idx[:, :, None], comp[:, None, :], idx[:, None, :])
    mask = valid[:, :, None] & valid[:, None, :]
    return np.where(mask, d, 0.0).max(axis=(1, 2))


def diameter(space: SpaceSpec, pts: Sequence[Point]) -> float:
    if len(pts) == 0:
        raise InvalidInputError("diameter of an empty set is undefined")
    b = space.batch(pts)
    best = 0.0
    for lo in range(0, len(b), 1024):
        blk = b.take(slice(lo, lo + 1024))
        best = max(best, float(distance_matrix(space, blk, b).max()))
    return best


def random_batch(space: SpaceSpec, count: int, seed: int) -> Batch:
    """Seeded points: uniform component, then uniform lattice coordinate."""
    rng = np.random.default_rng(seed)
    comp = rng.integers(0, len(space.components), size=count).astype(np.int64)
    upper = np.where(space._arrays["circle"][comp], LATTICE, LATTICE + 1)
    idx = (rng.random(count) * upper).astype(np.int64)
    return Batch(comp, np.minimum(idx, upper - 1))
