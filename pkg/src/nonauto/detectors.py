"""Finite-horizon, witness-based detectors for the dynamical properties.

Limits at infinity are replaced by tail statistics over ``[window, N]``:
``liminf = 0`` becomes ``min < tau`` and ``limsup > delta`` becomes
``max > delta``.  Sweeps over centers and pairs are chunked with a fixed
chunk size and merged in index order, so results do not depend on the
number of worker threads.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .dynamics import Family, orbit_segment, reachable_components
from .errors import InvalidInputError, ResourceLimitError
from .space import (
    Batch,
    Point,
    SpaceSpec,
    distance_matrix,
    nearest_distances,
    net_batch,
    set_diameters,
)
from .verdict import Status, Verdict

PAIR_CHUNK = 4096
CENTER_CHUNK = 256


@dataclass(frozen=True)
class HorizonParams:
    """Finite-horizon stand-ins for the limits and constants of the definitions.

    ``window`` defaults to ``N // 2``.  ``ball_points`` is the number of
    samples per side of a neighborhood ball (the ball holds the center plus
    up to ``2 * (ball_points - 1)`` lattice neighbors).  ``workers`` only
    controls parallelism and never changes a result.
    """

    N: int = 1000
    eps_grid: float = 0.01
    tau: float = 1e-3
    delta: float = 0.1
    window: int | None = None
    seed: int = 0
    ball_points: int = 8
    scrambled_size: int = 10
    max_point_steps: int = 2 * 10**9
    workers: int = 1

    def __post_init__(self):
        if self.window is None:
            object.__setattr__(self, "window", self.N // 2)
        errors = []
        if self.N < 1:
            errors.append(f"N must be >= 1, got {self.N}")
        if not self.eps_grid > 0:
            errors.append(f"eps_grid must be positive, got {self.eps_grid}")
        if not 0 < self.tau < self.delta:
            errors.append(f"need 0 < tau < delta, got tau={self.tau}, delta={self.delta}")
        if not 0 <= self.window < max(self.N, 1):
            errors.append(f"window must lie in [0, N), got {self.window} with N={self.N}")
        if self.ball_points < 2:
            errors.append(f"ball_points must be >= 2, got {self.ball_points}")
        if self.scrambled_size < 2:
            errors.append(f"scrambled_size must be >= 2, got {self.scrambled_size}")
        if self.workers < 1:
            errors.append(f"workers must be >= 1, got {self.workers}")
        if errors:
            raise InvalidInputError("; ".join(errors))

    def replace(self, **changes) -> "HorizonParams":
        return dataclasses.replace(self, **changes)

    def stretched(self, k: int) -> "HorizonParams":
        """Same physical time span measured in steps of a k-times finer system."""
        return self.replace(N=self.N * k, window=self.window * k)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("workers")
        return d


def _check_budget(points: int, steps: int, params: HorizonParams, what: str):
    if points * steps > params.max_point_steps:
        raise ResourceLimitError(
            f"{what} needs {points} points x {steps} steps", f"max_point_steps={params.max_point_steps}"
        )


def _run_chunks(fn: Callable[[int, int], object], n: int, chunk: int, workers: int) -> list:
    bounds = [(lo, min(n, lo + chunk)) for lo in range(0, n, chunk)]
    if workers <= 1 or len(bounds) <= 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(lambda b: fn(*b), bounds))


def _ladder(top: float, floor: float) -> list[float]:
    rungs = [top]
    while rungs[-1] / 2 >= floor:
        rungs.append(rungs[-1] / 2)
    return rungs


# -- pair statistics -------------------------------------------------------------


@dataclass
class PairStats:
    """Per-pair distance statistics along the joint orbit.

    ``liminf``/``limsup`` and their first achieving indices are taken over
    ``[window, N]``; ``collide`` is the first index with distance exactly 0
    (-1 if none); ``constant`` is true when every distance in ``[0, N]``
    equals the initial one; ``first_above`` is the first index in ``[0, N]``
    with distance >= the optional threshold (-1 if none).
    """

    d0: np.ndarray
    liminf: np.ndarray
    n_inf: np.ndarray
    limsup: np.ndarray
    n_sup: np.ndarray
    collide: np.ndarray
    constant: np.ndarray
    first_above: np.ndarray

    @staticmethod
    def concat(parts: Sequence["PairStats"]) -> "PairStats":
        return PairStats(*(np.concatenate([getattr(p, f.name) for p in parts])
                           for f in dataclasses.fields(PairStats)))


def pair_stats(fam: Family, xs: Batch, ys: Batch, N: int, window: int,
               threshold: float | None = None, workers: int = 1) -> PairStats:
    sp = fam.space

    def run(lo, hi):
        a, b = xs.take(slice(lo, hi)), ys.take(slice(lo, hi))
        n_pairs = hi - lo
        joint = Batch.concat([a, b])
        d0 = sp.pair_distance(a.comp, a.idx, b.comp, b.idx)
        lo_v = np.full(n_pairs, np.inf)
        lo_n = np.full(n_pairs, -1, dtype=np.int64)
        hi_v = np.full(n_pairs, -np.inf)
        hi_n = np.full(n_pairs, -1, dtype=np.int64)
        collide = np.full(n_pairs, -1, dtype=np.int64)
        above = np.full(n_pairs, -1, dtype=np.int64)
        constant = np.ones(n_pairs, dtype=bool)
        for n, cur in fam.trajectory(joint, N):
            d = sp.pair_distance(cur.comp[:n_pairs], cur.idx[:n_pairs], cur.comp[n_pairs:], cur.idx[n_pairs:])
            constant &= d == d0
            hit = (collide < 0) & (d == 0.0)
            collide[hit] = n
            if threshold is not None:
                up = (above < 0) & (d >= threshold)
                above[up] = n
            if n >= window:
                better = d < lo_v
                lo_v[better], lo_n[better] = d[better], n
                worse = d > hi_v
                hi_v[worse], hi_n[worse] = d[worse], n
        return PairStats(d0, lo_v, lo_n, hi_v, hi_n, collide, constant, above)

    if len(xs) != len(ys):
        raise InvalidInputError("pair_stats needs equally many x and y points")
    return PairStats.concat(_run_chunks(run, len(xs), PAIR_CHUNK, workers))


def _pair_witness(sp: SpaceSpec, xs: Batch, ys: Batch, st: PairStats, i: int) -> dict:
    return {
        "x": sp.point(xs.comp[i], xs.idx[i]),
        "y": sp.point(ys.comp[i], ys.idx[i]),
        "n_liminf": int(st.n_inf[i]),
        "n_limsup": int(st.n_sup[i]),
        "collision_n": int(st.collide[i]),
    }


def _pair_measured(st: PairStats, i: int) -> dict:
    return {"liminf_est": float(st.liminf[i]), "limsup_est": float(st.limsup[i]), "initial_distance": float(st.d0[i])}


# -- neighborhoods ------------------------------------------------------------------


def ball_samples(sp: SpaceSpec, centers: Batch, radius: float, per_side: int, seed: int = 0):
    """Lattice samples of the open ball B(x, radius) around each center.

    Returns ``(comp, idx, valid)`` arrays of shape ``(n, 2 * per_side - 1)``;
    column ``per_side - 1`` is the center itself.  Offsets are jittered
    (seeded) inside their grid cells: an evenly spaced sample is an
    arithmetic progression, which linear maps such as doubling keep
    degenerate forever.
    """
    step = sp.lattice_offsets(centers.comp, radius / per_side).astype(float)
    js = np.arange(-(per_side - 1), per_side).astype(float)
    jitter = np.random.default_rng(seed).uniform(-0.5, 0.5, size=len(js))
    jitter[per_side - 1] = 0.0
    cols_c, cols_i, cols_v = [], [], []
    for j in (js + jitter).tolist():
        moved, valid = sp.shift(centers, np.rint(j * step).astype(np.int64))
        d = sp.pair_distance(centers.comp, centers.idx, moved.comp, moved.idx)
        cols_c.append(moved.comp)
        cols_i.append(moved.idx)
        cols_v.append(valid & ((d < radius) | (j == 0)))
    return np.stack(cols_c, axis=1), np.stack(cols_i, axis=1), np.stack(cols_v, axis=1)


@dataclass
class NeighborhoodSweep:
    """Per-center expansion record of sampled balls under the family.

    ``diam_max``/``n_max``: largest diameter over ``n in 1..N`` and its first
    index.  ``last_small[r]``: last ``n in 1..N`` with diameter <= ``rungs[r]``
    (0 if none).
    """

    centers: Batch
    diam0: np.ndarray
    diam_max: np.ndarray
    n_max: np.ndarray
    rungs: list[float]
    last_small: np.ndarray


def neighborhood_sweep(fam: Family, params: HorizonParams, rungs: Sequence[float]) -> NeighborhoodSweep:
    sp = fam.space
    centers = net_batch(sp, params.eps_grid)
    comp, idx, valid = ball_samples(sp, centers, params.eps_grid, params.ball_points, params.seed)
    width = comp.shape[1]
    _check_budget(len(centers) * width, params.N, params, "sensitivity sweep")
    thresholds = np.asarray(rungs, dtype=float)

    def run(lo, hi):
        c, i, v = comp[lo:hi], idx[lo:hi], valid[lo:hi]
        n_c = hi - lo
        diam0 = set_diameters(sp, c, i, v)
        best = np.full(n_c, -np.inf)
        n_best = np.zeros(n_c, dtype=np.int64)
        last = np.zeros((n_c, len(thresholds)), dtype=np.int64)
        flat = Batch(c.reshape(-1), i.reshape(-1))
        for n, cur in fam.trajectory(flat, params.N):
            if n == 0:
                continue
            dn = set_diameters(sp, cur.comp.reshape(n_c, width), cur.idx.reshape(n_c, width), v)
            up = dn > best
            best[up], n_best[up] = dn[up], n
            last[dn[:, None] <= thresholds[None, :]] = n
        return diam0, best, n_best, last

    parts = _run_chunks(run, len(centers), CENTER_CHUNK, params.workers)
    return NeighborhoodSweep(
        centers,
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
        np.concatenate([p[2] for p in parts]),
        list(rungs),
        np.concatenate([p[3] for p in parts]),
    )


def _sensitivity_rungs(sp: SpaceSpec, params: HorizonParams) -> list[float]:
    # a ball sample is already up to 2*eps_grid wide; only larger rungs show expansion
    return _ladder(sp.diameter, 2 * params.eps_grid)


# -- detectors ------------------------------------------------------------------------


def equicontinuity_check(fam: Family, eps: float, params: HorizonParams) -> Verdict:
    """Look for a rung delta of the ladder eps, eps/2, ... >= eps_grid that controls all sampled pairs."""
    if not eps > 0:
        raise InvalidInputError(f"eps must be positive, got {eps}")
    sp = fam.space
    centers = net_batch(sp, params.eps_grid)
    rungs = _ladder(eps, params.eps_grid)
    xs, ys, rung_of = [], [], []
    for r, delta in enumerate(rungs):
        off = sp.lattice_offsets(centers.comp, delta * (1 - 1 / params.ball_points))
        fwd, ok = sp.shift(centers, off)
        back, _ = sp.shift(centers, -off)
        partner = Batch(fwd.comp, np.where(ok, fwd.idx, back.idx))
        d0 = sp.pair_distance(centers.comp, centers.idx, partner.comp, partner.idx)
        keep = (d0 < delta) & (d0 > 0)
        xs.append(centers.take(keep))
        ys.append(partner.take(keep))
        rung_of.append(np.full(int(keep.sum()), r))
    xs, ys, rung_of = Batch.concat(xs), Batch.concat(ys), np.concatenate(rung_of)
    _check_budget(2 * len(xs), params.N, params, "equicontinuity sweep")
    st = pair_stats(fam, xs, ys, params.N, 0, threshold=eps, workers=params.workers)
    violated = st.first_above >= 0
    surviving = [delta for r, delta in enumerate(rungs) if not violated[rung_of == r].any()]
    measured = {"eps": eps, "rungs": rungs, "pairs": len(xs), "max_separation": float(st.limsup.max(initial=0.0))}
    if surviving:
        measured["delta"] = surviving[0]
        return Verdict("equicontinuity", Status.WITNESSED, {"delta": surviving[0]}, measured)
    last = len(rungs) - 1
    i = int(np.flatnonzero(violated & (rung_of == last))[0])
    n = int(st.first_above[i])
    witness = {
        "x": sp.point(xs.comp[i], xs.idx[i]),
        "y": sp.point(ys.comp[i], ys.idx[i]),
        "n": n,
        "delta": rungs[last],
        "initial_distance": float(st.d0[i]),
    }
    return Verdict("equicontinuity", Status.REFUTED, witness, measured)


def _sweep_measured(sw: NeighborhoodSweep) -> dict:
    return {
        "diam_initial": float(sw.diam0.max()),
        "diam_max": float(sw.diam_max.max()),
        "diam_worst_center": float(sw.diam_max.min()),
        "centers": len(sw.centers),
    }


def sensitivity_check(fam: Family, params: HorizonParams, sweep: NeighborhoodSweep | None = None) -> Verdict:
    """Largest ladder rung delta* that every sampled ball eventually exceeds.

    Never refutes: a ball that has not expanded by step N may still expand later.
    """
    sp = fam.space
    sw = sweep or neighborhood_sweep(fam, params, _sensitivity_rungs(sp, params))
    measured = _sweep_measured(sw)
    worst = int(np.argmin(sw.diam_max))
    good = [r for r in sw.rungs if sw.diam_max[worst] > r]
    if not good:
        return Verdict("sensitivity", Status.INCONCLUSIVE, None, measured)
    measured["delta_star"] = good[0]
    witness = {
        "delta_star": good[0],
        "worst_center": sp.point(sw.centers.comp[worst], sw.centers.idx[worst]),
        "n": int(sw.n_max[worst]),
        "diam": float(sw.diam_max[worst]),
    }
    return Verdict("sensitivity", Status.WITNESSED, witness, measured)


def cofinite_sensitivity_check(fam: Family, params: HorizonParams,
                               sweep: NeighborhoodSweep | None = None) -> Verdict:
    """Largest rung delta* with an index K <= window after which every ball stays wider than delta*."""
    sp = fam.space
    sw = sweep or neighborhood_sweep(fam, params, _sensitivity_rungs(sp, params))
    measured = _sweep_measured(sw)
    ks = sw.last_small.max(axis=0) + 1
    for r, delta in enumerate(sw.rungs):
        if ks[r] <= params.window:
            measured.update(delta_star=delta, K=int(ks[r]))
            return Verdict("cofinite_sensitivity", Status.WITNESSED, {"delta_star": delta, "K": int(ks[r])}, measured)
    measured["last_failure"] = int(ks[-1] - 1)
    return Verdict("cofinite_sensitivity", Status.INCONCLUSIVE, None, measured)


def proximal_check(fam: Family, x: Point, y: Point, params: HorizonParams) -> Verdict:
    sp = fam.space
    xb, yb = sp.batch([x]), sp.batch([y])
    if xb.comp[0] == yb.comp[0] and xb.idx[0] == yb.idx[0]:
        measured = {"liminf_est": 0.0, "limsup_est": 0.0, "initial_distance": 0.0}
        return Verdict("proximal", Status.WITNESSED, {"x": x, "y": y, "n_liminf": params.window, "diagonal": True},
                       measured, exact=True)
    st = pair_stats(fam, xb, yb, params.N, params.window)
    witness = _pair_witness(sp, xb, yb, st, 0)
    measured = _pair_measured(st, 0)
    if st.liminf[0] < params.tau:
        return Verdict("proximal", Status.WITNESSED, witness, measured, exact=bool(st.collide[0] >= 0))
    return Verdict("proximal", Status.INCONCLUSIVE, witness, measured)


def first_collision(fam: Family, pts: Batch, N: int):
    """Earliest step at which two distinct starting points land on the same point.

    Returns ``(n, i, j)`` with the lexicographically smallest pair at that
    step, or None.  Once merged, two orbits stay merged.
    """
    for n, cur in fam.trajectory(pts, N):
        if n == 0:
            continue
        order = np.lexsort((np.arange(len(cur)), cur.idx, cur.comp))
        c, i = cur.comp[order], cur.idx[order]
        dup = (c[1:] == c[:-1]) & (i[1:] == i[:-1])
        if not dup.any():
            continue
        # the sort breaks ties by start index, so each run of equal images begins with its smallest pair
        runs = [p for p in np.flatnonzero(dup).tolist() if p == 0 or not dup[p - 1]]
        i, j = min((int(order[p]), int(order[p + 1])) for p in runs)
        return n, i, j
    return None


def distality_check(fam: Family, params: HorizonParams) -> Verdict:
    """Scan all distinct pairs of the eps_grid net for proximality.

    Exact orbit collisions are searched first (earliest step wins) since
    they refute distality outright; otherwise the first pair in
    lexicographic order with tail minimum below tau is reported.
    """
    sp = fam.space
    net = net_batch(sp, params.eps_grid)
    n = len(net)
    _check_budget(n, params.N, params, "distality collision scan")
    hit = first_collision(fam, net, params.N)
    if hit is not None:
        step, i, j = hit
        x, y = sp.point(net.comp[i], net.idx[i]), sp.point(net.comp[j], net.idx[j])
        witness = {"x": x, "y": y, "collision_n": step, "i": i, "j": j}
        measured = {"liminf_est": 0.0, "pairs": n * (n - 1) // 2}
        return Verdict("distality", Status.REFUTED, witness, measured, exact=True)
    _check_budget(n * n, params.N - params.window + 1, params, "distality pair scan")
    running = np.full((n, n), np.inf)
    for step, cur in fam.trajectory(net, params.N):
        if step >= params.window:
            for lo in range(0, n, CENTER_CHUNK):
                blk = cur.take(slice(lo, lo + CENTER_CHUNK))
                np.minimum(running[lo:lo + CENTER_CHUNK], distance_matrix(sp, blk, cur),
                           out=running[lo:lo + CENTER_CHUNK])
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    prox = upper & (running < params.tau)
    initial = distance_matrix(sp, net, net)[upper]
    measured = {"pairs": int(upper.sum()), "min_pair_distance": float(initial.min(initial=np.inf))}
    if prox.any():
        i, j = map(int, np.argwhere(prox)[0])
        x, y = sp.point(net.comp[i], net.idx[i]), sp.point(net.comp[j], net.idx[j])
        measured["liminf_est"] = float(running[i, j])
        return Verdict("distality", Status.REFUTED, {"x": x, "y": y, "i": i, "j": j}, measured)
    vals = np.where(upper, running, np.inf)
    i, j = map(int, np.unravel_index(np.argmin(vals), vals.shape))
    measured["min_liminf_est"] = float(vals[i, j])
    witness = {"closest_x": sp.point(net.comp[i], net.idx[i]), "closest_y": sp.point(net.comp[j], net.idx[j])}
    return Verdict("distality", Status.WITNESSED, witness, measured)


def _check_delta(delta: float, params: HorizonParams):
    if not delta > params.tau:
        raise InvalidInputError(f"delta must exceed tau ({params.tau}), got {delta}")


def li_yorke_pair_check(fam: Family, x: Point, y: Point, delta: float, params: HorizonParams) -> Verdict:
    _check_delta(delta, params)
    sp = fam.space
    xb, yb = sp.batch([x]), sp.batch([y])
    st = pair_stats(fam, xb, yb, params.N, params.window)
    witness = _pair_witness(sp, xb, yb, st, 0)
    measured = _pair_measured(st, 0)
    ok = st.liminf[0] < params.tau and st.limsup[0] > delta
    return Verdict("li_yorke_pair", Status.WITNESSED if ok else Status.INCONCLUSIVE, witness, measured)


def scrambled_set_check(fam: Family, S: Sequence[Point], delta: float, params: HorizonParams) -> Verdict:
    """Every distinct pair of S must be a delta-scrambled pair.

    A pair whose distance never changes (isometry case) or whose orbits merge
    exactly cannot be scrambled, which refutes the set.
    """
    _check_delta(delta, params)
    if len(S) < 2:
        raise InvalidInputError(f"a scrambled-set candidate needs at least 2 points, got {len(S)}")
    sp = fam.space
    b = sp.batch(S)
    keys = set(zip(b.comp.tolist(), b.idx.tolist()))
    if len(keys) != len(S):
        raise InvalidInputError("scrambled-set candidate points must be pairwise distinct")
    ii, jj = np.triu_indices(len(S), k=1)
    xs, ys = b.take(ii), b.take(jj)
    st = pair_stats(fam, xs, ys, params.N, params.window, workers=params.workers)
    good = (st.liminf < params.tau) & (st.limsup > delta)
    measured = {
        "pairs": len(ii),
        "pairs_witnessed": int(good.sum()),
        "max_liminf_est": float(st.liminf.max()),
        "min_limsup_est": float(st.limsup.min()),
    }
    if good.all():
        return Verdict("scrambled_set", Status.WITNESSED, {"size": len(S)}, measured)
    stuck = ~good & (st.constant | (st.collide >= 0))
    if stuck.any():
        p = int(np.flatnonzero(stuck)[0])
        witness = _pair_witness(sp, xs, ys, st, p) | {"constant": bool(st.constant[p])}
        return Verdict("scrambled_set", Status.REFUTED, witness, measured | _pair_measured(st, p), exact=True)
    p = int(np.flatnonzero(~good)[0])
    return Verdict("scrambled_set", Status.INCONCLUSIVE, _pair_witness(sp, xs, ys, st, p),
                   measured | _pair_measured(st, p))


def li_yorke_sensitivity_check(fam: Family, delta: float, params: HorizonParams) -> Verdict:
    """Every sampled ball must contain a partner forming a delta-scrambled pair with its center."""
    _check_delta(delta, params)
    sp = fam.space
    centers = net_batch(sp, params.eps_grid)
    comp, idx, valid = ball_samples(sp, centers, params.eps_grid, params.ball_points, params.seed)
    mid = params.ball_points - 1
    valid[:, mid] = False
    rows, cols = np.nonzero(valid)
    xs = centers.take(rows)
    ys = Batch(comp[rows, cols], idx[rows, cols])
    _check_budget(2 * len(xs), params.N, params, "Li-Yorke sensitivity sweep")
    st = pair_stats(fam, xs, ys, params.N, params.window, workers=params.workers)
    good = (st.liminf < params.tau) & (st.limsup > delta)
    has = np.zeros(len(centers), dtype=bool)
    np.logical_or.at(has, rows, good)
    measured = {"centers": len(centers), "centers_with_partner": int(has.sum()), "delta": delta}
    if has.all():
        first = int(np.flatnonzero(good)[0])
        return Verdict("li_yorke_sensitivity", Status.WITNESSED, _pair_witness(sp, xs, ys, st, first), measured)
    c = int(np.flatnonzero(~has)[0])
    witness = {"center": sp.point(centers.comp[c], centers.idx[c])}
    return Verdict("li_yorke_sensitivity", Status.INCONCLUSIVE, witness, measured)


def minimality_evidence(fam: Family, x: Point, eps: float, N: int, stride: int = 1, offset: int = 0) -> Verdict:
    """Is the orbit segment eps-dense?  Unreachable components refute exactly."""
    if not eps > 0:
        raise InvalidInputError(f"eps must be positive, got {eps}")
    sp = fam.space
    orb = orbit_segment(fam, x, N, stride, offset)
    net = net_batch(sp, eps)
    gaps = nearest_distances(sp, net, orb.batch)
    visited = sorted(set(orb.comp.tolist()))
    measured = {"eps": eps, "N": N, "stride": stride, "offset": offset, "coverage_radius": float(gaps.max()),
                "components_visited": visited}
    if gaps.max() <= eps:
        return Verdict("minimality", Status.WITNESSED, {"start": x}, measured)
    reach = reachable_components(fam, x.component, stride, offset)
    unreached = sorted(set(range(len(sp.components))) - reach)
    if unreached:
        measured["structural"] = True
        return Verdict("minimality", Status.REFUTED, {"start": x, "unreached_components": unreached}, measured,
                       exact=True)
    far = int(np.argmax(gaps))
    return Verdict("minimality", Status.INCONCLUSIVE, {"start": x, "farthest": sp.point(net.comp[far], net.idx[far])},
                   measured)


@dataclass
class LimitClass:
    """Tail points of the residue-r subsequence omega(n*k + r)(x)."""

    residue: int
    points: Batch
    components: list[int]
    merged_with: list[int]

    def to_dict(self) -> dict:
        return {"residue": self.residue, "size": len(self.points), "components": self.components,
                "merged_with": self.merged_with}


def hausdorff(sp: SpaceSpec, a: Batch, b: Batch) -> float:
    return float(max(nearest_distances(sp, a, b).max(), nearest_distances(sp, b, a).max()))


def mod_k_limit_classes(fam: Family, x: Point, params: HorizonParams) -> list[LimitClass]:
    sp = fam.space
    k = fam.k
    orb = orbit_segment(fam, x, params.N)
    n = np.arange(params.N + 1)
    classes = []
    for r in range(1, k + 1):
        sel = (n >= params.window) & (n % k == r % k)
        pts = orb.batch.take(sel)
        classes.append(LimitClass(r, pts, sorted(set(pts.comp.tolist())), []))
    for a in range(k):
        for b in range(a + 1, k):
            if len(classes[a].points) and len(classes[b].points):
                if hausdorff(sp, classes[a].points, classes[b].points) < params.eps_grid:
                    classes[a].merged_with.append(b + 1)
                    classes[b].merged_with.append(a + 1)
    return classes
