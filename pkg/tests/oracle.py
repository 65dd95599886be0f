"""Brute-force reference computations for doubling on the wrap circle.

Pure Python integers and explicit double loops; nothing here calls into the
package except to read the lattice size.  Sampling rules (net spacing,
jittered ball offsets) are re-derived from their documented definitions.
"""

from __future__ import annotations

import math

import numpy as np

from nonauto.space import LATTICE as M


def dist(a: int, b: int) -> float:
    d = abs(a - b)
    return min(d, M - d) / M


def double(i: int) -> int:
    return (2 * i) % M


def net(eps: float) -> list[int]:
    m = max(1, math.ceil(round(1.0 / eps, 9)))
    return [(j * M + m // 2) // m for j in range(m)]


def ball(center: int, radius: float, per_side: int, seed: int) -> list[int]:
    step = math.floor(radius / per_side * M)
    rng = np.random.default_rng(seed)
    jitter = rng.uniform(-0.5, 0.5, size=2 * per_side - 1).tolist()
    out = []
    for col in range(2 * per_side - 1):
        j = col - (per_side - 1)
        if j == 0:
            out.append(center)
            continue
        off = round((j + jitter[col]) * float(step))
        y = (center + off) % M
        if dist(center, y) < radius:
            out.append(y)
    return out


def set_diameter(pts: list[int]) -> float:
    best = 0.0
    for a in range(len(pts)):
        for b in range(len(pts)):
            best = max(best, dist(pts[a], pts[b]))
    return best


def pair_record(x: int, y: int, N: int, window: int) -> dict:
    lo, n_lo, hi, n_hi, collide = math.inf, -1, -math.inf, -1, -1
    for n in range(N + 1):
        d = dist(x, y)
        if collide < 0 and d == 0.0:
            collide = n
        if n >= window:
            if d < lo:
                lo, n_lo = d, n
            if d > hi:
                hi, n_hi = d, n
        x, y = double(x), double(y)
    return {"liminf": lo, "n_inf": n_lo, "limsup": hi, "n_sup": n_hi, "collide": collide}


def sensitivity(eps_grid: float, N: int, per_side: int, seed: int) -> dict:
    """Per-center ball expansion; returns the worst center's record and the ladder answer."""
    rungs = [0.5]
    while rungs[-1] / 2 >= 2 * eps_grid:
        rungs.append(rungs[-1] / 2)
    centers = net(eps_grid)
    records = []
    for c in centers:
        pts = ball(c, eps_grid, per_side, seed)
        d_max, n_max = -math.inf, 0
        last_small = [0] * len(rungs)
        for n in range(1, N + 1):
            pts = [double(p) for p in pts]
            d = set_diameter(pts)
            if d > d_max:
                d_max, n_max = d, n
            for r, rung in enumerate(rungs):
                if d <= rung:
                    last_small[r] = n
        records.append((d_max, n_max, last_small))
    worst = min(range(len(centers)), key=lambda j: (records[j][0], j))
    good = [r for r in rungs if records[worst][0] > r]
    ks = [max(rec[2][r] for rec in records) + 1 for r in range(len(rungs))]
    return {
        "worst": centers[worst],
        "diam_worst": records[worst][0],
        "n_worst": records[worst][1],
        "diam_max": max(rec[0] for rec in records),
        "delta_star": good[0] if good else None,
        "rungs": rungs,
        "K": ks,
    }


def first_collision(points: list[int], N: int):
    cur = list(points)
    for n in range(1, N + 1):
        cur = [double(p) for p in cur]
        for i in range(len(cur)):
            for j in range(i + 1, len(cur)):
                if cur[i] == cur[j]:
                    return n, i, j
    return None
