"""Random families for property tests: corpus map kinds on the corpus spaces."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from nonauto import dynamics as dyn
from nonauto.space import SpaceSpec, interval, planar_circle, wrap_circle

WRAP = SpaceSpec((wrap_circle(),))
UNIT = SpaceSpec((interval(0.0, 1.0),))
TWO_CIRCLES = SpaceSpec((planar_circle(1.0), planar_circle(2.0)))
SPACES = (WRAP, UNIT, TWO_CIRCLES)


def random_map(sp: SpaceSpec, rng: np.random.Generator) -> dyn.MapSpec:
    if sp is TWO_CIRCLES:
        if rng.random() < 0.5:
            angles = [dyn.IrrationalAngle(int(rng.integers(1, 4))), float(rng.uniform(0, 6.3))]
            return dyn.rotation_swap(sp, [1, 0], angles)
        return dyn.rigid_rotation(sp, [float(rng.uniform(0, 6.3)), dyn.IrrationalAngle(1)])
    if sp is UNIT:
        choice = rng.integers(3)
        if choice == 0:
            return dyn.tent(sp)
        if choice == 1:
            return dyn.affine(sp, float(rng.uniform(0.1, 1.0)), 0.0)
        return dyn.identity(sp)
    choice = rng.integers(5)
    if choice == 0:
        return dyn.doubling(sp)
    if choice == 1:
        return dyn.tent(sp)
    if choice == 2:
        return dyn.rigid_rotation(sp, float(rng.random()))
    if choice == 3:
        return dyn.affine(sp, float(rng.integers(-3, 4)), float(rng.random()))
    return dyn.rigid_rotation(sp, dyn.ALPHA)


def random_family(rng: np.random.Generator, max_k: int = 4) -> dyn.Family:
    sp = SPACES[int(rng.integers(len(SPACES)))]
    k = int(rng.integers(1, max_k + 1))
    return dyn.family([random_map(sp, rng) for _ in range(k)])


families = st.integers(0, 2**32 - 1).map(lambda s: random_family(np.random.default_rng(s)))
