"""Acceptance criteria, one test each, every test logs a PASS/FAIL line.

Run just these with ``pytest tests/test_acceptance.py -v``; the lines are
repeated in the terminal summary under "acceptance criteria".
"""

import json
import time

import numpy as np
import pytest

import oracle
from nonauto import cli, corpus
from nonauto import theorems as thm
from nonauto.detectors import (
    HorizonParams,
    _sensitivity_rungs,
    cofinite_sensitivity_check,
    distality_check,
    neighborhood_sweep,
    proximal_check,
    sensitivity_check,
)
from nonauto.dynamics import composed, power, prefix_block
from nonauto.space import LATTICE, Batch, Point, net_batch
from nonauto.verdict import Status
from strategies import random_family

W, R, I = Status.WITNESSED, Status.REFUTED, Status.INCONCLUSIVE
S1_ZERO = Point(0, 0.0)


def test_interleaving_identity(record):
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    worst, checked = 0.0, 0
    for _ in range(20):
        fam = random_family(rng)
        sp, k = fam.space, fam.k
        comp = rng.integers(0, len(sp.components), size=100).astype(np.int64)
        upper = np.where(sp._arrays["circle"][comp], LATTICE, LATTICE + 1)
        starts = Batch(comp, (rng.random(100) * upper).astype(np.int64))
        traj = dict(fam.trajectory(starts, 50 * k + k - 1))
        f = composed(fam)
        blocks = [prefix_block(fam, r) for r in range(1, k)]
        fn = starts
        for n in range(51):
            lhs = [fn] + [g.step(fn) for g in blocks]
            for r, b in enumerate(lhs):
                ref = traj.get(n * k + r)
                if ref is None:
                    continue
                d = sp.pair_distance(ref.comp, ref.idx, b.comp, b.idx)
                worst = max(worst, float(d.max()))
                checked += len(d)
            fn = f.step(fn)
    elapsed = time.perf_counter() - t0
    record("1 interleaving identity", worst < 1e-12 and elapsed < 10,
           f"max deviation {worst:.3g} over {checked} checks, {elapsed:.1f}s")


def test_example_minimality(record):
    fam = corpus.load("paper-example").family
    t0 = time.perf_counter()
    rep = thm.compare_minimality(fam, S1_ZERO, 0.05, 10**5)
    elapsed = time.perf_counter() - t0
    cv = rep.side_composed
    ok = (rep.side_family.status == W and cv.status == R and cv.measured["components_visited"] == [0]
          and rep.expected == "disagreement-allowed" and not rep.violation and elapsed < 30)
    record("2 example minimality", ok,
           f"family {rep.side_family.status} (coverage {rep.side_family.measured['coverage_radius']:.4f}), "
           f"composed {cv.status} visiting {cv.measured['components_visited']}, {rep.expected}, {elapsed:.1f}s")


def test_power_minimality_counterexample(record):
    f1 = corpus.load("paper-example").family.maps[0]
    t0 = time.perf_counter()
    rep = thm.power_minimality(f1, 2, S1_ZERO, 0.05, 10**5)
    elapsed = time.perf_counter() - t0
    pv = rep.side_composed
    ok = (rep.side_family.status == W and pv.status == R and pv.measured["components_visited"] == [0]
          and rep.expected == "disagreement-allowed" and not rep.violation and elapsed < 30)
    record("3 power minimality", ok,
           f"f1 {rep.side_family.status}, f1^2 {pv.status} visiting {pv.measured['components_visited']}, {elapsed:.1f}s")


def test_proximality_equivalence(record):
    fam = corpus.load("doubling-tent").family
    params = HorizonParams(N=10**4, tau=1e-3)
    pairs = thm.random_pairs(fam.space, 1000, seed=7)
    t0 = time.perf_counter()
    rep = thm.compare_proximal(fam, pairs, params)
    elapsed = time.perf_counter() - t0
    ctx = rep.context
    ok = ctx["decisive_pairs"] > 0 and ctx["match_rate_decisive"] == 1.0 and not rep.violation and elapsed < 60
    record("4 proximality equivalence", ok,
           f"match rate {ctx['match_rate_decisive']} over {ctx['decisive_pairs']} decisive of {ctx['pairs']} pairs, "
           f"{elapsed:.1f}s")


@pytest.mark.parametrize("name, N", [("paper-example", 200), ("rot-irrational", 1000),
                                     ("rot-rational", 1000), ("rot-pair", 1000)])
def test_distality_isometries(record, systems, name, N):
    spec = systems[name]
    rep = thm.compare_distality(spec.family, spec.params.replace(N=N, window=None))
    ratios = [v.measured.get("min_liminf_est", 0.0) / v.measured["min_pair_distance"]
              for v in (rep.side_family, rep.side_composed)]
    ok = rep.side_family.status == W and rep.side_composed.status == W and min(ratios) >= 0.9
    record(f"5 distality {name}", ok, f"both {rep.side_family.status}/{rep.side_composed.status}, "
                                      f"min liminf / min pair distance = {min(ratios):.3f}")


def test_distality_doubling(record, systems, params):
    rep = thm.compare_distality(systems["doubling1"].family, params)
    sides = (rep.side_family, rep.side_composed)
    pairs = [(v.witness["x"].coord, v.witness["y"].coord, v.witness["collision_n"]) for v in sides]
    ok = all(v.status == R and v.exact for v in sides) and all(p == (0.0, 0.5, 1) for p in pairs)
    record("5 distality doubling", ok, f"{[str(v.status) for v in sides]} with collision (x, y, n) = {pairs[0]}")


def test_sensitivity_equivalence(record, systems, params):
    rep = thm.compare_sensitivity(systems["doubling2"].family, params)
    stars = [v.measured.get("delta_star", 0.0) for v in (rep.side_family, rep.side_composed)]
    ok = rep.agree and rep.side_family.status == W and min(stars) >= 0.25 - params.eps_grid
    record("6 sensitivity doubling2", ok, f"both {rep.side_family.status}, delta* = {stars}")


@pytest.mark.parametrize("name", corpus.ROTATION_SYSTEMS)
def test_sensitivity_rotations(record, systems, params, name):
    rep = thm.compare_sensitivity(systems[name].family, params)
    ok = rep.side_family.status == I and rep.side_composed.status == I
    record(f"6 sensitivity {name}", ok, f"{rep.side_family.status}/{rep.side_composed.status}, "
                                        f"diam_max {rep.side_family.measured['diam_max']:.5f}")


@pytest.mark.parametrize("name", ["doubling1", "doubling2"])
def test_cofinite_witness(record, systems, name):
    rep = thm.compare_cofinite(systems[name].family, HorizonParams(N=200, eps_grid=1e-3))
    wit = [rep.side_family.witness, rep.side_composed.witness]
    ok = all(w is not None and w["K"] <= 20 for w in wit)
    record(f"6 cofinite {name}", ok, f"(delta*, K) family {wit[0]}, composed {wit[1]}")


def test_li_yorke_tent(record, systems):
    params = HorizonParams(N=10**4, scrambled_size=10)
    lys, lyc = thm.compare_li_yorke(systems["tent2"].family, 0.1, params)
    ok = lyc.side_family.status == W and lyc.side_composed.status == W
    record("7 scrambled set tent2", ok,
           f"{lyc.side_family.status}/{lyc.side_composed.status} "
           f"({lyc.side_family.measured['pairs_witnessed']}/{lyc.side_family.measured['pairs']} pairs); "
           f"Li-Yorke sensitivity {lys.side_family.status}/{lys.side_composed.status}")


@pytest.mark.parametrize("name", corpus.ROTATION_SYSTEMS)
def test_li_yorke_rotations(record, systems, params, name):
    lys, lyc = thm.compare_li_yorke(systems[name].family, 0.1, params)
    ok = lys.side_family.status == I and lys.side_composed.status == I and lys.agree is None
    # constant distances refute a scrambled set exactly, on both sides
    ok &= lyc.side_family.status == R and lyc.side_composed.status == R
    record(f"7 Li-Yorke {name}", ok, f"sensitivity {lys.side_family.status}/{lys.side_composed.status}, "
                                     f"scrambled set {lyc.side_family.status}/{lyc.side_composed.status}")


def test_oracle_sensitivity(record, systems):
    fam = systems["doubling1"].family
    params = HorizonParams(N=1000, eps_grid=1e-3, ball_points=2)
    ref = oracle.sensitivity(1e-3, 1000, 2, params.seed)
    sweep = neighborhood_sweep(fam, params, _sensitivity_rungs(fam.space, params))
    v = sensitivity_check(fam, params, sweep)
    c = cofinite_sensitivity_check(fam, params, sweep)
    k_ref = next((k, r) for r, k in zip(ref["rungs"], ref["K"]) if k <= params.window)
    got = (v.witness["worst_center"].lattice, v.witness["diam"], v.witness["n"], v.measured["diam_max"],
           v.measured["delta_star"], sweep.rungs, (c.witness["K"], c.witness["delta_star"]))
    want = (ref["worst"], ref["diam_worst"], ref["n_worst"], ref["diam_max"], ref["delta_star"], ref["rungs"], k_ref)
    record("8 oracle sensitivity", got == want, f"detector {got[:5]} vs oracle {want[:5]}, cofinite {got[6]} vs {want[6]}")


def test_oracle_proximal(record, systems):
    fam = systems["doubling1"].family
    params = HorizonParams(N=1000)
    sp = fam.space
    net = oracle.net(1e-3)
    assert net == net_batch(sp, 1e-3).idx.tolist()
    rng = np.random.default_rng(11)
    picks = [(0, 500)] + [tuple(rng.integers(0, len(net), 2).tolist()) for _ in range(199)]
    mismatches, witnessed = [], 0
    for a, b in picks:
        x, y = sp.point(0, net[a]), sp.point(0, net[b])
        v = proximal_check(fam, x, y, params)
        if net[a] == net[b]:
            got = (v.status, 0.0)
            want = (W, 0.0)
        else:
            ref = oracle.pair_record(net[a], net[b], params.N, params.window)
            got = (v.status, v.measured["liminf_est"], v.measured["limsup_est"], v.witness["n_liminf"],
                   v.witness["n_limsup"], v.witness["collision_n"])
            want = (W if ref["liminf"] < params.tau else I, ref["liminf"], ref["limsup"], ref["n_inf"],
                    ref["n_sup"], ref["collide"])
        witnessed += v.status == W
        if got != want:
            mismatches.append((a, b, got, want))
    v = distality_check(fam, params.replace(eps_grid=1e-3))
    hit = oracle.first_collision(net, params.N)
    dist_ok = (v.witness["collision_n"], v.witness["i"], v.witness["j"]) == hit
    record("8 oracle proximal/distality", not mismatches and dist_ok,
           f"{len(picks)} pairs ({witnessed} witnessed), {len(mismatches)} mismatches; "
           f"first collision detector {(v.witness['collision_n'], v.witness['i'], v.witness['j'])} vs oracle {hit}")


@pytest.mark.parametrize("claim, extra", [
    ("PROX", ["--system", "doubling-tent", "--pairs", "5000", "--N", "300"]),
    ("SEN", ["--system", "doubling2", "--grid", "0.002", "--N", "100"]),
    ("LYC", ["--system", "tent2", "--N", "2000"]),
    ("DIST", ["--system", "rot-pair", "--N", "200"]),
])
def test_determinism(record, tmp_path, claim, extra):
    blobs = []
    for run, workers in enumerate((1, 4, 1, 4)):
        out = tmp_path / f"{run}.json"
        code = cli.main(["compare", claim, *extra, "--workers", str(workers), "--out", str(out)])
        assert code == 0
        blobs.append(out.read_bytes())
    same = all(b == blobs[0] for b in blobs)
    json.loads(blobs[0])
    record(f"9 determinism {claim}", same, f"{len(blobs)} runs (workers 1,4,1,4), {len(blobs[0])} bytes, identical={same}")
