"""Paired experiments: a detector on (X, F) against the same detector on (X, f).

Horizon convention: ``params.N`` counts steps of the coarser system (the
composed map f, or the power f^m).  The finer side runs ``N * k`` steps with
window ``window * k``, so the coarse orbit is an exact subsequence of the
fine one.  That makes every "orbit of f is contained in the orbit of F"
implication exact at finite horizon, and those one-directional implications
are scored even when the full equivalence abstains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import corpus
from .detectors import (
    HorizonParams,
    _sensitivity_rungs,
    cofinite_sensitivity_check,
    distality_check,
    equicontinuity_check,
    li_yorke_sensitivity_check,
    minimality_evidence,
    neighborhood_sweep,
    pair_stats,
    scrambled_set_check,
    sensitivity_check,
)
from .dynamics import Family, MapSpec, composed, power, rotation_swap, singleton
from .errors import InvalidInputError
from .space import Batch, Point, SpaceSpec, planar_circle, random_batch
from .verdict import Status, Verdict, jsonable

CLAIMS = ("EQ", "MIN", "PROX", "DIST", "SEN", "COFSEN", "LYS", "LYC", "POWMIN")

W, R, I = Status.WITNESSED, Status.REFUTED, Status.INCONCLUSIVE

# (side whose status forces the other, status) for each claim's trivial direction
_TRIVIAL = {
    "EQ": ("fine", W),
    "MIN": ("coarse", W),
    "PROX": ("coarse", W),
    "DIST": ("coarse", R),
    "SEN": ("coarse", W),
    "COFSEN": ("fine", W),
    "LYS": ("coarse", W),
    "LYC": ("coarse", W),
    "POWMIN": ("coarse", W),
}
_NEEDS_CONNECTED = {"MIN", "POWMIN"}


@dataclass
class ComparisonReport:
    claim: str
    side_family: Verdict
    side_composed: Verdict
    agree: bool | None
    violation: bool
    expected: str
    context: dict = field(default_factory=dict)
    details: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "agree": self.agree,
            "violation": self.violation,
            "expected": self.expected,
            "context": jsonable(self.context),
            "side_family": self.side_family.to_dict(),
            "side_composed": self.side_composed.to_dict(),
            "details": jsonable(self.details),
        }


def score(claim: str, fine: Status, coarse: Status, connected: bool) -> tuple[bool | None, bool, str]:
    """Agreement, violation flag and expectation label from two statuses."""
    conditional = claim in _NEEDS_CONNECTED
    expected = "disagreement-allowed" if conditional and not connected else "equivalent"
    side, status = _TRIVIAL[claim]
    forcing, forced = (fine, coarse) if side == "fine" else (coarse, fine)
    violation = forcing == status and forced != status
    if fine == I or coarse == I:
        return None, violation, expected
    agree = fine == coarse
    if not agree and expected == "equivalent":
        violation = True
    return agree, violation, expected


def _report(claim, fam_or_space, fv, cv, k, params=None, **context) -> ComparisonReport:
    sp = fam_or_space if isinstance(fam_or_space, SpaceSpec) else fam_or_space.space
    agree, violation, expected = score(claim, fv.status, cv.status, sp.connected)
    ctx = {"connected": sp.connected, "components": len(sp.components), "k": k}
    if params is not None:
        ctx["params"] = params.to_dict()
    ctx.update(context)
    return ComparisonReport(claim, fv, cv, agree, violation, expected, ctx)


def composed_family(fam: Family) -> Family:
    return singleton(composed(fam), name=f"{fam.name or 'family'}-composed")


def compare_equicontinuity(fam: Family, eps: float, params: HorizonParams) -> ComparisonReport:
    fv = equicontinuity_check(fam, eps, params.stretched(fam.k))
    cv = equicontinuity_check(composed_family(fam), eps, params)
    return _report("EQ", fam, fv, cv, fam.k, params, eps=eps)


def compare_minimality(fam: Family, x: Point, eps: float, N: int) -> ComparisonReport:
    fv = minimality_evidence(fam, x, eps, N * fam.k)
    cv = minimality_evidence(composed_family(fam), x, eps, N)
    return _report("MIN", fam, fv, cv, fam.k, start=x, eps=eps, N=N)


def _pair_verdict(name: str, statuses: list[Status], liminf: np.ndarray) -> Verdict:
    n_w = sum(s == W for s in statuses)
    status = W if n_w == len(statuses) else I
    measured = {"pairs": len(statuses), "witnessed": n_w, "max_liminf_est": float(liminf.max())}
    return Verdict(name, status, None, measured)


def compare_proximal(fam: Family, pairs: Sequence[tuple[Point, Point]], params: HorizonParams) -> ComparisonReport:
    if not pairs:
        raise InvalidInputError("compare_proximal needs at least one pair")
    sp = fam.space
    xs, ys = sp.batch([p[0] for p in pairs]), sp.batch([p[1] for p in pairs])
    fine = params.stretched(fam.k)
    sf = pair_stats(fam, xs, ys, fine.N, fine.window, workers=params.workers)
    sc = pair_stats(composed_family(fam), xs, ys, params.N, params.window, workers=params.workers)
    diag = (xs.comp == ys.comp) & (xs.idx == ys.idx)
    lf = np.where(diag, 0.0, sf.liminf)
    lc = np.where(diag, 0.0, sc.liminf)
    st_f = [W if v < params.tau else I for v in lf]
    st_c = [W if v < params.tau else I for v in lc]
    details, decisive, matches, violations = [], 0, 0, 0
    for j, (a, b) in enumerate(zip(st_f, st_c)):
        ag, viol, _ = score("PROX", a, b, sp.connected)
        decisive += ag is not None
        matches += bool(ag)
        violations += viol
        details.append({"x": sp.point(xs.comp[j], xs.idx[j]), "y": sp.point(ys.comp[j], ys.idx[j]),
                        "family": a, "composed": b, "liminf_family": float(lf[j]), "liminf_composed": float(lc[j])})
    raw = sum(a == b for a, b in zip(st_f, st_c))
    fv = _pair_verdict("proximal_pairs", st_f, lf)
    cv = _pair_verdict("proximal_pairs", st_c, lc)
    ctx = {"connected": sp.connected, "components": len(sp.components), "k": fam.k, "params": params.to_dict(),
           "pairs": len(pairs), "decisive_pairs": decisive,
           "match_rate_decisive": matches / decisive if decisive else None,
           "match_rate_all": raw / len(pairs)}
    return ComparisonReport("PROX", fv, cv, (matches == decisive) if decisive else None, violations > 0,
                            "equivalent", ctx, details)


def random_pairs(sp: SpaceSpec, count: int, seed: int) -> list[tuple[Point, Point]]:
    b = random_batch(sp, 2 * count, seed)
    pts = sp.points(b)
    return list(zip(pts[:count], pts[count:]))


def compare_distality(fam: Family, params: HorizonParams) -> ComparisonReport:
    fv = distality_check(fam, params.stretched(fam.k))
    cv = distality_check(composed_family(fam), params)
    return _report("DIST", fam, fv, cv, fam.k, params)


def compare_sensitivity(fam: Family, params: HorizonParams) -> ComparisonReport:
    """Statuses must agree; the constants delta* may differ and are only recorded."""
    fv = sensitivity_check(fam, params.stretched(fam.k))
    cv = sensitivity_check(composed_family(fam), params)
    return _report("SEN", fam, fv, cv, fam.k, params)


def compare_cofinite(fam: Family, params: HorizonParams) -> ComparisonReport:
    fv = cofinite_sensitivity_check(fam, params.stretched(fam.k))
    cv = cofinite_sensitivity_check(composed_family(fam), params)
    return _report("COFSEN", fam, fv, cv, fam.k, params)


def compare_li_yorke(fam: Family, delta: float, params: HorizonParams,
                     candidates: Sequence[Point] | None = None) -> tuple[ComparisonReport, ComparisonReport]:
    """Li-Yorke sensitivity (LYS) and a shared scrambled-set candidate (LYC)."""
    sp = fam.space
    fine = params.stretched(fam.k)
    cfam = composed_family(fam)
    lys = _report("LYS", fam, li_yorke_sensitivity_check(fam, delta, fine),
                  li_yorke_sensitivity_check(cfam, delta, params), fam.k, params, delta=delta)
    if candidates is None:
        candidates = sp.points(random_batch(sp, params.scrambled_size, params.seed))
    lyc = _report("LYC", fam, scrambled_set_check(fam, candidates, delta, fine),
                  scrambled_set_check(cfam, candidates, delta, params), fam.k, params,
                  delta=delta, candidates=list(candidates))
    return lys, lyc


def power_minimality(m: MapSpec, times: int, x: Point, eps: float, N: int) -> ComparisonReport:
    """Minimality of (X, m) against (X, m^times); the ``side_composed`` slot holds the power."""
    base = singleton(m, name=m.describe())
    fv = minimality_evidence(base, x, eps, N * times)
    cv = minimality_evidence(singleton(power(m, times)), x, eps, N)
    return _report("POWMIN", m.space, fv, cv, times, start=x, eps=eps, N=N, m=times)


def two_circle_system(alpha: float | None = None) -> Family:
    """Two concentric circles of radius 1 and 2 with the swapping rotations f_1, f_2.

    ``alpha`` (radians) overrides the default irrational angle.
    """
    if alpha is None:
        return corpus.load("paper-example").family
    sp = SpaceSpec((planar_circle(1.0), planar_circle(2.0)))
    f1 = rotation_swap(sp, [1, 0], [alpha, 2 * alpha], label="f1")
    f2 = rotation_swap(sp, [1, 0], [2 * alpha, alpha], label="f2")
    return Family((f1, f2), sp, "paper-example")

