"""Run every paired claim on every corpus system and print a status table.

    python scripts/corpus_sweep.py --N 500 --workers 4 > sweep.txt
"""

import argparse
import time

from nonauto import corpus
from nonauto import theorems as thm
from nonauto.detectors import HorizonParams
from nonauto.space import Point


def run_claims(spec, params, eps, pairs):
    fam, x = spec.family, Point(0, 0.0)
    yield thm.compare_equicontinuity(fam, eps, params)
    yield thm.compare_minimality(fam, x, eps, params.N)
    yield thm.compare_proximal(fam, thm.random_pairs(spec.space, pairs, params.seed), params)
    yield thm.compare_distality(fam, params)
    yield thm.compare_sensitivity(fam, params)
    yield thm.compare_cofinite(fam, params)
    yield from thm.compare_li_yorke(fam, params.delta, params)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=500)
    ap.add_argument("--grid", type=float, default=0.02)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--systems", nargs="*", default=corpus.names())
    args = ap.parse_args()

    print(f"{'system':16s} {'claim':7s} {'family':13s} {'composed':13s} {'agree':6s} violation")
    bad = 0
    for name in args.systems:
        spec = corpus.load(name)
        params = HorizonParams(N=args.N, eps_grid=max(args.grid, spec.params.eps_grid), workers=args.workers)
        t0 = time.perf_counter()
        for rep in run_claims(spec, params, args.eps, args.pairs):
            bad += rep.violation
            print(f"{name:16s} {rep.claim:7s} {rep.side_family.status!s:13s} {rep.side_composed.status!s:13s} "
                  f"{rep.agree!s:6s} {rep.violation}")
        print(f"{name:16s} ({time.perf_counter() - t0:.1f}s)")
    print(f"violations: {bad}")
    raise SystemExit(2 if bad else 0)


if __name__ == "__main__":
    main()
