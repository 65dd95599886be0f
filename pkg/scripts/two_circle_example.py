"""Two concentric circles with swapping rotations: minimality of the family vs its composed map.

    python scripts/two_circle_example.py --N 100000 --eps 0.05
"""

import argparse
import json
import time

from nonauto import corpus
from nonauto import theorems as thm
from nonauto.detectors import mod_k_limit_classes
from nonauto.space import Point


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=10**5)
    ap.add_argument("--eps", type=float, default=0.05)
    ap.add_argument("--json", action="store_true", help="dump the full reports")
    args = ap.parse_args()

    spec = corpus.load("paper-example")
    fam, x = spec.family, Point(0, 0.0)
    rows = []
    t0 = time.perf_counter()
    rep = thm.compare_minimality(fam, x, args.eps, args.N)
    rows.append(("family vs composed", rep))
    rep = thm.power_minimality(fam.maps[0], 2, x, args.eps, args.N)
    rows.append(("f1 vs f1^2", rep))
    elapsed = time.perf_counter() - t0

    for label, rep in rows:
        a, b = rep.side_family, rep.side_composed
        print(f"{label:20s} {a.status!s:12s} {b.status!s:12s} {rep.expected:22s} "
              f"coverage {a.measured['coverage_radius']:.2e} / {b.measured['coverage_radius']:.2e}, "
              f"visited {a.measured['components_visited']} / {b.measured['components_visited']}")
    for cls in mod_k_limit_classes(fam, x, spec.params.replace(N=2000, window=None)):
        print(f"residue {cls.residue}: {len(cls.points)} tail points on components {cls.components}")
    print(f"{elapsed:.1f}s")
    if args.json:
        print(json.dumps([r.to_dict() for _, r in rows], indent=2))


if __name__ == "__main__":
    main()
