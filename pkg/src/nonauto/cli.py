"""Command-line front end.

    nonauto corpus [NAME]
    nonauto orbit   --system S --x C:COORD --N 10 [--stride 1 --offset 0] [--format csv|json]
    nonauto detect  DETECTOR --system S [...]
    nonauto compare CLAIM --system S [...]

Every numeric flag can also be set through an environment variable named
``NONAUTO_<FLAG>`` (e.g. ``NONAUTO_N=5000``); explicit flags win, then the
environment, then the spec file's ``params`` block.

Exit codes: 0 completed, 1 error (including exhausted budgets), 2 a
``compare`` run found a violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import __version__, corpus
from . import detectors as det
from . import theorems as thm
from .dynamics import check_surjectivity, orbit_segment
from .errors import InvalidInputError, ResourceLimitError
from .space import Point, random_batch
from .specfile import SpecError, SystemSpecFile
from .verdict import jsonable

ENV_PREFIX = "NONAUTO_"

DETECTORS = (
    "equicontinuity", "sensitivity", "cofinite", "proximal", "distality", "li-yorke-pair",
    "scrambled", "li-yorke-sensitivity", "minimality", "limit-classes", "surjectivity",
)


def parse_point(text: str) -> Point:
    """Point literal ``component:coord``."""
    try:
        comp, coord = text.split(":", 1)
        return Point(int(comp), float(coord))
    except ValueError:
        raise InvalidInputError(f"bad point literal {text!r}; expected 'component:coord', e.g. '0:0.25'") from None


def _env(name: str, cast):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return None
    try:
        return cast(raw)
    except ValueError:
        raise InvalidInputError(f"environment variable {ENV_PREFIX}{name.upper()}={raw!r} is not a valid {cast.__name__}")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--system", help="corpus name or path to a JSON spec file")
    p.add_argument("--N", type=int, help="horizon (steps of the coarser system for compare)")
    p.add_argument("--eps", type=float, help="epsilon for equicontinuity/minimality/surjectivity")
    p.add_argument("--delta", type=float, help="separation threshold")
    p.add_argument("--tau", type=float, help="proximity tolerance standing in for liminf = 0")
    p.add_argument("--window", type=int, help="tail window start (default N // 2)")
    p.add_argument("--grid", type=float, help="sampling resolution eps_grid")
    p.add_argument("--seed", type=int, help="seed for randomized sampling")
    p.add_argument("--workers", type=int, help="worker threads (results do not depend on it)")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), help="output format")
    p.add_argument("--timings", action="store_true", help="add wall time per stage to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonauto", description="Finitely generated non-autonomous systems lab")
    parser.add_argument("--version", action="version", version=f"nonauto {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corpus", help="list built-in systems or print one as a spec file")
    p.add_argument("name", nargs="?")
    p.add_argument("--out")

    p = sub.add_parser("orbit", help="dump an orbit segment")
    _common(p)
    p.add_argument("--x", default="0:0.0")
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--offset", type=int, default=0)

    p = sub.add_parser("detect", help="run one detector")
    p.add_argument("detector", choices=DETECTORS)
    _common(p)
    p.add_argument("--x", default="0:0.0")
    p.add_argument("--y")
    p.add_argument("--points", help="comma-separated point literals for the scrambled-set detector")
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--map-index", type=int, default=1, help="1-based map of the family (surjectivity)")

    p = sub.add_parser("compare", help="run a paired family-vs-composed claim")
    p.add_argument("claim", choices=thm.CLAIMS)
    _common(p)
    p.add_argument("--x", default="0:0.0")
    p.add_argument("--y")
    p.add_argument("--pairs", type=int, default=100, help="random pairs for PROX when --y is not given")
    p.add_argument("--m", type=int, default=2, help="power for POWMIN")
    p.add_argument("--map-index", type=int, default=1, help="1-based map used by POWMIN")
    return parser


def _resolve(args) -> tuple[SystemSpecFile, det.HorizonParams, dict]:
    for name, cast in (("system", str), ("N", int), ("eps", float), ("delta", float), ("tau", float),
                       ("window", int), ("grid", float), ("seed", int), ("workers", int), ("format", str)):
        if getattr(args, name, None) is None:
            setattr(args, name, _env(name, cast))
    if args.system is None:
        raise InvalidInputError("no system given: pass --system or set NONAUTO_SYSTEM")
    spec = corpus.load_system(args.system)
    changes = {}
    if args.N is not None:
        changes.update(N=args.N, window=None)
    for flag, key in (("grid", "eps_grid"), ("tau", "tau"), ("delta", "delta"), ("window", "window"),
                      ("seed", "seed"), ("workers", "workers")):
        if getattr(args, flag) is not None:
            changes[key] = getattr(args, flag)
    params = spec.params.replace(**changes) if changes else spec.params
    eps = args.eps if args.eps is not None else 0.1
    return spec, params, {"eps": eps}


def _header(command: str, spec: SystemSpecFile, params: det.HorizonParams, args: dict) -> dict:
    return {
        "tool": "nonauto",
        "version": __version__,
        "command": command,
        "system": spec.name,
        "spec_digest": spec.digest,
        "params": params.to_dict(),
        "args": jsonable(args),
    }


def cmd_corpus(args) -> tuple[str, int]:
    if args.name is None:
        return "\n".join(corpus.names()) + "\n", 0
    return json.dumps(corpus.spec_data(args.name), indent=2) + "\n", 0


def cmd_orbit(args) -> tuple[str, int]:
    spec, params, _ = _resolve(args)
    x = parse_point(args.x)
    orb = orbit_segment(spec.family, x, params.N, args.stride, args.offset)
    rows = []
    for n, c, i in zip(orb.times().tolist(), orb.comp.tolist(), orb.idx.tolist()):
        amb = spec.space.ambient(c, i)
        rows.append((n, c, spec.space.coord_of(c, i), amb))
    if (args.format or "csv") == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "component", "coord", "x", "y"])
        for n, c, coord, amb in rows:
            xy = ["%.17g" % amb[0], "%.17g" % amb[1]] if amb else ["", ""]
            w.writerow([n, c, "%.17g" % coord, *xy])
        return buf.getvalue(), 0
    report = _header("orbit", spec, params, {"x": x, "stride": args.stride, "offset": args.offset})
    report["orbit"] = [{"n": n, "component": c, "coord": coord, **({"x": amb[0], "y": amb[1]} if amb else {})}
                       for n, c, coord, amb in rows]
    return json.dumps(report, indent=2) + "\n", 0


def _candidates(args, spec, params):
    if args.points:
        return [parse_point(t) for t in args.points.split(",")]
    return spec.space.points(random_batch(spec.space, params.scrambled_size, params.seed))


def cmd_detect(args) -> tuple[dict, int]:
    spec, params, extra = _resolve(args)
    fam, eps, name = spec.family, extra["eps"], args.detector
    x = parse_point(args.x)
    used = {"detector": name}
    if name == "equicontinuity":
        used["eps"] = eps
        result = det.equicontinuity_check(fam, eps, params)
    elif name == "sensitivity":
        result = det.sensitivity_check(fam, params)
    elif name == "cofinite":
        result = det.cofinite_sensitivity_check(fam, params)
    elif name in ("proximal", "li-yorke-pair"):
        if args.y is None:
            raise InvalidInputError(f"detector {name} needs --y")
        y = parse_point(args.y)
        used.update(x=x, y=y)
        if name == "proximal":
            result = det.proximal_check(fam, x, y, params)
        else:
            result = det.li_yorke_pair_check(fam, x, y, params.delta, params)
    elif name == "distality":
        result = det.distality_check(fam, params)
    elif name == "scrambled":
        pts = _candidates(args, spec, params)
        used["points"] = pts
        result = det.scrambled_set_check(fam, pts, params.delta, params)
    elif name == "li-yorke-sensitivity":
        result = det.li_yorke_sensitivity_check(fam, params.delta, params)
    elif name == "minimality":
        used.update(x=x, eps=eps, stride=args.stride, offset=args.offset)
        result = det.minimality_evidence(fam, x, eps, params.N, args.stride, args.offset)
    elif name == "limit-classes":
        used["x"] = x
        result = {"detector": "limit-classes", "classes": [c.to_dict() for c in det.mod_k_limit_classes(fam, x, params)]}
    else:
        if not 1 <= args.map_index <= fam.k:
            raise InvalidInputError(f"--map-index must be in 1..{fam.k}")
        used.update(eps=eps, map_index=args.map_index)
        result = check_surjectivity(fam.maps[args.map_index - 1], eps)
    report = _header("detect", spec, params, used)
    report["results"] = [jsonable(result)]
    return report, 0


def cmd_compare(args) -> tuple[dict, int]:
    spec, params, extra = _resolve(args)
    fam, eps, claim = spec.family, extra["eps"], args.claim
    x = parse_point(args.x)
    used = {"claim": claim}
    if claim == "EQ":
        used["eps"] = eps
        reports = [thm.compare_equicontinuity(fam, eps, params)]
    elif claim == "MIN":
        used.update(x=x, eps=eps)
        reports = [thm.compare_minimality(fam, x, eps, params.N)]
    elif claim == "PROX":
        if args.y is not None:
            pairs = [(x, parse_point(args.y))]
        else:
            pairs = thm.random_pairs(spec.space, args.pairs, params.seed)
            used["pairs"] = args.pairs
        reports = [thm.compare_proximal(fam, pairs, params)]
    elif claim == "DIST":
        reports = [thm.compare_distality(fam, params)]
    elif claim == "SEN":
        reports = [thm.compare_sensitivity(fam, params)]
    elif claim == "COFSEN":
        reports = [thm.compare_cofinite(fam, params)]
    elif claim in ("LYS", "LYC"):
        lys, lyc = thm.compare_li_yorke(fam, params.delta, params)
        reports = [lys if claim == "LYS" else lyc]
    else:
        if not 1 <= args.map_index <= fam.k:
            raise InvalidInputError(f"--map-index must be in 1..{fam.k}")
        used.update(x=x, eps=eps, m=args.m, map_index=args.map_index)
        reports = [thm.power_minimality(fam.maps[args.map_index - 1], args.m, x, eps, params.N)]
    report = _header("compare", spec, params, used)
    report["results"] = [r.to_dict() for r in reports]
    report["violation"] = any(r.violation for r in reports)
    return report, 2 if report["violation"] else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        if args.command == "corpus":
            text, code = cmd_corpus(args)
        elif args.command == "orbit":
            text, code = cmd_orbit(args)
        else:
            fn = cmd_detect if args.command == "detect" else cmd_compare
            report, code = fn(args)
            if args.timings:
                report["timings"] = {args.command: time.perf_counter() - started}
            text = json.dumps(report, indent=2) + "\n"
    except SpecError as exc:
        print("\n".join(exc.errors), file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 1
    except (InvalidInputError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
