"""System spec files: JSON documents describing a space, a family and horizon defaults.

Example::

    {
      "name": "doubling2",
      "space": {"components": [{"kind": "wrap_circle"}]},
      "family": [{"kind": "doubling"}, {"kind": "doubling"}],
      "params": {"N": 1000, "eps_grid": 0.01}
    }

Angles are numbers in the component's native unit (radians on planar
circles, turns on wrap circles) or the strings ``"irrational"`` /
``"<m>*irrational"`` for exact multiples of the default irrational angle.
Unknown keys are rejected.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, fields
from pathlib import Path

from . import dynamics as dyn
from .detectors import HorizonParams
from .errors import InvalidInputError
from .space import INTERVAL, KINDS, PLANAR, ComponentSpec, SpaceSpec

_TOP_KEYS = {"name", "space", "family", "params"}
_COMPONENT_KEYS = {PLANAR: {"kind", "radius"}, "wrap_circle": {"kind"}, INTERVAL: {"kind", "a", "b"}}
_MAP_KEYS = {
    "identity": set(),
    "rigid_rotation": {"angle", "angles"},
    "rotation_swap": {"targets", "angles"},
    "doubling": set(),
    "tent": set(),
    "affine": {"slope", "intercept"},
    "composition": {"parts"},
}
_PARAM_KEYS = {f.name for f in fields(HorizonParams)} - {"workers"}
_IRRATIONAL = re.compile(r"^\s*(?:(-?\d+)\s*\*\s*)?irrational\s*$")


class SpecError(InvalidInputError):
    """All problems found in a spec file, one message per problem."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("invalid system spec:\n  " + "\n  ".join(self.errors))


@dataclass(frozen=True, eq=False)
class SystemSpecFile:
    name: str
    space: SpaceSpec
    family: dyn.Family
    params: HorizonParams
    data: dict

    @property
    def digest(self) -> str:
        canon = json.dumps(self.data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()


def parse_angle(value, where: str, errors: list):
    if isinstance(value, bool) or value is None:
        errors.append(f"{where}: expected a number or 'irrational', got {value!r}")
        return 0.0
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _IRRATIONAL.match(value)
        if m:
            return dyn.IrrationalAngle(int(m.group(1) or 1))
    errors.append(f"{where}: expected a number or 'irrational', got {value!r}")
    return 0.0


def _unknown(d: dict, allowed: set, where: str, errors: list):
    for key in sorted(set(d) - allowed):
        errors.append(f"{where}: unknown key {key!r} (allowed: {', '.join(sorted(allowed)) or 'none'})")


def _number(d: dict, key: str, where: str, errors: list, default=None):
    v = d.get(key, default)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        errors.append(f"{where}.{key}: expected a number, got {v!r}")
        return default if default is not None else 0.0
    return float(v)


def _parse_space(block, errors: list) -> SpaceSpec | None:
    if not isinstance(block, dict):
        errors.append("space: expected an object with a 'components' list")
        return None
    _unknown(block, {"components"}, "space", errors)
    comps = block.get("components")
    if not isinstance(comps, list) or not comps:
        errors.append("space.components: expected a non-empty list")
        return None
    out = []
    for j, c in enumerate(comps):
        where = f"space.components[{j}]"
        if not isinstance(c, dict) or c.get("kind") not in KINDS:
            kind = c.get("kind") if isinstance(c, dict) else c
            errors.append(f"{where}.kind: unknown component kind {kind!r} (supported: {', '.join(KINDS)})")
            continue
        kind = c["kind"]
        _unknown(c, _COMPONENT_KEYS[kind], where, errors)
        n_err = len(errors)
        if kind == PLANAR:
            r = _number(c, "radius", where, errors, 1.0)
            if not r > 0:
                errors.append(f"{where}.radius: must be positive, got {r}")
            spec = (kind, dict(radius=r))
        elif kind == INTERVAL:
            a, b = _number(c, "a", where, errors, 0.0), _number(c, "b", where, errors, 1.0)
            if not a < b:
                errors.append(f"{where}: interval needs a < b, got a={a}, b={b}")
            spec = (kind, dict(a=a, b=b))
        else:
            spec = (kind, {})
        if len(errors) == n_err:
            out.append(ComponentSpec(spec[0], **spec[1]))
    if len(out) != len(comps):
        return None
    return SpaceSpec(tuple(out))


def _parse_map(sp: SpaceSpec, m, where: str, errors: list):
    if not isinstance(m, dict) or m.get("kind") not in _MAP_KEYS:
        kind = m.get("kind") if isinstance(m, dict) else m
        errors.append(f"{where}.kind: unknown map kind {kind!r} (supported: {', '.join(_MAP_KEYS)})")
        return None
    kind = m["kind"]
    _unknown(m, _MAP_KEYS[kind] | {"kind", "label"}, where, errors)
    n_err = len(errors)
    label = m.get("label", "")
    ncomp = len(sp.components)
    try:
        if kind == "identity":
            return dyn.identity(sp)
        if kind == "doubling":
            return dyn.doubling(sp)
        if kind == "tent":
            return dyn.tent(sp)
        if kind == "affine":
            slope = _number(m, "slope", where, errors, 1.0)
            intercept = _number(m, "intercept", where, errors, 0.0)
            return None if len(errors) > n_err else dyn.affine(sp, slope, intercept)
        if kind == "rigid_rotation":
            if "angles" in m:
                raw = m["angles"]
                if not isinstance(raw, list) or len(raw) != ncomp:
                    errors.append(f"{where}.angles: expected a list of {ncomp} angles")
                    return None
                angles = [parse_angle(a, f"{where}.angles[{j}]", errors) for j, a in enumerate(raw)]
            else:
                angles = parse_angle(m.get("angle"), f"{where}.angle", errors)
            return None if len(errors) > n_err else dyn.rigid_rotation(sp, angles, label=label)
        if kind == "rotation_swap":
            targets, raw = m.get("targets"), m.get("angles")
            if not isinstance(targets, list) or len(targets) != ncomp or not all(
                    isinstance(t, int) and not isinstance(t, bool) for t in targets):
                errors.append(f"{where}.targets: expected a list of {ncomp} component indices")
            if not isinstance(raw, list) or len(raw) != ncomp:
                errors.append(f"{where}.angles: expected a list of {ncomp} angles")
            if len(errors) > n_err:
                return None
            angles = [parse_angle(a, f"{where}.angles[{j}]", errors) for j, a in enumerate(raw)]
            return None if len(errors) > n_err else dyn.rotation_swap(sp, targets, angles, label=label)
        parts = m.get("parts")
        if not isinstance(parts, list) or not parts:
            errors.append(f"{where}.parts: expected a non-empty list of maps")
            return None
        built = [_parse_map(sp, p, f"{where}.parts[{j}]", errors) for j, p in enumerate(parts)]
        if len(errors) > n_err:
            return None
        return dyn.compose(built, label=label or "composition")
    except InvalidInputError as exc:
        errors.append(f"{where}: {exc}")
        return None


def _parse_params(block, errors: list) -> HorizonParams | None:
    if block is None:
        return HorizonParams()
    if not isinstance(block, dict):
        errors.append("params: expected an object")
        return None
    _unknown(block, _PARAM_KEYS, "params", errors)
    known = {k: v for k, v in block.items() if k in _PARAM_KEYS}
    try:
        return HorizonParams(**known)
    except (InvalidInputError, TypeError) as exc:
        errors.append(f"params: {exc}")
        return None


def build(data, source: str = "<spec>") -> SystemSpecFile:
    errors: list[str] = []
    if not isinstance(data, dict):
        raise SpecError([f"{source}: top level must be an object"])
    _unknown(data, _TOP_KEYS, "<top>", errors)
    name = data.get("name", Path(source).stem)
    if not isinstance(name, str):
        errors.append(f"name: expected a string, got {name!r}")
    sp = _parse_space(data.get("space"), errors)
    maps = []
    fam_block = data.get("family")
    if not isinstance(fam_block, list) or not fam_block:
        errors.append("family: expected a non-empty list of maps")
    elif sp is not None:
        maps = [_parse_map(sp, m, f"family[{j}]", errors) for j, m in enumerate(fam_block)]
    params = _parse_params(data.get("params"), errors)
    if errors:
        raise SpecError(errors)
    fam = dyn.Family(tuple(maps), sp, str(name))
    return SystemSpecFile(str(name), sp, fam, params, data)


def parse_spec(path) -> SystemSpecFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError([f"{path}: cannot read ({exc.strerror})"]) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError([f"{path}:{exc.lineno}:{exc.colno}: syntax error: {exc.msg}"]) from exc
    return build(data, str(path))
