"""JSON (de)serialization for polytopes, fans, morphisms and matrices.

Formats:
  polytope  {"rank": n, "vertices": [[...], ...]}
  fan       {"rank": n, "rays": [[...], ...], "cones": [[ray indices], ...]}
  morphism  {"matrix": [[...], ...], "domain": <fan>, "codomain": <fan>}
  matrix    [[...], ...]
"""

from __future__ import annotations

import json

from .errors import ToricError
from .fans import Fan
from .polytope import LatticePolytope


class ParseError(ToricError):
    code = "parse-error"


def _require(cond, msg):
    if not cond:
        raise ParseError(msg)


def polytope_to_json(p):
    return {"rank": p.rank, "vertices": [list(v) for v in p.vertices]}


def polytope_from_json(data):
    _require(isinstance(data, dict), "polytope must be an object")
    _require("vertices" in data, "polytope needs 'vertices'")
    verts = data["vertices"]
    _require(
        isinstance(verts, list) and verts and all(isinstance(v, list) for v in verts),
        "'vertices' must be a non-empty list of integer lists",
    )
    rank = data.get("rank", len(verts[0]))
    _require(all(len(v) == rank for v in verts), "vertex length mismatch")
    return LatticePolytope.hull(verts)


def fan_to_json(f):
    return {
        "rank": f.rank,
        "rays": [list(r) for r in f.rays],
        "cones": [list(c) for c in f.max_cones],
    }


def fan_from_json(data):
    _require(isinstance(data, dict), "fan must be an object")
    for key in ("rank", "rays", "cones"):
        _require(key in data, f"fan needs '{key}'")
    rays = [tuple(int(x) for x in r) for r in data["rays"]]
    cones = [tuple(int(i) for i in c) for c in data["cones"]]
    nrays = len(rays)
    _require(
        all(0 <= i < nrays for c in cones for i in c), "cone ray index out of range"
    )
    return Fan(int(data["rank"]), rays, cones)


def matrix_from_json(data):
    _require(
        isinstance(data, list) and data and all(isinstance(r, list) for r in data),
        "matrix must be a list of rows",
    )
    return tuple(tuple(int(x) for x in r) for r in data)


def matrix_to_json(m):
    return [list(r) for r in m]


def morphism_parts_from_json(data):
    _require(isinstance(data, dict), "morphism must be an object")
    for key in ("matrix", "domain", "codomain"):
        _require(key in data, f"morphism needs '{key}'")
    return (
        matrix_from_json(data["matrix"]),
        fan_from_json(data["domain"]),
        fan_from_json(data["codomain"]),
    )


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def load_path(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
