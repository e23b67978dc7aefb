"""JSON readers and writers for codes, realizations, plans and point sets."""
from __future__ import annotations

import json
from typing import Any

from .code import Code, SimplicialComplex, code_from_words, members, to_mask, word_key
from .errors import PreconditionError
from .geometry.types import (
    Empty,
    Halfspace,
    HPolytope,
    Realization,
    VPolytope,
    point,
    rat,
    rat_str,
)
from .morphisms import TrunkMorphism
from .realize import RealizationPlan


def _require(obj: Any, key: str, what: str):
    if not isinstance(obj, dict) or key not in obj:
        raise PreconditionError(f"{what} JSON needs a {key!r} field")
    return obj[key]


def code_to_json(C: Code) -> dict:
    return {"n": C.n, "codewords": C.as_lists()}


def code_from_json(obj: dict, strict: bool = False) -> Code:
    n = _require(obj, "n", "code")
    words = _require(obj, "codewords", "code")
    if not isinstance(n, int) or not isinstance(words, list):
        raise PreconditionError("code JSON: 'n' must be an integer and 'codewords' a list")
    for w in words:
        if not isinstance(w, list) or any(not isinstance(i, int) for i in w):
            raise PreconditionError(f"code JSON: codeword {w!r} is not a list of integers")
        if any(i > n or i < 1 for i in w):
            raise PreconditionError(f"codeword {w} has a neuron outside [1..{n}]")
    return code_from_words(n, words, strict=strict)


def complex_from_json(obj: dict) -> SimplicialComplex:
    """Accepts {"n", "facets"} or a subset-closed {"n", "codewords"}."""
    n = _require(obj, "n", "complex")
    if "facets" in obj:
        return SimplicialComplex.from_facets(n, obj["facets"])
    C = code_from_json(obj)
    return SimplicialComplex(C.n, C.words)


def _rats(values) -> list[str]:
    return [rat_str(v) for v in values]


def set_to_json(S) -> dict:
    if isinstance(S, Empty):
        return {"kind": "empty"}
    if isinstance(S, VPolytope):
        return {"kind": "V", "points": [_rats(p) for p in S.points]}
    return {"kind": "H", "ineqs": [{"a": _rats(h.a), "b": rat_str(h.b)} for h in S.halfspaces]}


def set_from_json(obj: dict, d: int, strict: bool):
    kind = _require(obj, "kind", "set")
    if kind == "empty":
        return Empty(d)
    if kind == "V":
        pts = _require(obj, "points", "V-set")
        if not pts:
            return Empty(d)
        return VPolytope(d, tuple(point(p) for p in pts))
    if kind == "H":
        ineqs = _require(obj, "ineqs", "H-set")
        hs = tuple(Halfspace(point(q["a"]), rat(q["b"]), strict) for q in ineqs)
        return HPolytope(d, hs, strict)
    raise PreconditionError(f"unknown set kind {kind!r}")


def realization_to_json(R: Realization) -> dict:
    return {"dim": R.d, "topology": R.topology, "sets": [set_to_json(S) for S in R.sets]}


def realization_from_json(obj: dict) -> Realization:
    d = _require(obj, "dim", "realization")
    topo = _require(obj, "topology", "realization")
    sets = _require(obj, "sets", "realization")
    if not isinstance(d, int) or d < 1:
        raise PreconditionError("realization 'dim' must be a positive integer")
    strict = topo == "open"
    return Realization(d, topo, tuple(set_from_json(s, d, strict) for s in sets))


def points_to_json(points, d: int | None = None) -> dict:
    pts = [_rats(p) for p in points]
    dim = d if d is not None else (len(points[0]) if points else 0)
    return {"dim": dim, "points": pts}


def points_from_json(obj: dict) -> list[tuple]:
    d = _require(obj, "dim", "points")
    pts = [point(p) for p in _require(obj, "points", "points")]
    for p in pts:
        if len(p) != d:
            raise PreconditionError(f"point {list(map(rat_str, p))} does not have dimension {d}")
    return pts


def trunks_to_json(f: TrunkMorphism) -> dict:
    order = {w: i for i, w in enumerate(f.source.sorted_words)}
    return {
        "source": code_to_json(f.source),
        "trunks": [sorted(order[c] for c in T) for T in f.trunks],
    }


def trunks_from_json(obj: dict) -> TrunkMorphism:
    C = code_from_json(_require(obj, "source", "trunk-list"))
    words = C.sorted_words
    trunks = []
    for T in _require(obj, "trunks", "trunk-list"):
        try:
            trunks.append(frozenset(words[i] for i in T))
        except (IndexError, TypeError):
            raise PreconditionError(f"trunk {T!r} has an index outside 0..{len(words) - 1}")
    return TrunkMorphism(C, tuple(trunks))


def plan_to_json(plan: RealizationPlan) -> dict:
    return {
        "kind": "plan",
        "code": code_to_json(plan.code),
        "dim": plan.m,
        "route": plan.route,
        "facets": [members(T) for T in plan.facets],
        "images": [{"facet": members(T), "point": _rats(p)}
                   for T, p in sorted(plan.images.items(), key=lambda kv: word_key(kv[0]))],
        "points": [{"sigma": members(c), "point": _rats(p)}
                   for c, p in sorted(plan.points.items(), key=lambda kv: word_key(kv[0]))],
        "sets": [set_to_json(S) for S in plan.sets],
        "warning": plan.warning,
    }


def plan_from_json(obj: dict) -> RealizationPlan:
    C = code_from_json(_require(obj, "code", "plan"))
    m = _require(obj, "dim", "plan")
    sets = [set_from_json(s, m, False) for s in _require(obj, "sets", "plan")]
    images = {to_mask(e["facet"]): point(e["point"]) for e in obj.get("images", [])}
    points = {to_mask(e["sigma"]): point(e["point"]) for e in _require(obj, "points", "plan")}
    facets = [to_mask(F) for F in obj.get("facets", [])]
    return RealizationPlan(C, m, obj.get("route", "unknown"), facets, {}, images, points,
                           sets, obj.get("warning"))


def is_plan(obj: Any) -> bool:
    return isinstance(obj, dict) and obj.get("kind") == "plan"


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise PreconditionError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{path} is not valid JSON: {exc}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
