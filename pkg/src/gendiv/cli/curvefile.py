"""Curve files: JSON documents with rationals written as ``"p/q"`` strings.

    {"field": "Q", "name": "cusp", "chart1": {"semigroup": [2, 3]}}
    {"field": "Q", "chart1": {"clusters": [
        {"preset": "node", "points": ["1", "-1"]},
        {"branches": ["0"], "conductor_orders": [3],
         "conditions": [["0", "1", "0"], ["0", "0", "1"]]}]}}

A ``conditions`` row is a functional on the cluster's jet space: branch-major,
Taylor order minor, ``conductor_orders[j]`` entries for branch ``j``.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from gendiv.curvespec import (
    PRESETS,
    Curve,
    CurveError,
    curve_from_semigroup,
    make_cluster,
    semigroup_cluster,
)
from gendiv.qlinalg import fmt_scalar, scalar


class CurveFileError(CurveError):
    pass


class CurveParseError(ValueError):
    pass


BUNDLED = ("semigroup-345", "cusp", "node", "tacnode", "two-node-genus-2", "semigroup-25")


def _line_of(text: str, needle: str, nth: int = 0) -> int | None:
    pos = -1
    for _ in range(nth + 1):
        pos = text.find(needle, pos + 1)
        if pos < 0:
            return None
    return text.count("\n", 0, pos) + 1


def _where(text, needle, nth=0):
    if text is None:
        return ""
    ln = _line_of(text, needle, nth)
    return "" if ln is None else "line %d: " % ln


def _rat(x, what):
    if isinstance(x, bool) or isinstance(x, float):
        raise CurveFileError("%s: rationals must be integers or 'p/q' strings, got %r" % (what, x))
    try:
        return scalar(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise CurveFileError("%s: %r is not a rational number (complex or irrational branches are not supported)" % (what, x)) from None


def curve_from_doc(doc, text=None, name=None) -> Curve:
    if not isinstance(doc, dict):
        raise CurveFileError("top level must be a JSON object")
    fld = doc.get("field", "Q")
    if fld != "Q":
        raise CurveFileError("%sonly the field 'Q' is supported, got %r" % (_where(text, '"field"'), fld))
    ch = doc.get("chart1")
    if not isinstance(ch, dict):
        raise CurveFileError("missing object 'chart1'")
    name = doc.get("name", name)
    if "semigroup" in ch:
        gens = ch["semigroup"]
        if not isinstance(gens, list) or not all(isinstance(g, int) and not isinstance(g, bool) for g in gens):
            raise CurveFileError("%ssemigroup must be a list of integers" % _where(text, '"semigroup"'))
        try:
            return Curve(curve_from_semigroup(gens).clusters, name=name, source=doc)
        except CurveError as exc:
            raise CurveFileError("%s%s" % (_where(text, '"semigroup"'), exc)) from None
    if "clusters" not in ch:
        raise CurveFileError("chart1 needs 'semigroup' or 'clusters'")
    raw = ch["clusters"]
    if not isinstance(raw, list):
        raise CurveFileError("%sclusters must be a list" % _where(text, '"clusters"'))
    clusters = []
    counts = {"preset": 0, "branches": 0, "semigroup_at": 0}
    for i, item in enumerate(raw):
        key = "preset" if isinstance(item, dict) and "preset" in item else "branches"
        loc = _where(text, '"%s"' % key, counts.get(key, 0))
        counts[key] = counts.get(key, 0) + 1
        try:
            clusters.append(_cluster(item, i))
        except CurveError as exc:
            raise CurveFileError("%scluster %d: %s" % (loc, i, exc)) from None
    try:
        return Curve(clusters, name=name, source=doc)
    except CurveError as exc:
        raise CurveFileError("%s%s" % (_where(text, '"clusters"'), exc)) from None


def _cluster(item, i):
    if not isinstance(item, dict):
        raise CurveFileError("cluster must be an object")
    if "preset" in item:
        p = item["preset"]
        if p == "semigroup":
            gens = item.get("generators")
            at = _rat(item.get("at", "0"), "at")
            return semigroup_cluster(gens, at)
        if p not in PRESETS:
            raise CurveFileError("unknown preset %r (node, cusp, tacnode, semigroup)" % p)
        fn, npts = PRESETS[p]
        pts = item.get("points")
        if not isinstance(pts, list) or len(pts) != npts:
            raise CurveFileError("preset %s needs %d points" % (p, npts))
        return fn(*[_rat(a, "point") for a in pts])
    branches = item.get("branches")
    orders = item.get("conductor_orders")
    conds = item.get("conditions", [])
    if not isinstance(branches, list) or not branches:
        raise CurveFileError("cluster needs a nonempty 'branches' list")
    bs = [_rat(a, "branch") for a in branches]
    if not isinstance(orders, list) or len(orders) != len(bs):
        raise CurveFileError("cluster needs 'conductor_orders' with one entry per branch")
    if not all(isinstance(c, int) and c >= 0 for c in orders):
        raise CurveFileError("conductor orders must be nonnegative integers")
    n = sum(orders)
    terms = []
    for row in conds:
        if not isinstance(row, list) or len(row) != n:
            raise CurveFileError("each condition row needs %d entries" % n)
        vals = [_rat(x, "condition entry") for x in row]
        term = []
        k = 0
        for j, c in enumerate(orders):
            for r in range(c):
                if vals[k]:
                    term.append((j, r, vals[k]))
                k += 1
        terms.append(term)
    return make_cluster(bs, terms, orders)


def parse_curve_text(text: str, name=None) -> Curve:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveParseError("line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from None
    return curve_from_doc(doc, text, name)


def bundled_path(name: str):
    return resources.files("gendiv") / "data" / (name + ".json")


def load_curve(path_or_name: str) -> Curve:
    """Load a curve file; bare names of bundled curves also work."""
    p = Path(path_or_name)
    if p.exists():
        return parse_curve_text(p.read_text(), name=p.stem)
    stem = path_or_name[:-5] if path_or_name.endswith(".json") else path_or_name
    if stem in BUNDLED:
        return parse_curve_text(bundled_path(stem).read_text(), name=stem)
    raise FileNotFoundError("no curve file %r (bundled: %s)" % (path_or_name, ", ".join(BUNDLED)))


def bundled_curves() -> dict:
    return {n: load_curve(n) for n in BUNDLED}


def curve_to_doc(c: Curve) -> dict:
    out = {"field": "Q"}
    if c.name:
        out["name"] = c.name
    if len(c.clusters) == 1 and c.clusters[0].kind == "semigroup" and c.clusters[0].branches[0] == 0:
        out["chart1"] = {"semigroup": list(c.clusters[0].params)}
        return out
    if not c.clusters:
        out["chart1"] = {"semigroup": [1]}
        return out
    cl_out = []
    for cl in c.clusters:
        if cl.kind in PRESETS:
            cl_out.append({"preset": cl.kind, "points": [fmt_scalar(a) for a in cl.params]})
        elif cl.kind == "semigroup":
            cl_out.append({"preset": "semigroup", "generators": list(cl.params), "at": fmt_scalar(cl.branches[0])})
        else:
            cl_out.append(
                {
                    "branches": [fmt_scalar(a) for a in cl.branches],
                    "conductor_orders": list(cl.conductor_orders),
                    "conditions": [[fmt_scalar(x) for x in row] for row in cl.conditions],
                }
            )
    out["chart1"] = {"clusters": cl_out}
    return out


def print_curve(c: Curve) -> str:
    return json.dumps(curve_to_doc(c), indent=2) + "\n"
