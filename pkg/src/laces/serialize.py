"""JSON codecs for maps, instances, and reports.

Schemas (all property indices 0-based, all subset arrays ascending):

  map       {"kind": "identity"|"bonferroni"|"brun"|"brydges_spencer"|"table",
             "n": int, "k": int?, "thresholds": [int]?, "dots": int?,
             "table": [{"s": [int], "l": [int]}, ...]?}
  instance  {"n": int, "elements": [{"w": int|"rational", "props": [int]}]}
  expansion {"n0": "...", "terms": [{"lace": [int], "compatible": [int],
             "N": "...", "signed": "..."}]}
  sieve     {"value": "...", "direction": "upper"|"lower"|"exact",
             "terms": [...as expansion...]}
  axioms    {"pass": bool, "violated": "i"|"ii"|"iii"?, "witness": {...}?}
  arcs      {"dots": int, "arcs": [[i, j], ...]}

Exact values are emitted as strings ("3", "-7/2"); instance weights are
accepted as JSON ints or rational strings, never floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .core import Lace, LaceMap, PropSubset, TableMap, PropertyUniverse
from .errors import MalformedInputError
from .expansion import Element, ExpansionReport, LaceTerm, WeightedInstance
from .maps import (
    ArcSet,
    BonferroniMap,
    BrunMap,
    BrunThresholds,
    BrydgesSpencerMap,
    IdentityMap,
)
from .sieve import SieveBound

MAP_KINDS = ("identity", "bonferroni", "brun", "brydges_spencer", "table")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise MalformedInputError(message)


def _as_index_list(value: Any, what: str) -> list[int]:
    _require(isinstance(value, list) and
             all(isinstance(i, int) and i >= 0 for i in value),
             f"{what} must be a list of nonnegative integers")
    return value


# ---------------------------------------------------------------------------
# Lace maps
# ---------------------------------------------------------------------------

def map_to_json(map: LaceMap) -> dict:
    out: dict = {"kind": map.kind, "n": map.universe.size}
    out.update(map.params_json())
    return out


def map_from_json(data: Any) -> LaceMap:
    _require(isinstance(data, dict), "map spec must be a JSON object")
    kind = data.get("kind")
    _require(kind in MAP_KINDS, f"unknown map kind {kind!r}")
    if kind == "brydges_spencer":
        dots = data.get("dots")
        _require(isinstance(dots, int) and dots >= 0,
                 "brydges_spencer requires integer dots >= 0")
        m = BrydgesSpencerMap(dots)
        if "n" in data:
            _require(data["n"] == m.universe.size,
                     f"n={data['n']} inconsistent with dots={dots} "
                     f"(expected {m.universe.size})")
        return m
    n = data.get("n")
    _require(isinstance(n, int) and n >= 0, "map spec requires integer n >= 0")
    if kind == "identity":
        return IdentityMap(n)
    if kind == "bonferroni":
        k = data.get("k")
        _require(isinstance(k, int) and k >= 1,
                 "bonferroni requires integer k >= 1")
        return BonferroniMap(n, k)
    if kind == "brun":
        thresholds = data.get("thresholds")
        _require(isinstance(thresholds, list) and len(thresholds) == n and
                 all(isinstance(t, int) for t in thresholds),
                 "brun requires a thresholds list of length n")
        try:
            return BrunMap(BrunThresholds(tuple(thresholds)))
        except ValueError as exc:
            raise MalformedInputError(str(exc)) from exc
    # table
    rows = data.get("table")
    _require(isinstance(rows, list), "table kind requires a table array")
    entries: dict[int, int] = {}
    for row in rows:
        _require(isinstance(row, dict) and "s" in row and "l" in row,
                 'table rows must be {"s": [...], "l": [...]}')
        s = PropSubset.from_iterable(_as_index_list(row["s"], "table subset"))
        image = PropSubset.from_iterable(_as_index_list(row["l"], "table image"))
        mask = s.mask()
        _require(mask not in entries,
                 f"duplicate table entry for subset {s.as_list()}")
        entries[mask] = image.mask()
    return TableMap(PropertyUniverse(n), entries)


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

def _weight_from_json(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise MalformedInputError("weights must be integers or rational strings")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"bad rational weight {value!r}") from exc
    raise MalformedInputError(
        f"weights must be integers or rational strings, not {type(value).__name__}")


def weight_to_json(value: Fraction) -> str:
    return str(value)


def instance_to_json(inst: WeightedInstance) -> dict:
    return {
        "n": inst.universe.size,
        "elements": [
            {"w": weight_to_json(el.weight), "props": el.properties.as_list()}
            for el in inst.elements
        ],
    }


def instance_from_json(data: Any) -> WeightedInstance:
    _require(isinstance(data, dict), "instance must be a JSON object")
    n = data.get("n")
    _require(isinstance(n, int) and n >= 0, "instance requires integer n >= 0")
    elements_json = data.get("elements")
    _require(isinstance(elements_json, list), "instance requires an elements array")
    universe = PropertyUniverse(n)
    elements = []
    for row in elements_json:
        _require(isinstance(row, dict) and "w" in row and "props" in row,
                 'instance elements must be {"w": ..., "props": [...]}')
        props = PropSubset.from_iterable(_as_index_list(row["props"], "props"))
        _require(not props.members or max(props.members) < n,
                 f"element property set {props.as_list()} outside universe "
                 f"of size {n}")
        elements.append(Element(_weight_from_json(row["w"]), props))
    return WeightedInstance(universe, tuple(elements))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def _term_to_json(term: LaceTerm) -> dict:
    return {
        "lace": term.lace.members.as_list(),
        "compatible": term.lace.compatible.as_list(),
        "N": weight_to_json(term.value),
        "signed": weight_to_json(term.signed),
    }


def expansion_report_to_json(report: ExpansionReport) -> dict:
    return {
        "n0": weight_to_json(report.n0),
        "terms": [_term_to_json(t) for t in report.terms],
    }


def sieve_bound_to_json(bound: SieveBound) -> dict:
    return {
        "value": weight_to_json(bound.value),
        "direction": bound.direction,
        "terms": [_term_to_json(t) for t in bound.terms],
    }


def laces_to_json(laces: list[Lace]) -> dict:
    return {
        "count": len(laces),
        "laces": [
            {
                "lace": lace.members.as_list(),
                "compatible": lace.compatible.as_list(),
                "saturated": lace.saturated,
            }
            for lace in laces
        ],
    }


def arcset_to_json(arcs: ArcSet) -> dict:
    return {"dots": arcs.dots, "arcs": arcs.as_list()}


def arcset_from_json(data: Any) -> ArcSet:
    _require(isinstance(data, dict) and isinstance(data.get("dots"), int),
             'arc sets must be {"dots": int, "arcs": [[i, j], ...]}')
    arcs = data.get("arcs")
    _require(isinstance(arcs, list) and
             all(isinstance(a, list) and len(a) == 2 for a in arcs),
             "arcs must be a list of [i, j] pairs")
    return ArcSet(data["dots"], frozenset((a[0], a[1]) for a in arcs))
