"""Command-line interface: JSON in, JSON out, deterministic byte-for-byte.

Subcommands:
  verify          axiom report for a map spec
  laces           lace list with compatible sets and saturation flags
  expand          full expansion report for a map and an instance
  sieve           saturated-only bound with its direction
  identity-check  formal polynomial identity for a map
  demo            built-in applications comparing oracle, expansion, bounds

Exit codes: 0 success (including "bound computed"), 1 axiom violation
reported by verify, 2 any operational error (malformed input, budget or
limit exceeded, mixed parity, ...), always with a machine-readable object
on stdout.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional

from . import applications as apps
from .core import LaceMap, enumerate_laces, verify_axioms
from .errors import LaceError, MalformedInputError
from .expansion import (
    WeightedInstance,
    lace_expansion_sum,
    n_zero_bruteforce,
    polynomial_identity_check,
)
from .maps import BonferroniMap, BrunMap, BrunThresholds, BrydgesSpencerMap, IdentityMap
from .serialize import (
    expansion_report_to_json,
    instance_from_json,
    laces_to_json,
    map_from_json,
    map_to_json,
    sieve_bound_to_json,
    weight_to_json,
)
from .sieve import sieve_bound

EXIT_OK = 0
EXIT_AXIOM_VIOLATION = 1
EXIT_ERROR = 2


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path} is not valid JSON: {exc}") from exc


def _load_map(path: str) -> LaceMap:
    return map_from_json(_load_json(path))


def _load_instance(path: str) -> WeightedInstance:
    return instance_from_json(_load_json(path))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_verify(args) -> int:
    report = verify_axioms(_load_map(args.map), limit=args.limit)
    _emit(report.to_json_dict())
    return EXIT_OK if report.passed else EXIT_AXIOM_VIOLATION


def _cmd_laces(args) -> int:
    laces = enumerate_laces(_load_map(args.map), limit=args.limit)
    _emit(laces_to_json(laces))
    return EXIT_OK


def _cmd_expand(args) -> int:
    report = lace_expansion_sum(_load_instance(args.instance),
                                _load_map(args.map), limit=args.limit)
    _emit(expansion_report_to_json(report))
    return EXIT_OK


def _cmd_sieve(args) -> int:
    bound = sieve_bound(_load_instance(args.instance), _load_map(args.map),
                        limit=args.limit)
    _emit(sieve_bound_to_json(bound))
    return EXIT_OK


def _cmd_identity_check(args) -> int:
    ok = polynomial_identity_check(_load_map(args.map), limit=args.limit)
    _emit({"identity_holds": ok})
    return EXIT_OK


# ---------------------------------------------------------------------------
# Demos
# ---------------------------------------------------------------------------

def _bound_entry(inst: WeightedInstance, map: LaceMap) -> dict:
    bound = sieve_bound(inst, map)
    return {
        "map": map_to_json(map),
        "direction": bound.direction,
        "value": weight_to_json(bound.value),
    }


def _bracket_json(bounds: list[dict]) -> Optional[dict]:
    lows = [b for b in bounds if b["direction"] in ("lower", "exact")]
    highs = [b for b in bounds if b["direction"] in ("upper", "exact")]
    if not lows or not highs:
        return None
    return {
        "lower": max((b["value"] for b in lows), key=lambda v: _frac(v)),
        "upper": min((b["value"] for b in highs), key=lambda v: _frac(v)),
    }


def _frac(s: str):
    from fractions import Fraction

    return Fraction(s)


def _demo_payload(application: str, params: dict, oracle: int,
                  expansion: Optional[str], bounds: list[dict]) -> dict:
    return {
        "application": application,
        "params": params,
        "oracle": str(oracle),
        "expansion": expansion,
        "bounds": bounds,
        "bracket": _bracket_json(bounds),
    }


def _demo_derangements(args) -> dict:
    n = args.n
    inst = apps.derangement_instance(n, budget=args.budget)
    oracle = apps.oracle_count("derangements", n=n, budget=args.budget)
    report = lace_expansion_sum(inst, IdentityMap(n))
    bounds = [_bound_entry(inst, BonferroniMap(n, k))
              for k in (2, 3) if k <= n]
    return _demo_payload("derangements", {"n": n}, oracle,
                         weight_to_json(report.n0), bounds)


def _demo_brun_primes(args) -> dict:
    primes = apps.first_primes(args.num_primes)
    inst = apps.brun_integer_instance(args.bound, primes, budget=args.budget)
    oracle = apps.oracle_count("brun_primes", bound=args.bound, primes=primes,
                               budget=args.budget)
    r = len(primes)
    report = lace_expansion_sum(inst, IdentityMap(r))
    bounds = [_bound_entry(inst, BrunMap(BrunThresholds(chain)))
              for chain in (_brun_upper_chain(r), _brun_lower_chain(r))]
    return _demo_payload("brun-primes",
                         {"bound": args.bound, "primes": primes}, oracle,
                         weight_to_json(report.n0), bounds)


def _brun_upper_chain(r: int) -> tuple[int, ...]:
    """Pair thresholds from the top: (r-1, r-1, r-3, r-3, ...), floored at 1."""
    return tuple(max(1, r - 1 - 2 * ((j - 1) // 2)) for j in range(1, r + 1))


def _brun_lower_chain(r: int) -> tuple[int, ...]:
    """Full first threshold, then pairs: (r, r-2, r-2, r-4, r-4, ...)."""
    chain = [r]
    for j in range(2, r + 1):
        chain.append(max(1, r - 2 * (j // 2)))
    return tuple(chain)


def _demo_saw(args) -> dict:
    cfg = apps.SawConfig(args.dimension, args.steps)
    inst = apps.saw_instance(cfg, budget=args.budget)
    oracle = apps.oracle_count("saw", dimension=args.dimension,
                               steps=args.steps, budget=args.budget)
    report = lace_expansion_sum(inst, BrydgesSpencerMap(cfg.steps))
    if args.terms_csv:
        _write_terms_csv(args.terms_csv, report)
    n_props = inst.universe.size
    bounds = [_bound_entry(inst, BonferroniMap(n_props, k))
              for k in (1, 2) if k <= n_props]
    payload = _demo_payload(
        "saw", {"dimension": args.dimension, "steps": args.steps}, oracle,
        weight_to_json(report.n0), bounds)
    payload["term_count"] = len(report.terms)
    return payload


def _write_terms_csv(path: str, report) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["lace", "compatible", "N", "signed"])
        for term in report.terms:
            writer.writerow([
                " ".join(map(str, term.lace.members.as_list())),
                " ".join(map(str, term.lace.compatible.as_list())),
                weight_to_json(term.value),
                weight_to_json(term.signed),
            ])


def _demo_ramsey(args) -> dict:
    cfg = apps.RamseyConfig(args.vertices, args.clique)
    inst = apps.ramsey_instance(cfg, budget=args.budget)
    oracle = apps.oracle_count("ramsey", vertices=args.vertices,
                               clique=args.clique, budget=args.budget)
    n_props = inst.universe.size
    # The full identity-map expansion enumerates 2^n_props laces; skip it
    # when that is out of reach and let the sieve bounds carry the demo.
    expansion = None
    if n_props <= 12:
        expansion = weight_to_json(
            lace_expansion_sum(inst, IdentityMap(n_props)).n0)
    bounds = [_bound_entry(inst, BonferroniMap(n_props, k))
              for k in (2, 3) if k <= n_props]
    payload = _demo_payload(
        "ramsey", {"vertices": args.vertices, "clique": args.clique}, oracle,
        expansion, bounds)
    bracket = payload["bracket"]
    if bracket is not None:
        payload["certifies"] = {
            "count_positive": _frac(bracket["lower"]) > 0,
            "count_zero": _frac(bracket["upper"]) <= 0,
        }
    return payload


DEMOS = {
    "derangements": _demo_derangements,
    "brun-primes": _demo_brun_primes,
    "saw": _demo_saw,
    "ramsey": _demo_ramsey,
}


def _cmd_demo(args) -> int:
    _emit(DEMOS[args.application](args))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laces",
        description="Lace-map verification, lace enumeration, exact "
                    "expansion sums, and sieve bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, instance=False):
        p.add_argument("--map", required=True, help="path to a map spec JSON file")
        if instance:
            p.add_argument("--instance", required=True,
                           help="path to a weighted instance JSON file")
        p.add_argument("--limit", type=int, default=None,
                       help="override the exhaustive-check limit")

    p = sub.add_parser("verify", help="check the three lace-map axioms")
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("laces", help="enumerate laces with compatible sets")
    add_common(p)
    p.set_defaults(func=_cmd_laces)

    p = sub.add_parser("expand", help="full expansion report")
    add_common(p, instance=True)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("sieve", help="saturated-only bound with direction")
    add_common(p, instance=True)
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("identity-check",
                       help="formal polynomial identity for a map")
    add_common(p)
    p.set_defaults(func=_cmd_identity_check)

    p = sub.add_parser("demo", help="built-in exact counting applications")
    demo_sub = p.add_subparsers(dest="application", required=True)

    d = demo_sub.add_parser("derangements")
    d.add_argument("--n", type=int, required=True)
    _add_budget(d)

    d = demo_sub.add_parser("brun-primes")
    d.add_argument("--bound", type=int, required=True)
    d.add_argument("--num-primes", type=int, required=True)
    _add_budget(d)

    d = demo_sub.add_parser("saw")
    d.add_argument("--dimension", type=int, required=True)
    d.add_argument("--steps", type=int, required=True)
    d.add_argument("--terms-csv", default=None,
                   help="also write the per-lace term table as CSV")
    _add_budget(d)

    d = demo_sub.add_parser("ramsey")
    d.add_argument("--vertices", type=int, required=True)
    d.add_argument("--clique", type=int, required=True)
    _add_budget(d)

    for d in demo_sub.choices.values():
        d.set_defaults(func=_cmd_demo)
    return parser


def _add_budget(p) -> None:
    p.add_argument("--budget", type=int, default=None,
                   help="override the enumeration budget")


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LaceError as exc:
        _emit({"error": {
            "code": exc.code,
            "message": str(exc),
            **({"detail": exc.detail()} if exc.detail() else {}),
        }})
        return EXIT_ERROR
    except ValueError as exc:
        _emit({"error": {"code": "malformed_input", "message": str(exc)}})
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
