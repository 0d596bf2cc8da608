"""Saturated-lace truncations of the expansion and their bound directions.

Dropping every unsaturated term from the expansion leaves a sum that is
one-sided whenever (a) all unsaturated laces share a cardinality parity and
(b) all weights are nonnegative: odd parity drops only nonpositive terms
(upper bound), even parity only nonnegative ones (lower bound).  With no
unsaturated laces at all the truncation is the exact value.  Mixed parity
admits no direction and is rejected with a histogram rather than reported
as a number that merely looks like a bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import LaceMap, enumerate_laces
from .errors import DirectionError, MixedParityError, NegativeWeightError
from .expansion import LaceTerm, WeightedInstance, _check_universe, _term_value

UPPER = "upper"
LOWER = "lower"
EXACT = "exact"


@dataclass(frozen=True)
class ParityAnalysis:
    """Saturation census of a map's laces.

    ``parity`` is "odd" or "even" when every unsaturated lace shares that
    cardinality parity, and None when there are no unsaturated laces (the
    truncation is then exact).
    """

    all_unsaturated_same_parity: bool
    parity: Optional[str]
    unsaturated_count: int
    odd_count: int
    even_count: int
    cardinality_histogram: dict[int, int]


@dataclass(frozen=True)
class SieveBound:
    """A one-sided (or exact) truncated sum over the saturated laces only."""

    value: Fraction
    direction: str
    terms: tuple[LaceTerm, ...]


def analyze_parity(map: LaceMap, *, limit: Optional[int] = None) -> ParityAnalysis:
    """Classify laces by saturation and report the unsaturated parity."""
    odd = 0
    even = 0
    hist: dict[int, int] = {}
    for lace in enumerate_laces(map, limit=limit):
        if lace.saturated:
            continue
        size = len(lace.members)
        hist[size] = hist.get(size, 0) + 1
        if size % 2:
            odd += 1
        else:
            even += 1
    uniform = odd == 0 or even == 0
    parity = None
    if uniform and odd:
        parity = "odd"
    elif uniform and even:
        parity = "even"
    return ParityAnalysis(
        all_unsaturated_same_parity=uniform,
        parity=parity,
        unsaturated_count=odd + even,
        odd_count=odd,
        even_count=even,
        cardinality_histogram=hist,
    )


def sieve_bound(inst: WeightedInstance, map: LaceMap, *,
                limit: Optional[int] = None) -> SieveBound:
    """The saturated-only alternating sum with its sound direction.

    Requires uniform unsaturated parity and nonnegative weights; dropping
    signed terms is one-sided only when each dropped term has a known sign.
    """
    _check_universe(inst, map)
    if inst.has_negative_weight():
        raise NegativeWeightError(
            "directional sieve bounds require nonnegative weights")
    analysis = analyze_parity(map, limit=limit)
    if not analysis.all_unsaturated_same_parity:
        raise MixedParityError(
            "unsaturated laces of both parities: no sieve direction is sound",
            odd_count=analysis.odd_count,
            even_count=analysis.even_count,
            cardinality_histogram=analysis.cardinality_histogram,
        )
    if analysis.unsaturated_count == 0:
        direction = EXACT
    elif analysis.parity == "odd":
        direction = UPPER
    else:
        direction = LOWER
    agg = inst.weight_by_mask()
    terms = []
    total = Fraction(0)
    for lace in enumerate_laces(map, limit=limit):
        if not lace.saturated:
            continue
        value = _term_value(agg, lace.members.mask(), 0)
        signed = value if len(lace.members) % 2 == 0 else -value
        total += signed
        terms.append(LaceTerm(lace, value, signed))
    return SieveBound(value=total, direction=direction, terms=tuple(terms))


def sieve_bracket(inst: WeightedInstance, maps: tuple[LaceMap, LaceMap], *,
                  limit: Optional[int] = None) -> tuple[SieveBound, SieveBound]:
    """Bracket the property-free weight between two opposing sieve bounds.

    Returns (lower, upper).  An exact bound can serve either side.  If the
    bracket's lower end is positive the true value is positive; if its
    upper end is nonpositive the true value (of a nonnegative-weight count)
    is zero.
    """
    first = sieve_bound(inst, maps[0], limit=limit)
    second = sieve_bound(inst, maps[1], limit=limit)
    pair = None
    for a, b in ((first, second), (second, first)):
        if a.direction in (LOWER, EXACT) and b.direction in (UPPER, EXACT):
            pair = (a, b)
            break
    if pair is None:
        raise DirectionError(
            f"bound directions do not oppose: got {first.direction!r} "
            f"and {second.direction!r}")
    lower, upper = pair
    if lower.value > upper.value:
        raise DirectionError(
            f"bracket is empty: lower {lower.value} exceeds upper "
            f"{upper.value}; one of the maps violates the lace axioms")
    return (lower, upper)
