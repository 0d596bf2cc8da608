"""The weighted expansion identity and its formal polynomial counterpart.

For a finite element set X where each element carries an exact weight and a
subset of the properties, and any axiom-satisfying lace-map, the total
weight of the property-free elements equals

    sum over laces L of (-1)^|L| * N(L),

where N(L) is the weight of the elements having every property of L and no
property compatible with L.  With the identity map this is
inclusion-exclusion; other maps regroup the same alternating sum along their
lace fibers.  Everything here is exact: weights are ints or Fractions and
no floating point appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .core import (
    Lace,
    LaceMap,
    PropSubset,
    PropertyUniverse,
    enumerate_laces,
    exhaustive_limit,
    is_lace,
)
from .errors import LimitExceededError, NotALaceError, UniverseMismatchError

Weight = Union[int, Fraction]

DEFAULT_POLY_LIMIT = 14


def poly_limit(override: Optional[int] = None) -> int:
    if override is not None:
        if override < 1:
            raise ValueError("polynomial limit must be positive")
        return override
    import os

    env = os.environ.get("LACES_POLY_LIMIT")
    return int(env) if env else DEFAULT_POLY_LIMIT


@dataclass(frozen=True)
class Element:
    """One member of X: an exact weight and the set of properties it has."""

    weight: Fraction
    properties: PropSubset

    def __post_init__(self):
        if isinstance(self.weight, float):
            raise ValueError("weights must be exact (int or Fraction), not float")
        object.__setattr__(self, "weight", Fraction(self.weight))


@dataclass(frozen=True)
class WeightedInstance:
    """A weighted element set over a property universe."""

    universe: PropertyUniverse
    elements: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for el in self.elements:
            self.universe.check_subset(el.properties)

    @classmethod
    def build(cls, universe: PropertyUniverse,
              pairs: Iterable[tuple[Weight, Iterable[int]]]) -> "WeightedInstance":
        return cls(universe, tuple(
            Element(Fraction(w), PropSubset.from_iterable(props))
            for w, props in pairs))

    def total_weight(self) -> Fraction:
        return sum((el.weight for el in self.elements), Fraction(0))

    def weight_by_mask(self) -> dict[int, Fraction]:
        """Aggregate weights of elements sharing a property mask."""
        agg: dict[int, Fraction] = {}
        for el in self.elements:
            m = el.properties.mask()
            agg[m] = agg.get(m, Fraction(0)) + el.weight
        return agg

    def has_negative_weight(self) -> bool:
        return any(el.weight < 0 for el in self.elements)


@dataclass(frozen=True)
class LaceTerm:
    """One term of the expansion: a lace, its weight sum, and the signed value."""

    lace: Lace
    value: Fraction
    signed: Fraction

    def __post_init__(self):
        expect = self.value if len(self.lace.members) % 2 == 0 else -self.value
        if self.signed != expect:
            raise ValueError("signed value inconsistent with lace cardinality")


@dataclass(frozen=True)
class ExpansionReport:
    """All lace terms in canonical order and their exact sum."""

    n0: Fraction
    terms: tuple[LaceTerm, ...]


def _check_universe(inst: WeightedInstance, map: LaceMap) -> None:
    if inst.universe.size != map.universe.size:
        raise UniverseMismatchError(
            f"instance universe has {inst.universe.size} properties, "
            f"map universe has {map.universe.size}")


def _term_value(agg: dict[int, Fraction], need: int, forbid: int) -> Fraction:
    return sum((w for m, w in agg.items()
                if (m & need) == need and not (m & forbid)), Fraction(0))


def n_of_lace(inst: WeightedInstance, map: LaceMap, lace: Lace) -> Fraction:
    """Weight of elements with all of the lace's properties and none compatible.

    Saturated laces have an empty compatible set, so their value is a plain
    superset-weight; unsaturated laces additionally exclude every compatible
    property.
    """
    _check_universe(inst, map)
    if not is_lace(map, lace.members):
        raise NotALaceError(
            f"{lace.members.as_list()} is not a lace of this map")
    return _term_value(inst.weight_by_mask(),
                       lace.members.mask(), lace.compatible.mask())


def n_zero_bruteforce(inst: WeightedInstance) -> Fraction:
    """Total weight of the elements having no property at all.

    The independent oracle for the expansion identity: a direct filter, no
    lace machinery.
    """
    return sum((el.weight for el in inst.elements if not el.properties.members),
               Fraction(0))


def lace_expansion_sum(inst: WeightedInstance, map: LaceMap, *,
                       limit: Optional[int] = None) -> ExpansionReport:
    """Evaluate the full alternating sum over all laces of the map.

    For every axiom-satisfying map the resulting n0 equals
    n_zero_bruteforce(inst), exactly.  Terms appear in canonical lace order
    so reports diff cleanly.
    """
    _check_universe(inst, map)
    agg = inst.weight_by_mask()
    terms = []
    total = Fraction(0)
    for lace in enumerate_laces(map, limit=limit):
        value = _term_value(agg, lace.members.mask(), lace.compatible.mask())
        signed = value if len(lace.members) % 2 == 0 else -value
        total += signed
        terms.append(LaceTerm(lace, value, signed))
    return ExpansionReport(n0=total, terms=tuple(terms))


# ---------------------------------------------------------------------------
# Multilinear polynomials over the property variables
# ---------------------------------------------------------------------------

class MultilinearPoly:
    """Exact integer polynomial, multilinear in one variable per property.

    Monomials are support sets (bitmasks); zero coefficients are never
    stored.  Multiplication is defined only for operands over disjoint
    variable supports, which is all the expansion identity needs and keeps
    every product honestly multilinear.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Optional[dict[int, int]] = None):
        self.n = n
        self.coeffs = {m: c for m, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls, n: int) -> "MultilinearPoly":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "MultilinearPoly":
        return cls(n, {0: 1})

    @classmethod
    def monomial(cls, n: int, support: PropSubset, coeff: int = 1) -> "MultilinearPoly":
        return cls(n, {support.mask(): coeff})

    @classmethod
    def linear_factor(cls, n: int, p: int) -> "MultilinearPoly":
        """The factor 1 + Y_p."""
        return cls(n, {0: 1, 1 << p: 1})

    def support_mask(self) -> int:
        out = 0
        for m in self.coeffs:
            out |= m
        return out

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return MultilinearPoly(self.n, out)

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if self.support_mask() & other.support_mask():
            raise ValueError(
                "product would repeat a variable; operands must have "
                "disjoint supports")
        out: dict[int, int] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = m1 | m2
                out[m] = out.get(m, 0) + c1 * c2
        return MultilinearPoly(self.n, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"MultilinearPoly(n={self.n}, terms={len(self.coeffs)})"

    def coefficient(self, support: PropSubset) -> int:
        return self.coeffs.get(support.mask(), 0)

    def evaluate_all_ones(self) -> int:
        return sum(self.coeffs.values())


def all_subsets_poly(n: int) -> MultilinearPoly:
    """Product over every property of (1 + Y_p): coefficient 1 on each subset."""
    poly = MultilinearPoly.one(n)
    for p in range(n):
        poly = poly * MultilinearPoly.linear_factor(n, p)
    return poly


def lace_fiber_poly(map: LaceMap, *, limit: Optional[int] = None) -> MultilinearPoly:
    """Sum over laces of Y^L times the product of (1 + Y_s) over C(L)."""
    n = map.universe.size
    total = MultilinearPoly.zero(n)
    for lace in enumerate_laces(map, limit=limit):
        term = MultilinearPoly.monomial(n, lace.members)
        for p in lace.compatible:
            term = term * MultilinearPoly.linear_factor(n, p)
        total = total + term
    return total


def polynomial_identity_check(map: LaceMap, *, limit: Optional[int] = None) -> bool:
    """Exact coefficient equality of the two formal expansions.

    The all-subsets product must match the lace-fiber regrouping; this is
    the formal identity behind the expansion theorem, checked coefficient by
    coefficient with exact integers.
    """
    n = map.universe.size
    cap = poly_limit(limit)
    if n > cap:
        raise LimitExceededError(
            f"polynomial identity over {n} properties exceeds the limit {cap}",
            size=n, limit=cap)
    # Lace enumeration inside may be generic; allow it the same size.
    enum_limit = max(n, exhaustive_limit(None))
    return all_subsets_poly(n) == lace_fiber_poly(map, limit=enum_limit)
