"""Instance builders and brute-force oracles for the desk-scale demos.

Four exact counting problems, each built two ways: as a WeightedInstance
(elements tagged with property sets, fed to the expansion machinery) and as
a direct filtered enumeration that never touches laces.  The oracle side is
the single source of truth for every expected value in the test suite.

derangements   permutations of 1..n; property i = "fixes point i".
brun primes    integers 1..M; property j = "divisible by the j-th prime".
saw            nearest-neighbor walks on Z^d; property (i,j) = "same site
               at times i and j", keyed by time pairs so the arc universe
               of the Brydges-Spencer map applies literally.
ramsey         2-colorings of the complete graph's edges; one property per
               vertex n-subset = "induced coloring is monochromatic".

Enumeration sizes are guarded by an explicit element budget; exceeding it
is a hard error, never silent sampling.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Optional, Sequence

from .core import PropSubset, PropertyUniverse
from .errors import BudgetExceededError, MalformedInputError
from .expansion import Element, WeightedInstance
from .maps import arc_index, arc_universe

DEFAULT_BUDGET = 100_000


def enumeration_budget(override: Optional[int] = None) -> int:
    """Max number of elements an application may enumerate."""
    if override is not None:
        if override < 1:
            raise ValueError("budget must be positive")
        return override
    env = os.environ.get("LACES_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(required: int, budget: Optional[int], what: str) -> None:
    cap = enumeration_budget(budget)
    if required > cap:
        raise BudgetExceededError(
            f"{what} needs {required} elements, over the budget {cap}",
            required=required, budget=cap)


# ---------------------------------------------------------------------------
# Derangements
# ---------------------------------------------------------------------------

def derangement_instance(n: int, *, budget: Optional[int] = None) -> WeightedInstance:
    """All permutations of 1..n, unit weight; property i-1 = fixes point i."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_budget(_factorial(n), budget, f"permutations of 1..{n}")
    universe = PropertyUniverse(n, tuple(f"fixes {i}" for i in range(1, n + 1)))
    elements = []
    for perm in permutations(range(1, n + 1)):
        fixed = frozenset(i for i in range(n) if perm[i] == i + 1)
        elements.append(Element(Fraction(1), PropSubset(fixed)))
    return WeightedInstance(universe, tuple(elements))


def _count_derangements(n: int) -> int:
    count = 0
    for perm in permutations(range(1, n + 1)):
        if all(perm[i] != i + 1 for i in range(n)):
            count += 1
    return count


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# Brun prime sieving
# ---------------------------------------------------------------------------

def first_primes(r: int) -> list[int]:
    """The first r primes by trial division (tiny r only)."""
    out: list[int] = []
    candidate = 2
    while len(out) < r:
        if all(candidate % p for p in out):
            out.append(candidate)
        candidate += 1
    return out


def brun_integer_instance(bound: int, primes: Sequence[int], *,
                          budget: Optional[int] = None) -> WeightedInstance:
    """Integers 1..bound, unit weight; property j = divisible by primes[j]."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    primes = list(primes)
    if not primes or any(p < 2 for p in primes):
        raise ValueError("divisor list must be integers >= 2")
    if len(set(primes)) != len(primes):
        raise ValueError("divisor list has duplicates")
    _check_budget(bound, budget, f"integers 1..{bound}")
    universe = PropertyUniverse(
        len(primes), tuple(f"divisible by {p}" for p in primes))
    elements = []
    for x in range(1, bound + 1):
        props = frozenset(j for j, p in enumerate(primes) if x % p == 0)
        elements.append(Element(Fraction(1), PropSubset(props)))
    return WeightedInstance(universe, tuple(elements))


def _count_coprime(bound: int, primes: Sequence[int]) -> int:
    return sum(1 for x in range(1, bound + 1)
               if all(x % p for p in primes))


# ---------------------------------------------------------------------------
# Self-avoiding walks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SawConfig:
    """Walk-enumeration parameters: dimension d and step count n."""

    dimension: int
    steps: int

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")

    @property
    def walk_count(self) -> int:
        return (2 * self.dimension) ** self.steps


def _unit_steps(d: int) -> list[tuple[int, ...]]:
    steps = []
    for axis in range(d):
        for sign in (1, -1):
            step = [0] * d
            step[axis] = sign
            steps.append(tuple(step))
    return steps


def _walk_sites(walk, d: int) -> list[tuple[int, ...]]:
    site = (0,) * d
    sites = [site]
    for step in walk:
        site = tuple(a + b for a, b in zip(site, step))
        sites.append(site)
    return sites


def saw_instance(cfg: SawConfig, *, budget: Optional[int] = None) -> WeightedInstance:
    """All n-step walks from the origin; property (i,j) = same site at i and j."""
    _check_budget(cfg.walk_count, budget,
                  f"{cfg.dimension}-dimensional walks of {cfg.steps} steps")
    n = cfg.steps
    universe = arc_universe(n)
    elements = []
    for walk in product(_unit_steps(cfg.dimension), repeat=n):
        sites = _walk_sites(walk, cfg.dimension)
        props = frozenset(
            arc_index(n, i, j)
            for i in range(n) for j in range(i + 1, n + 1)
            if sites[i] == sites[j])
        elements.append(Element(Fraction(1), PropSubset(props)))
    return WeightedInstance(universe, tuple(elements))


def _count_self_avoiding(cfg: SawConfig) -> int:
    count = 0
    for walk in product(_unit_steps(cfg.dimension), repeat=cfg.steps):
        sites = _walk_sites(walk, cfg.dimension)
        if len(set(sites)) == len(sites):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Ramsey colorings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RamseyConfig:
    """Edge 2-colorings of K_vertices, hunting monochromatic K_clique."""

    vertices: int
    clique: int

    def __post_init__(self):
        if self.clique < 2:
            raise ValueError("clique size must be >= 2")
        if self.vertices < self.clique:
            raise ValueError("vertices must be >= clique size")

    @property
    def edge_count(self) -> int:
        return self.vertices * (self.vertices - 1) // 2

    @property
    def coloring_count(self) -> int:
        return 1 << self.edge_count


def _subset_edge_masks(cfg: RamseyConfig) -> list[int]:
    """Per vertex n-subset (lex order), the bitmask of its internal edges."""
    edges = list(combinations(range(cfg.vertices), 2))
    eidx = {e: i for i, e in enumerate(edges)}
    masks = []
    for sub in combinations(range(cfg.vertices), cfg.clique):
        m = 0
        for e in combinations(sub, 2):
            m |= 1 << eidx[e]
        masks.append(m)
    return masks


def ramsey_instance(cfg: RamseyConfig, *,
                    budget: Optional[int] = None) -> WeightedInstance:
    """All edge colorings, unit weight; property = that n-subset is mono."""
    _check_budget(cfg.coloring_count, budget,
                  f"2-colorings of K_{cfg.vertices}")
    subset_masks = _subset_edge_masks(cfg)
    labels = tuple(
        "{" + ",".join(map(str, sub)) + "}"
        for sub in combinations(range(cfg.vertices), cfg.clique))
    universe = PropertyUniverse(len(subset_masks), labels)
    elements = []
    for coloring in range(cfg.coloring_count):
        props = frozenset(
            p for p, em in enumerate(subset_masks)
            if (coloring & em) == 0 or (coloring & em) == em)
        elements.append(Element(Fraction(1), PropSubset(props)))
    return WeightedInstance(universe, tuple(elements))


def _count_ramsey_free(cfg: RamseyConfig) -> int:
    subset_masks = _subset_edge_masks(cfg)
    count = 0
    for coloring in range(cfg.coloring_count):
        good = True
        for em in subset_masks:
            inside = coloring & em
            if inside == 0 or inside == em:
                good = False
                break
        if good:
            count += 1
    return count


# ---------------------------------------------------------------------------
# The oracle
# ---------------------------------------------------------------------------

def oracle_count(kind: str, *, budget: Optional[int] = None, **params) -> int:
    """Direct filtered enumeration, no lace machinery anywhere.

    kinds and params:
      derangements: n
      brun_primes:  bound, primes
      saw:          dimension, steps
      ramsey:       vertices, clique
    """
    if kind == "derangements":
        n = params["n"]
        if n < 1:
            raise ValueError("n must be >= 1")
        _check_budget(_factorial(n), budget, f"permutations of 1..{n}")
        return _count_derangements(n)
    if kind == "brun_primes":
        bound = params["bound"]
        _check_budget(bound, budget, f"integers 1..{bound}")
        return _count_coprime(bound, params["primes"])
    if kind == "saw":
        cfg = SawConfig(params["dimension"], params["steps"])
        _check_budget(cfg.walk_count, budget, "walk enumeration")
        return _count_self_avoiding(cfg)
    if kind == "ramsey":
        cfg = RamseyConfig(params["vertices"], params["clique"])
        _check_budget(cfg.coloring_count, budget, "coloring enumeration")
        return _count_ramsey_free(cfg)
    raise MalformedInputError(f"unknown application kind {kind!r}")
