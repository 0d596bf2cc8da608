"""Property universes, subsets, and the lace-map abstraction.

A lace-map sends every subset of a finite property universe to a subset of
itself, subject to three axioms:

  (i)   l(S) is contained in S;
  (ii)  whenever l(S) <= G <= S, l(G) = l(S);
  (iii) whenever l(S1) = l(S2), l(S1 | S2) = l(S1).

Fixed points of l are called laces.  The axioms force l to be a projection
whose fibers are intervals of the Boolean lattice: the subsets mapping to a
lace L are exactly those between L and L | C(L), where C(L) is the set of
properties compatible with L.  This module provides the generic machinery:
axiom verification with concrete witnesses, lace enumeration, compatible-set
computation, and the fiber-interval structure check.  Concrete closed-form
maps live in :mod:`laces.maps`.

All subsets are represented internally as bitmasks over 0-based property
indices; every operation here is a pure function of immutable values.
"""

from __future__ import annotations

import os
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import (
    IndexOutOfRangeError,
    LimitExceededError,
    NotALaceError,
    TableMapError,
)

DEFAULT_EXHAUSTIVE_LIMIT = 12
DEFAULT_TABLE_LIMIT = 16


def exhaustive_limit(override: Optional[int] = None) -> int:
    """Resolve the exhaustive-scan limit: explicit arg, env var, default."""
    if override is not None:
        if override < 1:
            raise ValueError("exhaustive limit must be positive")
        return override
    env = os.environ.get("LACES_EXHAUSTIVE_LIMIT")
    return int(env) if env else DEFAULT_EXHAUSTIVE_LIMIT


def table_limit(override: Optional[int] = None) -> int:
    if override is not None:
        if override < 1:
            raise ValueError("table limit must be positive")
        return override
    env = os.environ.get("LACES_TABLE_LIMIT")
    return int(env) if env else DEFAULT_TABLE_LIMIT


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PropertyUniverse:
    """An indexed finite set of properties 0..size-1, optionally labelled."""

    size: int
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("universe size must be >= 0")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.size:
                raise ValueError(
                    f"expected {self.size} labels, got {len(self.labels)}")

    def label(self, index: int) -> str:
        if self.labels is not None:
            return self.labels[index]
        return str(index)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def check_subset(self, s: "PropSubset") -> None:
        """Raise unless every member index is a valid property index."""
        if s.members and max(s.members) >= self.size:
            raise IndexOutOfRangeError(
                f"subset {sorted(s.members)} has members outside universe of "
                f"size {self.size}")


@dataclass(frozen=True)
class PropSubset:
    """An immutable subset of property indices, canonically ascending."""

    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        for m in members:
            if not isinstance(m, int) or m < 0:
                raise IndexOutOfRangeError(
                    f"property index {m!r} is not a nonnegative integer")

    @classmethod
    def of(cls, *indices: int) -> "PropSubset":
        return cls(frozenset(indices))

    @classmethod
    def from_iterable(cls, indices: Iterable[int]) -> "PropSubset":
        return cls(frozenset(indices))

    @classmethod
    def from_mask(cls, mask: int) -> "PropSubset":
        return cls(frozenset(_mask_to_indices(mask)))

    def mask(self) -> int:
        m = 0
        for i in self.members:
            m |= 1 << i
        return m

    def as_list(self) -> list[int]:
        """Canonical serialized form: ascending index list."""
        return sorted(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, index: int) -> bool:
        return index in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))


EMPTY_SUBSET = PropSubset(frozenset())


def _mask_to_indices(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Lace:
    """A fixed point of a lace-map together with its compatible set."""

    members: PropSubset
    compatible: PropSubset
    saturated: bool = field(default=False)

    def __post_init__(self):
        if self.members.members & self.compatible.members:
            raise ValueError("a lace and its compatible set must be disjoint")
        object.__setattr__(self, "saturated", len(self.compatible) == 0)

    def sort_key(self) -> tuple:
        return (len(self.members), self.members.as_list())


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of exhaustive axiom verification.

    ``violated`` is "i", "ii" or "iii" when ``passed`` is False, and
    ``witness`` then holds the concrete subsets and images that break the
    axiom (keys depend on the axiom; see to_json_dict).
    """

    passed: bool
    violated: Optional[str] = None
    witness: Optional[dict] = None

    def to_json_dict(self) -> dict:
        out: dict = {"pass": self.passed}
        if not self.passed:
            out["violated"] = self.violated
            out["witness"] = {
                k: (v.as_list() if isinstance(v, PropSubset) else v)
                for k, v in self.witness.items()
            }
        return out


# ---------------------------------------------------------------------------
# Lace-map abstraction
# ---------------------------------------------------------------------------

class LaceMap(ABC):
    """A total map on subsets of a property universe.

    Subclasses implement ``apply_mask``; nothing here assumes the axioms
    hold (verify_axioms is the arbiter).  Closed-form overrides for lace
    enumeration and compatible sets are optional and must agree with the
    generic definitions; the test suite cross-checks them.
    """

    kind: str = "abstract"

    def __init__(self, universe: PropertyUniverse):
        self.universe = universe

    @abstractmethod
    def apply_mask(self, mask: int) -> int:
        """Image of the subset encoded by ``mask``."""

    def compatible_mask(self, lace_mask: int) -> int:
        """Definitional scan: properties p outside L with l(L | {p}) = L."""
        out = 0
        for p in range(self.universe.size):
            bit = 1 << p
            if not (lace_mask & bit) and self.apply_mask(lace_mask | bit) == lace_mask:
                out |= bit
        return out

    def iter_lace_masks(self) -> Optional[Iterator[int]]:
        """Closed-form lace enumerator, or None to use the generic scan."""
        return None

    def params_json(self) -> dict:
        """Kind-specific JSON fields beyond {"kind", "n"}."""
        return {}

    def __repr__(self) -> str:
        return f"<{type(self).__name__} n={self.universe.size}>"


class TableMap(LaceMap):
    """A lace-map given by an explicit, total subset-to-subset table."""

    kind = "table"

    def __init__(self, universe: PropertyUniverse, entries: dict[int, int],
                 *, limit: Optional[int] = None):
        super().__init__(universe)
        n = universe.size
        cap = table_limit(limit)
        if n > cap:
            raise LimitExceededError(
                f"table map over {n} properties exceeds the table limit {cap}",
                size=n, limit=cap)
        full = universe.full_mask
        size = 1 << n
        # Totality is checked up front so lookups can never miss later.
        if len(entries) != size:
            for m in range(size):
                if m not in entries:
                    raise TableMapError(
                        f"table map is missing an entry for subset "
                        f"{sorted(_mask_to_indices(m))}")
        for m, image in entries.items():
            if not 0 <= m <= full or not 0 <= image <= full:
                raise TableMapError(
                    f"table entry {sorted(_mask_to_indices(m))} -> "
                    f"{sorted(_mask_to_indices(image))} leaves the universe")
        self._table = [entries[m] for m in range(size)]

    def apply_mask(self, mask: int) -> int:
        if not 0 <= mask <= self.universe.full_mask:
            raise IndexOutOfRangeError(
                f"subset mask {mask:#x} outside universe of size "
                f"{self.universe.size}")
        return self._table[mask]

    def params_json(self) -> dict:
        return {"table": [
            {"s": PropSubset.from_mask(m).as_list(),
             "l": PropSubset.from_mask(image).as_list()}
            for m, image in enumerate(self._table)
        ]}


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def apply(map: LaceMap, s: PropSubset) -> PropSubset:
    """Image l(s) of a subset under the map."""
    map.universe.check_subset(s)
    return PropSubset.from_mask(map.apply_mask(s.mask()))


def is_lace(map: LaceMap, s: PropSubset) -> bool:
    """True iff s is a fixed point of the map."""
    map.universe.check_subset(s)
    m = s.mask()
    return map.apply_mask(m) == m


def compatible_set(map: LaceMap, lace: PropSubset) -> PropSubset:
    """The properties outside the lace whose addition leaves it fixed."""
    if not is_lace(map, lace):
        raise NotALaceError(
            f"{lace.as_list()} is not a lace of this map "
            f"(image is {apply(map, lace).as_list()})")
    return PropSubset.from_mask(map.compatible_mask(lace.mask()))


def _lace_from_mask(map: LaceMap, mask: int, compatible_mask: int) -> Lace:
    return Lace(
        members=PropSubset.from_mask(mask),
        compatible=PropSubset.from_mask(compatible_mask),
        saturated=compatible_mask == 0,
    )


def _require_within_limit(map: LaceMap, limit: Optional[int], what: str) -> int:
    n = map.universe.size
    cap = exhaustive_limit(limit)
    if n > cap:
        raise LimitExceededError(
            f"{what} over {n} properties exceeds the exhaustive limit {cap}; "
            f"shrink the universe or raise the limit explicitly",
            size=n, limit=cap)
    return n


def _image_table(map: LaceMap) -> list[int]:
    return [map.apply_mask(m) for m in range(1 << map.universe.size)]


def _submasks_ascending(mask: int) -> list[int]:
    """All submasks of ``mask`` in ascending numeric order."""
    subs = []
    t = mask
    while True:
        subs.append(t)
        if t == 0:
            break
        t = (t - 1) & mask
    subs.reverse()
    return subs


def verify_axioms(map: LaceMap, *, limit: Optional[int] = None) -> AxiomReport:
    """Exhaustively verify the three lace-map axioms.

    Checks (i) over every subset, (ii) over every chain l(S) <= G <= S, and
    (iii) over pairs with equal images.  Returns on the first violation with
    a witness; scan order is ascending bitmask, so witnesses are stable.
    """
    _require_within_limit(map, limit, "axiom verification")
    img = _image_table(map)
    size = len(img)

    for m in range(size):
        if img[m] & ~m:
            return AxiomReport(False, "i", {
                "s": PropSubset.from_mask(m),
                "image": PropSubset.from_mask(img[m]),
            })

    for m in range(size):
        base = img[m]
        for t in _submasks_ascending(m & ~base):
            g = base | t
            if img[g] != base:
                return AxiomReport(False, "ii", {
                    "s": PropSubset.from_mask(m),
                    "image": PropSubset.from_mask(base),
                    "g": PropSubset.from_mask(g),
                    "g_image": PropSubset.from_mask(img[g]),
                })

    # (iii) via fiber structure: with (i) and (ii) already verified, the
    # axiom holds iff every fiber is the full interval [L, union(fiber)].
    # A fiber of the wrong cardinality must contain a violating pair, which
    # the quadratic scan below recovers for the witness.
    fibers: dict[int, list[int]] = {}
    for m in range(size):
        fibers.setdefault(img[m], []).append(m)
    for image_mask in sorted(fibers):
        fiber = fibers[image_mask]
        union = 0
        for m in fiber:
            union |= m
        if len(fiber) == 1 << _popcount(union & ~image_mask):
            continue
        for i, s1 in enumerate(fiber):
            for s2 in fiber[i + 1:]:
                u = s1 | s2
                if img[u] != image_mask:
                    return AxiomReport(False, "iii", {
                        "s1": PropSubset.from_mask(s1),
                        "s2": PropSubset.from_mask(s2),
                        "image": PropSubset.from_mask(image_mask),
                        "union": PropSubset.from_mask(u),
                        "union_image": PropSubset.from_mask(img[u]),
                    })
    return AxiomReport(True)


def enumerate_laces(map: LaceMap, *, limit: Optional[int] = None) -> list[Lace]:
    """All fixed points with their compatible sets and saturation flags.

    Uses the map's closed-form enumerator when it has one (any universe size
    that fits memory); otherwise scans all subsets, which requires the
    universe to be within the exhaustive limit.  Output is sorted by
    (cardinality, ascending index list) so reports are reproducible.
    """
    closed = map.iter_lace_masks()
    if closed is not None:
        masks = list(closed)
        laces = [_lace_from_mask(map, m, map.compatible_mask(m)) for m in masks]
    else:
        _require_within_limit(map, limit, "generic lace enumeration")
        img = _image_table(map)
        laces = []
        for m in range(len(img)):
            if img[m] != m:
                continue
            comp = 0
            for p in range(map.universe.size):
                bit = 1 << p
                if not (m & bit) and img[m | bit] == m:
                    comp |= bit
            laces.append(_lace_from_mask(map, m, comp))
    laces.sort(key=Lace.sort_key)
    return laces


def fiber_interval_check(map: LaceMap, *, limit: Optional[int] = None) -> bool:
    """Whether every fiber of the map is exactly the interval [L, L | C(L)].

    This is the structural property that makes the expansion identity work;
    it holds for every map passing verify_axioms and fails for maps that
    merely look like projections.
    """
    _require_within_limit(map, limit, "fiber interval check")
    img = _image_table(map)
    fibers: dict[int, list[int]] = {}
    for m in range(len(img)):
        fibers.setdefault(img[m], []).append(m)
    n = map.universe.size
    for image_mask, fiber in fibers.items():
        comp = 0
        for p in range(n):
            bit = 1 << p
            if not (image_mask & bit) and img[image_mask | bit] == image_mask:
                comp |= bit
        top = image_mask | comp
        for m in fiber:
            if (m & image_mask) != image_mask or m & ~top:
                return False
        if len(fiber) != 1 << _popcount(comp):
            return False
    return True


# ---------------------------------------------------------------------------
# Random valid lace-maps
# ---------------------------------------------------------------------------

def random_interval_table_map(rng: random.Random, n: int,
                              labels: Optional[tuple[str, ...]] = None) -> TableMap:
    """Sample a valid lace-map as a random interval partition of 2^P.

    Greedily carves the Boolean lattice into disjoint intervals [L, L | C]
    and maps every subset to the bottom of its interval.  Any such partition
    satisfies all three axioms, and every axiom-satisfying map arises this
    way, so this is the natural sampler for property tests over non-builtin
    maps.
    """
    universe = PropertyUniverse(n, labels)
    size = 1 << n
    remaining = set(range(size))
    entries: dict[int, int] = {}
    while remaining:
        bottom = rng.choice(sorted(remaining))
        comp_bits: list[int] = []
        candidates = [p for p in range(n) if not (bottom >> p) & 1]
        rng.shuffle(candidates)
        for p in candidates:
            bit = 1 << p
            # Adding p keeps the interval inside `remaining` iff the new
            # half [bottom | bit, ...] is fully unassigned.
            new_half = [bottom | bit | sub for sub in _or_combinations(comp_bits)]
            if all(m in remaining for m in new_half):
                comp_bits.append(bit)
        for sub in _or_combinations(comp_bits):
            member = bottom | sub
            entries[member] = bottom
            remaining.discard(member)
    return TableMap(universe, entries, limit=max(n, DEFAULT_TABLE_LIMIT))


def _or_combinations(bits: list[int]) -> list[int]:
    """All OR-combinations of the given single-bit masks (2^len values)."""
    out = [0]
    for b in bits:
        out += [m | b for m in out]
    return out
