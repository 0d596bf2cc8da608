"""The four builtin lace-maps.

identity          every subset is its own (saturated) lace.
bonferroni(k)     keep the k smallest properties; truncating the
                  inclusion-exclusion sum at depth k yields the classical
                  Bonferroni inequalities.
brun(thresholds)  cut the subset, sorted by descending 1-based property
                  number, at the first position whose value exceeds its
                  threshold; the sieve of Brun's method.
brydges_spencer   properties are arcs over dots 0..n; the map selects, per
                  connected component, the chain of maximal-reach /
                  minimal-start arcs used to decompose self-avoiding-walk
                  interaction terms.

Each map provides a closed-form lace enumerator and, where a closed form
exists, a closed-form compatible set; both must agree with the definitional
scans in :mod:`laces.core`, and the tests check that they do.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .core import LaceMap, PropertyUniverse
from .errors import IndexOutOfRangeError


def one_based_universe(n: int) -> PropertyUniverse:
    """Universe whose 0-based index i is displayed as the number i+1.

    The Bonferroni and Brun constructions are conventionally stated over
    P = {1, ..., n}; keeping the display labels 1-based lets worked examples
    transcribe directly while all serialized indices stay 0-based.
    """
    return PropertyUniverse(n, tuple(str(i + 1) for i in range(n)))


class IdentityMap(LaceMap):
    """l(S) = S for every S; the expansion degenerates to inclusion-exclusion."""

    kind = "identity"

    def __init__(self, n: int, labels: Optional[tuple[str, ...]] = None):
        super().__init__(PropertyUniverse(n, labels))

    def apply_mask(self, mask: int) -> int:
        return mask

    def compatible_mask(self, lace_mask: int) -> int:
        return 0

    def iter_lace_masks(self) -> Iterator[int]:
        return iter(range(1 << self.universe.size))


class BonferroniMap(LaceMap):
    """Keep the k smallest properties of S (all of S when |S| < k)."""

    kind = "bonferroni"

    def __init__(self, n: int, k: int):
        if k < 1:
            raise ValueError("bonferroni depth k must be >= 1")
        super().__init__(one_based_universe(n))
        self.k = k

    def apply_mask(self, mask: int) -> int:
        if mask.bit_count() < self.k:
            return mask
        out = 0
        kept = 0
        p = 0
        while kept < self.k:
            bit = 1 << p
            if mask & bit:
                out |= bit
                kept += 1
            p += 1
        return out

    def compatible_mask(self, lace_mask: int) -> int:
        # Size-k laces absorb exactly the properties above their maximum;
        # smaller laces absorb nothing.
        if lace_mask.bit_count() != self.k:
            return 0
        top = lace_mask.bit_length() - 1
        return self.universe.full_mask & ~((1 << (top + 1)) - 1)

    def params_json(self) -> dict:
        return {"k": self.k}

    def iter_lace_masks(self) -> Iterator[int]:
        n = self.universe.size
        yield from _masks_by_cardinality(n, max_size=min(self.k, n))


@dataclass(frozen=True)
class BrunThresholds:
    """A non-increasing chain n >= N_1 >= ... >= N_n >= 1 of 1-based bounds."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        n = len(self.values)
        prev = n
        for j, v in enumerate(self.values, start=1):
            if not 1 <= v <= n:
                raise ValueError(
                    f"threshold N_{j}={v} outside [1, {n}]")
            if v > prev:
                raise ValueError(
                    f"thresholds must be non-increasing: N_{j}={v} follows {prev}")
            prev = v

    @property
    def n(self) -> int:
        return len(self.values)


class BrunMap(LaceMap):
    """Cut S, sorted by descending 1-based value, at the first threshold breach.

    With S = {i_1 > ... > i_r} (values i = index + 1): if i_j <= N_j for all
    j the set is fixed (and saturated); otherwise l(S) = {i_1, ..., i_s} for
    the smallest s with i_s > N_s.  Unsaturated laces breach exactly at their
    last position and are compatible with every value below i_s.
    """

    kind = "brun"

    def __init__(self, thresholds: BrunThresholds):
        super().__init__(one_based_universe(thresholds.n))
        self.thresholds = thresholds

    def _values_desc(self, mask: int) -> list[int]:
        return [p + 1 for p in range(self.universe.size - 1, -1, -1)
                if (mask >> p) & 1]

    def apply_mask(self, mask: int) -> int:
        out = 0
        for j, value in enumerate(self._values_desc(mask), start=1):
            out |= 1 << (value - 1)
            if value > self.thresholds.values[j - 1]:
                return out
        return mask

    def compatible_mask(self, lace_mask: int) -> int:
        if lace_mask == 0:
            return 0
        values = self._values_desc(lace_mask)
        last = values[-1]
        if last > self.thresholds.values[len(values) - 1]:
            # Unsaturated: compatible with every value 1..last-1.
            return (1 << (last - 1)) - 1
        return 0

    def params_json(self) -> dict:
        return {"thresholds": list(self.thresholds.values)}

    def iter_lace_masks(self) -> Iterator[int]:
        """Depth-first over descending chains honoring the threshold prefix."""
        bounds = self.thresholds.values
        n = self.universe.size

        def extend(mask: int, depth: int, floor: int) -> Iterator[int]:
            # `mask` satisfies i_j <= N_j for all j <= depth: a saturated lace.
            yield mask
            if depth >= n:
                return
            cap = bounds[depth]  # constraint on position depth+1
            for value in range(min(floor - 1, n), 0, -1):
                new = mask | 1 << (value - 1)
                if value <= cap:
                    yield from extend(new, depth + 1, value)
                else:
                    yield new  # breach at the last position: unsaturated lace

        yield from extend(0, 0, n + 1)


# ---------------------------------------------------------------------------
# Arc universe over dots 0..n
# ---------------------------------------------------------------------------

def arc_pairs(dots: int) -> list[tuple[int, int]]:
    """All arcs (i, j) with 0 <= i < j <= dots, in ascending lex order."""
    return [(i, j) for i in range(dots) for j in range(i + 1, dots + 1)]


def arc_universe(dots: int) -> PropertyUniverse:
    pairs = arc_pairs(dots)
    return PropertyUniverse(len(pairs), tuple(f"{i}-{j}" for i, j in pairs))


def arc_index(dots: int, i: int, j: int) -> int:
    """Lex position of arc (i, j) among all arcs over dots 0..dots."""
    if not 0 <= i < j <= dots:
        raise IndexOutOfRangeError(f"({i},{j}) is not an arc over dots 0..{dots}")
    # Arcs with left endpoint a occupy a block of (dots - a) indices.
    return i * dots - i * (i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class ArcSet:
    """A set of arcs between dots 0..dots; the subset type of the BS map."""

    dots: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "arcs",
                           frozenset((int(i), int(j)) for i, j in self.arcs))
        if self.dots < 0:
            raise ValueError("dots must be >= 0")
        for i, j in self.arcs:
            if not 0 <= i < j <= self.dots:
                raise IndexOutOfRangeError(
                    f"arc ({i},{j}) outside dots 0..{self.dots}")

    @classmethod
    def of(cls, dots: int, *arcs: tuple[int, int]) -> "ArcSet":
        return cls(dots, frozenset(arcs))

    def as_list(self) -> list[list[int]]:
        """Canonical serialized form: ascending-lex [i, j] pairs."""
        return [[i, j] for i, j in sorted(self.arcs)]

    def mask(self) -> int:
        m = 0
        for i, j in self.arcs:
            m |= 1 << arc_index(self.dots, i, j)
        return m

    @classmethod
    def from_mask(cls, dots: int, mask: int) -> "ArcSet":
        pairs = arc_pairs(dots)
        return cls(dots, frozenset(pairs[p] for p in range(len(pairs))
                                   if (mask >> p) & 1))


def _select_arcs(arcs: frozenset[tuple[int, int]]) -> list[tuple[int, int]]:
    """Greedy maximal-reach / minimal-start selection over components.

    Within a component starting at the smallest remaining left endpoint d:
    the first arc is (d, max t reaching from d); each following arc goes
    over the previous right end (s < t_prev < t), taking the farthest t and,
    among arcs ending there, the smallest s.  When no arc goes over, the
    component is done and the next one starts at the smallest left endpoint
    at or beyond the last right end.
    """
    if not arcs:
        return []
    selected: list[tuple[int, int]] = []
    pos = 0
    while True:
        starts = [s for s, t in arcs if s >= pos]
        if not starts:
            break
        d = min(starts)
        t_cur = max(t for s, t in arcs if s == d)
        selected.append((d, t_cur))
        while True:
            over = [t for s, t in arcs if s < t_cur < t]
            if not over:
                break
            t_next = max(over)
            s_next = min(s for s, t in arcs if t == t_next)
            selected.append((s_next, t_next))
            t_cur = t_next
        pos = t_cur
    return selected


def brydges_spencer_apply(arcs: ArcSet) -> ArcSet:
    """The arc-chain selection map on an explicit arc set."""
    return ArcSet(arcs.dots, frozenset(_select_arcs(arcs.arcs)))


def _component_split(arcs: frozenset[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Split by right endpoint: a new component starts when s >= max t so far."""
    comps: list[list[tuple[int, int]]] = []
    reach = -1
    for s, t in sorted(arcs, key=lambda a: (a[1], a[0])):
        if not comps or s >= reach:
            comps.append([])
        comps[-1].append((s, t))
        reach = max(reach, t)
    return comps


class BrydgesSpencerMap(LaceMap):
    """Arc-chain selection over the universe of arcs on dots 0..dots."""

    kind = "brydges_spencer"

    def __init__(self, dots: int):
        if dots < 0:
            raise ValueError("dots must be >= 0")
        super().__init__(arc_universe(dots))
        self.dots = dots
        self._pairs = arc_pairs(dots)

    def _mask_to_arcs(self, mask: int) -> frozenset[tuple[int, int]]:
        return frozenset(self._pairs[p] for p in range(len(self._pairs))
                         if (mask >> p) & 1)

    def _arcs_to_mask(self, arcs) -> int:
        m = 0
        for i, j in arcs:
            m |= 1 << arc_index(self.dots, i, j)
        return m

    def apply_mask(self, mask: int) -> int:
        return self._arcs_to_mask(_select_arcs(self._mask_to_arcs(mask)))

    def params_json(self) -> dict:
        return {"dots": self.dots}

    def iter_lace_masks(self) -> Iterator[int]:
        """Enumerate fixed points directly as chains of interlacing arcs.

        A component with arcs ordered by right end t_1 < ... < t_k is a
        fixed chain iff s_1 < s_2 < t_1 and t_{i-2} <= s_i < t_{i-1} for
        i >= 3; full laces concatenate components left to right with each
        component starting at or beyond the previous right end.
        """
        n = self.dots

        def chains_from(pos: int) -> Iterator[list[tuple[int, int]]]:
            yield []
            for s1 in range(pos, n):
                for t1 in range(s1 + 1, n + 1):
                    yield from grow([(s1, t1)], s1, t1)

        def grow(chain: list[tuple[int, int]], s_prev: int,
                 t_last: int) -> Iterator[list[tuple[int, int]]]:
            for rest in chains_from(t_last):
                yield chain + rest
            t_prev = chain[-2][1] if len(chain) >= 2 else None
            lo = (s_prev + 1) if t_prev is None else t_prev
            for s in range(lo, t_last):
                for t in range(t_last + 1, n + 1):
                    yield from grow(chain + [(s, t)], s, t)

        for lace in chains_from(0):
            yield self._arcs_to_mask(lace)


def interlace_check(lace: ArcSet) -> bool:
    """Whether each component's arcs overlap pairwise in the chain pattern.

    For consecutive selected arcs this means s_{i+1} < t_i < t_{i+1}: every
    arc starts under its predecessor and reaches beyond it, the embroidery
    pattern characteristic of these chains.  Input must be a fixed point of
    the map over the same dots.
    """
    from .errors import NotALaceError

    if brydges_spencer_apply(lace) != lace:
        raise NotALaceError(
            f"arc set {lace.as_list()} is not a lace of the arc-chain map")
    for comp in _component_split(lace.arcs):
        for (s_a, t_a), (s_b, t_b) in zip(comp, comp[1:]):
            if not (s_b < t_a < t_b):
                return False
    return True


# ---------------------------------------------------------------------------
# Subset-level conveniences mirroring the mask-level maps
# ---------------------------------------------------------------------------

def bonferroni_apply(k: int, s: "PropSubset") -> "PropSubset":
    """Keep the k smallest indices of s (s itself when |s| < k)."""
    from .core import PropSubset

    if k < 1:
        raise ValueError("bonferroni depth k must be >= 1")
    if len(s) < k:
        return s
    return PropSubset.from_iterable(sorted(s.members)[:k])


def brun_apply(thresholds: BrunThresholds, s: "PropSubset") -> "PropSubset":
    """Apply the threshold-cut rule to a subset of 0-based indices."""
    from .core import PropSubset

    m = BrunMap(thresholds)
    m.universe.check_subset(s)
    return PropSubset.from_mask(m.apply_mask(s.mask()))


def _masks_by_cardinality(n: int, max_size: int) -> Iterator[int]:
    from itertools import combinations

    for size in range(max_size + 1):
        for combo in combinations(range(n), size):
            m = 0
            for p in combo:
                m |= 1 << p
            yield m
