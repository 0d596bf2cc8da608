"""Exception types shared across the package.

Every error carries a stable ``code`` string so the CLI can emit
machine-readable error objects without string-matching messages.
"""

from __future__ import annotations


class LaceError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def detail(self) -> dict:
        """Extra machine-readable context for CLI error objects."""
        return {}


class UniverseMismatchError(LaceError):
    """A subset or instance refers to a different property universe."""

    code = "universe_mismatch"


class IndexOutOfRangeError(LaceError):
    """A property index lies outside the universe."""

    code = "index_out_of_range"


class LimitExceededError(LaceError):
    """An exhaustive operation was refused because the universe is too large."""

    code = "limit_exceeded"

    def __init__(self, message: str, *, size: int, limit: int):
        super().__init__(message)
        self.size = size
        self.limit = limit

    def detail(self) -> dict:
        return {"size": self.size, "limit": self.limit}


class TableMapError(LaceError):
    """A table lace-map is malformed (missing entry, out-of-range subset)."""

    code = "table_map_error"


class NotALaceError(LaceError):
    """An operation requiring a lace received a non-fixed-point subset."""

    code = "not_a_lace"


class MixedParityError(LaceError):
    """Unsaturated laces of both parities exist: no sieve direction is sound."""

    code = "mixed_parity"

    def __init__(self, message: str, *, odd_count: int, even_count: int,
                 cardinality_histogram: dict):
        super().__init__(message)
        self.odd_count = odd_count
        self.even_count = even_count
        self.cardinality_histogram = cardinality_histogram

    def detail(self) -> dict:
        return {
            "odd_count": self.odd_count,
            "even_count": self.even_count,
            "cardinality_histogram": {
                str(k): v for k, v in sorted(self.cardinality_histogram.items())
            },
        }


class NegativeWeightError(LaceError):
    """Directional sieve bounds require nonnegative weights."""

    code = "negative_weights"


class DirectionError(LaceError):
    """The two maps of a bracket do not yield opposing bound directions."""

    code = "directions_do_not_oppose"


class BudgetExceededError(LaceError):
    """An enumeration application exceeds its configured budget."""

    code = "budget_exceeded"

    def __init__(self, message: str, *, required: int, budget: int):
        super().__init__(message)
        self.required = required
        self.budget = budget

    def detail(self) -> dict:
        return {"required": self.required, "budget": self.budget}


class MalformedInputError(LaceError):
    """Input JSON does not conform to the documented schemas."""

    code = "malformed_input"
