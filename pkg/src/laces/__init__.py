"""Lace-maps over finite property sets, the exact expansion identity that
generalizes inclusion-exclusion, and the sieve bounds obtained by keeping
only saturated laces.

Everything computes with exact integers and rationals; see the README for
the JSON schemas and the CLI.
"""

from .core import (
    AxiomReport,
    Lace,
    LaceMap,
    PropSubset,
    PropertyUniverse,
    TableMap,
    apply,
    compatible_set,
    enumerate_laces,
    fiber_interval_check,
    is_lace,
    random_interval_table_map,
    verify_axioms,
)
from .maps import (
    ArcSet,
    BonferroniMap,
    BrunMap,
    BrunThresholds,
    BrydgesSpencerMap,
    IdentityMap,
    bonferroni_apply,
    brun_apply,
    brydges_spencer_apply,
    interlace_check,
)
from .expansion import (
    Element,
    ExpansionReport,
    LaceTerm,
    MultilinearPoly,
    WeightedInstance,
    lace_expansion_sum,
    n_of_lace,
    n_zero_bruteforce,
    polynomial_identity_check,
)
from .sieve import (
    ParityAnalysis,
    SieveBound,
    analyze_parity,
    sieve_bound,
    sieve_bracket,
)
from .applications import (
    RamseyConfig,
    SawConfig,
    brun_integer_instance,
    derangement_instance,
    first_primes,
    oracle_count,
    ramsey_instance,
    saw_instance,
)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "ArcSet",
    "AxiomReport",
    "BonferroniMap",
    "BrunMap",
    "BrunThresholds",
    "BrydgesSpencerMap",
    "Element",
    "ExpansionReport",
    "IdentityMap",
    "Lace",
    "LaceMap",
    "LaceTerm",
    "MultilinearPoly",
    "ParityAnalysis",
    "PropSubset",
    "PropertyUniverse",
    "RamseyConfig",
    "SawConfig",
    "SieveBound",
    "TableMap",
    "WeightedInstance",
    "analyze_parity",
    "apply",
    "bonferroni_apply",
    "brun_apply",
    "brun_integer_instance",
    "brydges_spencer_apply",
    "compatible_set",
    "derangement_instance",
    "enumerate_laces",
    "errors",
    "fiber_interval_check",
    "first_primes",
    "interlace_check",
    "is_lace",
    "lace_expansion_sum",
    "n_of_lace",
    "n_zero_bruteforce",
    "oracle_count",
    "polynomial_identity_check",
    "ramsey_instance",
    "random_interval_table_map",
    "saw_instance",
    "sieve_bound",
    "sieve_bracket",
    "verify_axioms",
]
