"""Exact-arithmetic workbench for densities of regular languages and
regular approximations of non-regular ones."""

from .core import (
    Alphabet,
    BudgetExceededError,
    DEFAULT_ENUMERATION_BUDGET,
    LengthCensus,
    census_by_enumeration,
    enumerate_words,
    ratio_and_cesaro,
)
from .automata import (
    Dfa,
    Nfa,
    TransferMatrix,
    combine,
    determinize,
    dfa_from_json,
    dfa_to_json,
    equivalent,
    find_difference_witness,
    has_forbidden_prefix,
    has_forbidden_word,
    is_coinfinite,
    is_subset,
    language_infinite,
    mod_counter_dfa,
    random_dfa,
    reverse,
    shortlex_least_member,
    transfer_matrix,
)
from .density import (
    DensityReport,
    RecurrentClass,
    UniformChain,
    density,
    is_dense,
    is_null,
    natural_density,
    recurrent_classes,
    solve_exact,
)
from .languages import (
    DiagonalLanguage,
    LanguageOracle,
    Morphism,
    closed_counts,
    coprefix,
    coprefix_prefixes,
    count_eq,
    diagonal,
    diagonal_membership,
    goldstine,
    infix_extension,
    is_primitive,
    kemp,
    kemp_base,
    kemp_s1,
    kemp_s2,
    majority,
    o3,
    o4,
    palindromes,
    prefix_extension,
    primitive,
    semi_dyck,
    suffix_extension,
)
from .monoid import (
    AcceptSet,
    GreenClasses,
    Monoid,
    green_classes,
    idempotent_power,
    jclass_language_density,
    nonprimitive_witness,
    transition_monoid,
)
from .approximations import (
    ApproxFamily,
    GapReport,
    GapRow,
    family,
    gap_report,
    infix_extension_family,
    majority_escape_witness,
    prefix_extension_family,
    suffix_extension_family,
    verify_containment,
)

__all__ = [name for name in dir() if not name.startswith("_")]
