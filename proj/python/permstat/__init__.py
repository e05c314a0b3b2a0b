"""Permutation statistics, shuffle algebras, substring coalgebras, and the
exhaustive search for statistics compatible with both structures.

Permutations are plain lists of distinct positive integers; equivalence
classes are (level, index) pairs; check results are dicts with a ``holds``
flag and an optional ``witness``.
"""

from permstat._permstat import (  # noqa: F401
    PermstatError,
    StatisticAlgebra,
    StatisticTable,
    __version__,
    ab_move_closure,
    assemble,
    binomial,
    check_shuffle_compatible,
    check_substring_compatible,
    class_count_bound,
    class_size_divisor,
    comp_of,
    complement,
    composition_coarsenings,
    composition_refinements,
    concat,
    descent_set,
    dual_knuth_table,
    enumerate_level,
    equivalent,
    export_dimacs,
    fundamental_poly,
    inversion_count,
    lex_rank,
    lift_partition,
    major_index,
    nth_permutation,
    parse_permutation,
    peak_set,
    quotient_check,
    refines,
    rsk_recording,
    shifted,
    shuffles,
    standard_permutations,
    standardize,
    valley_set,
    verify_des_isomorphism,
    viability_check,
    window,
)
