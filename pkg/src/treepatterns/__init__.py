"""Periodic tree patterns: entropy, block structures, branching sequences.

A pattern of period ``n`` is a family of components over ``{0, ..., n-1}``
forming a tree, with the shift ``i -> i + 1`` as dynamics.
"""

from .branching import (
    branches,
    branching_sequence,
    build_flower,
    flower_of,
    fully_reduce,
    is_bidirectional,
    is_minimal,
    opened_sequence,
)
from .covering import (
    CoveringGraph,
    basic_paths,
    covers,
    entropy,
    is_zero_entropy,
    split_time,
    transition_matrix,
    walk_count,
)
from .enumerate import enumerate_patterns, families, iter_patterns, reducible_patterns
from .errors import (
    ConvergenceError,
    InvalidCollapseError,
    PatternError,
    PatternSyntaxError,
    StructureError,
    VerificationFailure,
)
from .numerics import lambda_n, reducible_floor, spectral_radius
from .pattern import Pattern, canonical_form, parse, pattern, rotate, serialize, validate
from .structure import (
    block_structure,
    classify,
    collapse_sequence,
    combinatorial_collapse,
    is_irreducible,
    is_reducible,
    maximal_trivial_structure,
    pi_reducible,
    scrambled_components,
    subordinated,
    zero_entropy_structural,
)
from .transforms import openings, p_extension, q_pattern, time_reverse

__version__ = "0.1.0"
