"""Shift-invariant ideals and Markov bases of hierarchical models."""

from ._core import (
    Error,
    ParseError,
    PreconditionError,
    RangeError,
    ResourceLimit,
    compare,
    design_matrix,
    groebner,
    independent_set,
    is_decomposable,
    markov_basis,
    normalize,
    pi_divides,
    reduce,
    stabilize_orbit,
    verify_markov_fibers,
)

__all__ = [
    "Error",
    "ParseError",
    "PreconditionError",
    "RangeError",
    "ResourceLimit",
    "compare",
    "design_matrix",
    "groebner",
    "independent_set",
    "is_decomposable",
    "markov_basis",
    "normalize",
    "pi_divides",
    "reduce",
    "stabilize_orbit",
    "verify_markov_fibers",
]
