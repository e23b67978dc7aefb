"""Intersection complete neural codes and their convex realizations."""
from .code import (
    Code,
    SimplicialComplex,
    code_from_words,
    completion_membership,
    cone,
    intersection_completion,
    is_intersection_complete,
    is_simplicial_complex,
    maximal_codewords,
    parse_code,
    simplicial_complex_of,
    trunk,
)
from .errors import CapExceededError, NcodeError, PreconditionError

__version__ = "0.1.0"

__all__ = [
    "CapExceededError", "Code", "NcodeError", "PreconditionError", "SimplicialComplex",
    "code_from_words", "completion_membership", "cone", "intersection_completion",
    "is_intersection_complete", "is_simplicial_complex", "maximal_codewords", "parse_code",
    "simplicial_complex_of", "trunk",
]
