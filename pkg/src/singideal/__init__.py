"""Exact computations on the vanishing ideal of tuples of singular matrices."""

__version__ = "0.1.0"

from .poly import Poly, PolyMatrix, PolyRing, RingMismatchError, determinant, minors_of
from .groebner import buchberger, is_groebner_basis, normal_form, s_polynomial
from .generators import (
    block_cubics,
    candidate_basis,
    det_pencil_generators,
    fano_minors,
    product_equations,
    quartic_products,
)
from .verify import CompressionSpec, Tensor, act, degreewise_membership, dit_random, sample_sing, vanish_check
from .rep import cauchy_check, lr_coefficient, obstruction_check, schur_dim

__all__ = [
    "Poly", "PolyMatrix", "PolyRing", "RingMismatchError", "determinant", "minors_of",
    "buchberger", "is_groebner_basis", "normal_form", "s_polynomial",
    "block_cubics", "candidate_basis", "det_pencil_generators", "fano_minors",
    "product_equations", "quartic_products",
    "CompressionSpec", "Tensor", "act", "degreewise_membership", "dit_random", "sample_sing",
    "vanish_check",
    "cauchy_check", "lr_coefficient", "obstruction_check", "schur_dim",
]
