"""Exact integer, rational, polynomial, matrix and number-field arithmetic."""
from .factor import FactorizationError, factor_squarefree_then_irreducible, rational_roots
from .lattice import (
    BezoutWitness,
    NotCoprimeError,
    eventual_image,
    hnf,
    integer_solve,
    lattice_basis,
    reduced_resultant,
    resultant,
    row_hnf,
    sylvester_matrix,
)
from .matrix import Matrix, charpoly, companion_matrix, is_primitive_matrix, minpoly_matrix
from .numberfield import AlgebraicNumber, FieldMismatchError, NumberField
from .poly import IntPoly, gcd_poly, parse_poly, squarefree_decomposition, squarefree_part
from .roots import isolate_real_roots, refine

__all__ = [
    "AlgebraicNumber",
    "BezoutWitness",
    "FactorizationError",
    "FieldMismatchError",
    "IntPoly",
    "Matrix",
    "NotCoprimeError",
    "NumberField",
    "charpoly",
    "companion_matrix",
    "eventual_image",
    "factor_squarefree_then_irreducible",
    "gcd_poly",
    "hnf",
    "integer_solve",
    "is_primitive_matrix",
    "isolate_real_roots",
    "lattice_basis",
    "minpoly_matrix",
    "parse_poly",
    "rational_roots",
    "reduced_resultant",
    "refine",
    "resultant",
    "row_hnf",
    "squarefree_decomposition",
    "squarefree_part",
    "sylvester_matrix",
]
