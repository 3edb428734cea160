from slocc2mn.exactmath.gaussrat import I, ONE, ZERO, GaussRat
from slocc2mn.exactmath.matrix import (
    ExactMatrix,
    block_diag,
    column_matrix,
    complete_basis,
    det,
    hstack,
    invert,
    nullspace,
    permutation,
    rank,
    sparse_rank,
    rref,
    rref_with_transform,
    vstack,
)
from slocc2mn.exactmath.poly import UniPoly, charpoly, poly_gcd, squarefree_part
from slocc2mn.exactmath.roots import roots_in_field
from slocc2mn.exactmath.smith import UniPolyMatrix, determinantal_divisors, smith_form

__all__ = [
    "GaussRat", "I", "ONE", "ZERO",
    "ExactMatrix", "block_diag", "column_matrix", "complete_basis", "det", "hstack", "invert",
    "nullspace", "permutation", "rank", "rref", "rref_with_transform", "sparse_rank", "vstack",
    "UniPoly", "charpoly", "poly_gcd", "squarefree_part", "roots_in_field",
    "UniPolyMatrix", "determinantal_divisors", "smith_form",
]
