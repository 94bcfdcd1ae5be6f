"""Orthogonally decomposable symmetric tensors.

Synthesis and power-method decomposition of odeco tensors, closed-form
enumeration of all their complex eigenvectors, the conjectured quadric
equations of the odeco variety with exact-rank certificates, and an exact
Groebner-basis verification of the two-variable case.
"""

from .numkit import exact_integer_rank, poly_roots, random_orthonormal
from .symtensor import (
    OrthoDecomp,
    SymTensor,
    UCoords,
    apply_power,
    contract_last,
    eval_form,
    frobenius_norm,
    from_ucoords,
    multi_indices,
    multinomial,
    random_odeco,
    tensor_from_decomp,
    to_ucoords,
)

__version__ = "0.1.0"
