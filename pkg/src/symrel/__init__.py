"""Algebraic relations among elementary symmetric functions over GF(p^k)."""

from .enumeration import kernel_dim, monomials, reduce_exponent, weakly_monotone_tuples, wm_count
from .gf import Field, FieldElement, FieldError, arith, element_from_index, element_index, field_new
from .interp import (
    interpolate,
    interpolate_symmetric,
    lagrange_unary,
    leading_monomial,
    to_elementary,
)
from .linalg import (
    FqMatrix,
    gauss_eliminate,
    kernel_basis_vectors,
    parametric_kernel,
    replay,
)
from .relations import (
    RelationBasis,
    build_matrix,
    canonical_form,
    coeffs_in_prime_field,
    relation_basis,
    verify_relation,
)
from .symfun import (
    EPoly,
    FunctionTable,
    XPoly,
    eval_elementary,
    eval_monomial,
    gamma_eval,
    phi_eval,
    psi_expand,
)

__version__ = "0.1.0"
