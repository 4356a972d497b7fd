"""Basis of the relations among elementary symmetric functions.

``M(q, n)`` has one row per weakly monotone point and one column per
monomial of F_q{E}; a coefficient vector lies in its kernel exactly when
the corresponding E-polynomial vanishes as a function.  Eliminating the
matrix and reading off the parametric kernel gives one basis relation per
free column.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .enumeration import monomials, weakly_monotone_tuples
from .gf import Field
from .linalg import (
    EliminationResult,
    FqMatrix,
    field_matmul,
    gauss_eliminate,
    kernel_basis_vectors,
    parametric_kernel,
    replay_rows,
)
from .symfun import EPoly, ScaleError, all_points, monomial_value_matrix, phi_values

MATRIX_GUARD = 10**7


def default_guard() -> int:
    """Matrix-entry limit, overridable through ``SYMREL_GUARD``."""
    env = os.environ.get("SYMREL_GUARD")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ScaleError(f"SYMREL_GUARD={env!r} is not an integer") from None
    return MATRIX_GUARD


def build_matrix(field: Field, n: int, guard: int | None = None) -> FqMatrix:
    guard = default_guard() if guard is None else guard
    q = field.q
    rows = weakly_monotone_tuples(field, n)
    size = len(rows) * q**n
    if size > guard:
        raise ScaleError(
            f"M({q},{n}) has {len(rows)} x {q**n} = {size} entries, above guard {guard}"
        )
    points = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    return FqMatrix(field, monomial_value_matrix(field, n, points))


def evaluation_rank(field: Field, n: int, guard: int | None = None) -> int:
    """Exact rank of M(q, n), eliminating as few columns as possible.

    The rank of a column prefix never exceeds the rank of the whole matrix,
    and no rank exceeds the row count.  Starting from a square prefix and
    doubling it, the loop stops as soon as the prefix has full row rank or
    covers every column; either way the value is rank M(q, n).
    """
    guard = default_guard() if guard is None else guard
    q = field.q
    rows = weakly_monotone_tuples(field, n)
    e, v = len(rows), q**n
    points = np.array(rows, dtype=np.int64).reshape(e, n)
    width = min(e, v)
    while True:
        if e * width > guard:
            raise ScaleError(f"{e} x {width} prefix of M({q},{n}) is above guard {guard}")
        block = FqMatrix(field, monomial_value_matrix(field, n, points, columns=width))
        r = gauss_eliminate(block, record=False).rank
        if r == e or width == v:
            return r
        width = min(2 * width, v)


@dataclass(frozen=True)
class RelationBasis:
    field: Field
    n: int
    basis: tuple[EPoly, ...]
    pivot_columns: tuple[int, ...]
    free_columns: tuple[int, ...]
    kernel: np.ndarray
    elimination: EliminationResult

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def to_json(self) -> dict:
        F = self.field
        return {
            "q": F.q,
            "p": F.p,
            "k": F.k,
            "modulus": list(F.modulus),
            "n": self.n,
            "dim": self.dim,
            "pivot_columns": list(self.pivot_columns),
            "basis": [P.to_json() for P in self.basis],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_text(self) -> str:
        return "".join(f"{P.to_text()} = 0\n" for P in self.basis)


def relation_basis(field: Field, n: int, guard: int | None = None) -> RelationBasis:
    M = build_matrix(field, n, guard)
    res = gauss_eliminate(M)
    sol = parametric_kernel(res)
    K = kernel_basis_vectors(sol)
    basis = tuple(EPoly.from_vector(field, n, row) for row in K)
    return RelationBasis(field, n, basis, sol.pivot_columns, sol.free_columns, K, res)


def _points(P: EPoly, mode: str) -> np.ndarray:
    q, n = P.field.q, P.n
    if mode == "wm":
        return np.array(weakly_monotone_tuples(q, n), dtype=np.int64).reshape(-1, n)
    if mode == "full":
        return all_points(q, n)
    raise ValueError(f"unknown verification mode {mode!r}")


def verify_relation(P: EPoly, mode: str = "wm") -> bool:
    """True iff ``Phi(P)`` vanishes on WM(q, n) (``wm``) or on all points (``full``)."""
    return not phi_values(P, _points(P, mode)).any()


def coeffs_in_prime_field(P: EPoly) -> bool:
    F = P.field
    return all(F.frobenius(c, 1) == c for c in P.terms.values())


def _check_context(P: EPoly, basis: RelationBasis) -> None:
    if P.field != basis.field or P.n != basis.n:
        raise ValueError(
            f"polynomial over {P.field}, n={P.n} does not match basis over "
            f"{basis.field}, n={basis.n}"
        )


def canonical_form(P: EPoly, basis: RelationBasis) -> EPoly:
    """The representative of ``P`` modulo relations supported on pivot monomials.

    Evaluates ``Phi(P)`` on the weakly monotone points and pushes the values
    through the logged row operations; pivot row ``i`` then holds the
    coefficient of pivot monomial ``i``.
    """
    _check_context(P, basis)
    F = P.field
    values = phi_values(P, _points(P, "wm"))
    res = basis.elimination
    z = replay_rows(F, values, res.oplog)
    if z[res.rank:].any():
        raise ValueError("basis elimination is inconsistent with this polynomial")
    mons = monomials(F.q, P.n)
    terms = {mons[c]: int(z[i]) for i, c in enumerate(basis.pivot_columns) if z[i]}
    return EPoly._raw(F, P.n, terms)


def basis_matrix(basis: RelationBasis) -> FqMatrix:
    """Coefficient matrix: one row per relation, columns in monomial order."""
    F = basis.field
    if not basis.basis:
        return FqMatrix(F, np.zeros((0, F.q**basis.n), dtype=F.dtype))
    return FqMatrix(F, np.stack([P.to_vector() for P in basis.basis]))


def in_span(P: EPoly, basis: RelationBasis) -> bool:
    """Membership by rank: appending ``P`` must not raise the rank."""
    _check_context(P, basis)
    B = basis_matrix(basis)
    stacked = FqMatrix(B.field, np.vstack([B.entries, P.to_vector()[None, :]]))
    return gauss_eliminate(stacked, record=False).rank == gauss_eliminate(B, record=False).rank


def full_point_values(field: Field, n: int, coeff_rows: np.ndarray) -> np.ndarray:
    """``Phi`` of many polynomials at every point of F_q^n at once.

    ``coeff_rows`` has one coefficient vector per row (monomial order); the
    result has one row of q^n values per polynomial.
    """
    N = monomial_value_matrix(field, n, all_points(field.q, n))
    return field_matmul(field, coeff_rows, np.ascontiguousarray(N.T))
