"""Writing symmetric functions as polynomials in elementary symmetric ones.

Two stages: Lagrange interpolation turns any function table into an
X-polynomial with exponents below ``q``; for a symmetric table the result
is symmetric, and repeatedly cancelling its graded-lex leading term
``c X^gamma`` with ``c e_1^(g1-g2) ... e_n^(gn)`` rewrites it in the E's.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .enumeration import ExponentTuple
from .gf import Field
from .relations import RelationBasis, canonical_form
from .symfun import EPoly, FunctionTable, XPoly, axis_transform, psi_expand


class NotSymmetricError(ValueError):
    pass


@dataclass(frozen=True)
class UnaryPoly:
    """Polynomial in one variable; ``coeffs[i]`` multiplies ``X^i``."""

    field: Field
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def __call__(self, x: int) -> int:
        F = self.field
        v = 0
        for c in reversed(self.coeffs):
            v = F.add(F.mul(v, x), c)
        return v


def lagrange_unary(field: Field, a: int) -> UnaryPoly:
    """``h_a(X) = prod_{l != a} (X - l) / (a - l)``: 1 at ``a``, 0 elsewhere."""
    F = field
    num = [1]
    denom = 1
    for lam in range(F.q):
        if lam == a:
            continue
        # num *= (X - lam)
        shifted = [0] + num
        scaled = [F.mul(F.neg(lam), c) for c in num] + [0]
        num = [F.add(x, y) for x, y in zip(shifted, scaled)]
        denom = F.mul(denom, F.sub(a, lam))
    s = F.inv(denom)
    return UnaryPoly(F, tuple(F.mul(s, c) for c in num))


@functools.lru_cache(maxsize=64)
def _lagrange_matrix(field: Field) -> np.ndarray:
    """Row ``a`` holds the coefficients of ``h_a``."""
    q = field.q
    mat = np.zeros((q, q), dtype=field.dtype)
    for a in range(q):
        mat[a] = lagrange_unary(field, a).coeffs
    return mat


def interpolate(f: FunctionTable) -> XPoly:
    """``H = sum_a f(a) h_{a_1}(X_1) ... h_{a_n}(X_n)``.

    The sum factors axis by axis, so it is applied as one ``q x q``
    contraction per variable.  A symmetric table is orbit-expanded first.
    """
    F = f.field
    values = f.to_dense()
    return XPoly.from_dense(F, axis_transform(F, values, _lagrange_matrix(F)))


def _grlex_key(alpha: ExponentTuple) -> tuple:
    return (sum(alpha), tuple(alpha))


def leading_monomial(H: XPoly) -> tuple[int, ExponentTuple]:
    """Largest term under degree-then-lexicographic order, as (coeff, exponents)."""
    if H.is_zero():
        raise ValueError("zero polynomial has no leading monomial")
    alpha = max(H.terms, key=_grlex_key)
    return H.terms[alpha], alpha


def _dense_leading(arr: np.ndarray) -> ExponentTuple | None:
    idx = np.argwhere(arr)
    if idx.size == 0:
        return None
    deg = idx.sum(axis=1)
    top = idx[deg == deg.max()]
    # lexicographic maximum among the top-degree exponents
    order = np.lexsort(top.T[::-1])
    return tuple(int(x) for x in top[order[-1]])


def is_symmetric_poly(H: XPoly) -> bool:
    """Invariance under the transposition (1 2) and the cycle (1 2 ... n)."""
    n = H.n
    if n == 1:
        return True
    cycle = tuple(range(1, n)) + (0,)
    swap = (1, 0) + tuple(range(2, n))
    return H.permute(cycle) == H and H.permute(swap) == H


def to_elementary(H: XPoly) -> EPoly:
    F, n = H.field, H.n
    if not is_symmetric_poly(H):
        raise NotSymmetricError("polynomial is not symmetric")
    cur = H.to_dense()
    out: dict[ExponentTuple, int] = {}
    prev = None
    while True:
        gamma = _dense_leading(cur)
        if gamma is None:
            break
        if prev is not None and not _grlex_key(gamma) < _grlex_key(prev):
            raise AssertionError(f"leading monomial did not decrease: {prev} -> {gamma}")
        if any(x < y for x, y in zip(gamma, gamma[1:])):
            raise AssertionError(f"leading exponent {gamma} of a symmetric polynomial is not sorted")
        c = int(cur[gamma])
        beta = tuple(gamma[i] - gamma[i + 1] for i in range(n - 1)) + (gamma[-1],)
        product = psi_expand(EPoly.monomial(F, n, beta, 1)).to_dense()
        cur = F.sub_table[cur, F.mul_table[c, product]]
        out[beta] = F.add(out.get(beta, 0), c)
        prev = gamma
    return EPoly(F, n, out)


def interpolate_symmetric(f: FunctionTable, basis: RelationBasis | None = None) -> EPoly:
    """E-polynomial whose function is ``f``; pivot-supported if ``basis`` is given."""
    if not f.is_symmetric():
        raise NotSymmetricError("function table is not symmetric")
    P = to_elementary(interpolate(f))
    if basis is not None:
        P = canonical_form(P, basis)
    return P
