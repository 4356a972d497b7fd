"""Canonical orderings and counts for matrix columns and rows.

Columns of M(q, n) are the exponent tuples of Mon(q, n); rows are the
weakly monotone point tuples WM(q, n).  Points are tuples of field element
indices, so "weakly monotone" is with respect to the index order fixed in
:mod:`symrel.gf`.
"""

from __future__ import annotations

import functools
import itertools
import math

from .gf import Field

ExponentTuple = tuple[int, ...]
PointTuple = tuple[int, ...]


def _check(q: int, n: int) -> None:
    if q < 2:
        raise ValueError(f"q={q} must be >= 2")
    if n < 1:
        raise ValueError(f"n={n} must be >= 1")


def monomial_key(alpha: ExponentTuple) -> tuple:
    """Sort key of the column order: degree ascending, then descending lex."""
    return (sum(alpha), tuple(-a for a in alpha))


@functools.lru_cache(maxsize=32)
def monomials(q: int, n: int) -> tuple[ExponentTuple, ...]:
    """All q^n exponent tuples in column order.

    For q = 2, n = 3 this gives 1, E1, E2, E3, E1E2, E1E3, E2E3, E1E2E3.
    """
    _check(q, n)
    return tuple(sorted(itertools.product(range(q), repeat=n), key=monomial_key))


@functools.lru_cache(maxsize=32)
def monomial_positions(q: int, n: int) -> dict[ExponentTuple, int]:
    return {m: i for i, m in enumerate(monomials(q, n))}


def weakly_monotone_tuples(field: Field | int, n: int) -> list[PointTuple]:
    """Index tuples ``a_1 <= ... <= a_n`` in ascending lexicographic order."""
    q = field if isinstance(field, int) else field.q
    _check(q, n)
    return list(itertools.combinations_with_replacement(range(q), n))


def is_weakly_monotone(a: PointTuple) -> bool:
    return all(x <= y for x, y in zip(a, a[1:]))


def wm_count(q: int, n: int) -> int:
    """``C(n+q-1, n)``, the number of weakly monotone n-tuples.

    Python integers are unbounded, so the count is always exact.
    """
    _check(q, n)
    return math.comb(n + q - 1, n)


def kernel_dim(q: int, n: int) -> int:
    """Dimension of the space of relations, ``q^n - wm(q, n)``."""
    return q**n - wm_count(q, n)


def reduce_exponent(e: int, q: int) -> int:
    """Representative in [0, q) of ``x^e`` under ``x^q = x``."""
    if e < 0:
        raise ValueError("negative exponent")
    if e < q:
        return e
    return (e - 1) % (q - 1) + 1
