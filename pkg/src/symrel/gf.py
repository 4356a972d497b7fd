"""Arithmetic in GF(p^k).

Elements are handled internally as their *index*: the coefficient vector
``(c_0, ..., c_{k-1})`` of ``c_0 + c_1 X + ... + c_{k-1} X^{k-1}`` read as
base-p digits, ``c_0`` least significant.  The index doubles as the fixed
total order on the field, so the prime subfield is the initial segment
``0, ..., p-1``.

All operations go through precomputed ``q x q`` tables, which keeps the
matrix code in :mod:`symrel.linalg` vectorizable with plain numpy fancy
indexing.  :class:`FieldElement` is a thin user-facing wrapper around an
index.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

MAX_ORDER = 1024


class FieldError(ValueError):
    """Invalid field parameters or mixed-field arithmetic."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# -- polynomials over F_p as coefficient lists, constant term first ---------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over F_p."""
    r = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(r) - 1 >= dm:
        lead = r[-1]
        shift = len(r) - 1 - dm
        for i, c in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * c) % p
        _trim(r)
    return r


def _monic_polys(p: int, degree: int):
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(m: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    k = len(m) - 1
    if k < 1 or m[-1] % p != 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            if not poly_mod(m, g, p):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``k``.

    Candidates are compared on ``(c_0, c_1, ..., c_{k-1})`` with ``c_0``
    the most significant key.
    """
    for low in itertools.product(range(p), repeat=k):
        m = list(low) + [1]
        if is_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


@dataclass(frozen=True)
class Field:
    """The finite field F_p[X]/(modulus) with q = p^k elements.

    Construct through :func:`field_new`, which validates the parameters and
    caches instances so that equal fields are identical objects.
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    _tables: dict = dc_field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def __str__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- index <-> coefficients ---------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k:
            coeffs = poly_mod(coeffs, self.modulus, self.p)
        idx = 0
        for c in reversed(list(coeffs)):
            idx = idx * self.p + c % self.p
        return idx

    # -- tables -------------------------------------------------------------

    def _build(self) -> dict:
        if self._tables:
            return self._tables
        t: dict = {}
        p, k, q = self.p, self.k, self.q
        digits = np.array([self.coeffs(a) for a in range(q)], dtype=np.int64).reshape(q, k)
        weights = p ** np.arange(k, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        sub = ((digits[:, None, :] - digits[None, :, :]) % p) @ weights
        # multiplication by X as a k x k matrix acting on coefficient columns
        xmat = np.zeros((k, k), dtype=np.int64)
        for i in range(k - 1):
            xmat[i + 1, i] = 1
        xmat[:, k - 1] = [(-c) % p for c in self.modulus[:k]]
        if k == 1:
            xmat[0, 0] = 0
        powers = [np.eye(k, dtype=np.int64)]
        for _ in range(1, k):
            powers.append(xmat @ powers[-1] % p)
        mul = np.empty((q, q), dtype=np.int64)
        mulmats = np.empty((q, k, k), dtype=np.int64)
        for a in range(q):
            amat = sum(int(c) * pw for c, pw in zip(digits[a], powers)) % p
            mulmats[a] = amat
            mul[a] = ((digits @ amat.T) % p) @ weights
        t["digits"] = digits
        t["mulmats"] = mulmats
        t["weights"] = weights
        dtype = np.uint8 if q <= 256 else np.uint16
        t["add"] = add.astype(dtype)
        t["sub"] = sub.astype(dtype)
        t["mul"] = mul.astype(dtype)
        t["neg"] = t["sub"][0].copy()
        inv = np.zeros(q, dtype=dtype)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        t["inv"] = inv
        # pow_table[a, e] = a^e for 0 <= e < q, with 0^0 = 1
        pw = np.empty((q, q), dtype=dtype)
        pw[:, 0] = 1
        for e in range(1, q):
            pw[:, e] = t["mul"][np.arange(q), pw[:, e - 1]]
        t["pow"] = pw
        # publish only a complete set of tables
        self._tables.update(t)
        return self._tables

    @property
    def add_table(self) -> np.ndarray:
        return self._build()["add"]

    @property
    def sub_table(self) -> np.ndarray:
        return self._build()["sub"]

    @property
    def mul_table(self) -> np.ndarray:
        return self._build()["mul"]

    @property
    def neg_table(self) -> np.ndarray:
        return self._build()["neg"]

    @property
    def inv_table(self) -> np.ndarray:
        return self._build()["inv"]

    @property
    def pow_table(self) -> np.ndarray:
        return self._build()["pow"]

    @property
    def digits(self) -> np.ndarray:
        """``digits[a]`` is the coefficient vector of element ``a``."""
        return self._build()["digits"]

    @property
    def mul_matrices(self) -> np.ndarray:
        """``mul_matrices[a] @ digits[b] = digits[a*b] (mod p)``."""
        return self._build()["mulmats"]

    def from_digits(self, digits: np.ndarray) -> np.ndarray:
        """Inverse of :attr:`digits` along the last axis."""
        return (digits @ self._build()["weights"]).astype(self.dtype)

    @property
    def dtype(self):
        return self.add_table.dtype

    # -- scalar arithmetic on indices ---------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("division by zero in " + str(self))
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        if e < self.q:
            return int(self.pow_table[a, e])
        if a == 0:
            return 0
        # a^(q-1) = 1 for a != 0
        return int(self.pow_table[a, (e - 1) % (self.q - 1) + 1])

    def frobenius(self, a: int, j: int = 1) -> int:
        """``a^(p^j)``; only ``j mod k`` matters since ``a^(p^k) = a``."""
        return self.pow(a, self.p ** (j % self.k))

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise FieldError(f"index {index} out of range for {self}")
        return FieldElement(self, index)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, a) for a in range(self.q)]

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "Field":
        return field_new(obj["p"], obj["k"], obj.get("modulus"))


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, k: int, modulus: tuple[int, ...]) -> Field:
    return Field(p, k, modulus)


def field_new(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """Validate parameters and return the (cached) field GF(p^k).

    ``modulus`` is a coefficient list ``[c_0, ..., c_k]``; when omitted the
    lexicographically smallest monic irreducible of degree ``k`` is used,
    which for ``k = 1`` is the placeholder ``X``.
    """
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if k < 1:
        raise FieldError(f"extension degree k={k} must be >= 1")
    if p**k > MAX_ORDER:
        raise FieldError(f"q={p}**{k} exceeds supported field order {MAX_ORDER}")
    if modulus is None:
        mod = default_modulus(p, k)
    else:
        mod = tuple(int(c) for c in modulus)
        if len(mod) != k + 1:
            raise FieldError(f"modulus {list(mod)} does not have degree {k}")
        if any(not 0 <= c < p for c in mod):
            raise FieldError(f"modulus coefficients must lie in [0, {p})")
        if mod[-1] != 1:
            raise FieldError(f"modulus {list(mod)} is not monic")
        if not is_irreducible(mod, p):
            raise FieldError(f"modulus {list(mod)} is reducible over F_{p}")
    return _field_cached(p, k, mod)


@dataclass(frozen=True)
class FieldElement:
    """An element of a :class:`Field`, identified by its index."""

    field: Field
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.index)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other.index
        if isinstance(other, int):
            # integers embed through the prime subfield
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.index, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.index))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.index, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.index))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.index, e))

    def __bool__(self) -> bool:
        return self.index != 0

    def __int__(self) -> int:
        return self.index

    def __lt__(self, other: "FieldElement") -> bool:
        return self.index < self._other(other)

    def __gt__(self, other: "FieldElement") -> bool:
        return self.index > self._other(other)

    def frobenius(self, j: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.index, j))

    def __repr__(self) -> str:
        return f"{self.field}({self.index})"


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Binary field operation selected by name: add, sub, mul or div."""
    if a.field != b.field:
        raise FieldError(f"mixed fields {a.field} and {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def element_index(a: FieldElement) -> int:
    return a.index


def element_from_index(field: Field, index: int) -> FieldElement:
    return field.element(index)
