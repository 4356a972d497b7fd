"""Deterministic Gaussian elimination over GF(q).

Step ``i`` of the elimination follows a fixed decision rule so that two
matrices with the same zero pattern at every stage receive the same
sequence of operations:

* if ``a[i,i] = 0`` and row ``i`` is zero, swap in the first lower row that
  has a nonzero entry (``L``);
* if ``a[i,i]`` is still zero, swap column ``i`` with the first column
  ``k > i`` where ``a[i,k] != 0`` (``C``), tracked in ``pi``;
* scale the pivot row so the pivot is 1 (``S``);
* clear every nonzero entry below the pivot (``A``).

A back-substitution pass then clears above the pivots, leaving the reduced
echelon form from which the parametric kernel is read off.  Every operation
is logged and :func:`replay` reproduces the echelon from the original
matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, TextIO

import numpy as np

from .gf import Field, FieldError


@dataclass(frozen=True)
class FqMatrix:
    """Dense row-major matrix of element indices over ``field``."""

    field: Field
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries)
        if arr.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise FieldError(f"entries out of range for {self.field}")
        object.__setattr__(self, "entries", arr.astype(self.field.dtype, copy=False))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FqMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.entries, other.entries)

    def dump(self, fh: TextIO) -> None:
        """Write ``rows cols q`` then one line of indices per row."""
        fh.write(f"{self.rows} {self.cols} {self.field.q}\n")
        for row in self.entries:
            fh.write(" ".join(map(str, row.tolist())) + "\n")

    @classmethod
    def load(cls, fh: TextIO, field: Field) -> "FqMatrix":
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError("matrix header must be 'rows cols q'")
        rows, cols, q = map(int, header)
        if q != field.q:
            raise ValueError(f"matrix is over q={q}, expected {field.q}")
        data = [list(map(int, fh.readline().split())) for _ in range(rows)]
        arr = np.array(data, dtype=np.int64).reshape(rows, cols)
        return cls(field, arr)


class Op(NamedTuple):
    """One logged elimination step.

    ``A``: row ``j`` += ``factor`` * row ``i``.  ``L``: swap rows ``i``, ``j``.
    ``C``: swap columns ``i``, ``j``.  ``S``: row ``i`` *= ``factor``.
    """

    op: str
    i: int
    j: int
    factor: int | None = None

    def to_json(self) -> dict:
        d = {"op": self.op, "i": self.i, "j": self.j}
        if self.factor is not None:
            d["factor"] = self.factor
        return d


@dataclass(frozen=True)
class EliminationResult:
    echelon: FqMatrix
    pi: np.ndarray
    rank: int
    oplog: tuple[Op, ...]

    @property
    def field(self) -> Field:
        return self.echelon.field

    def oplog_json(self) -> str:
        return json.dumps([op.to_json() for op in self.oplog])


def gauss_eliminate(M: FqMatrix, record: bool = True) -> EliminationResult:
    F = M.field
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    a = M.entries.copy()
    e, v = a.shape
    pi = np.arange(v)
    ops: list[Op] = []
    rank = 0

    for i in range(min(e, v)):
        if a[i, i] == 0 and not a[i, i:].any():
            below = np.flatnonzero(a[i + 1:, i:].any(axis=1))
            if below.size == 0:
                break
            j = i + 1 + int(below[0])
            a[[i, j]] = a[[j, i]]
            if record:
                ops.append(Op("L", i, j))
        if a[i, i] == 0:
            k = i + 1 + int(np.flatnonzero(a[i, i + 1:])[0])
            a[:, [i, k]] = a[:, [k, i]]
            pi[[i, k]] = pi[[k, i]]
            if record:
                ops.append(Op("C", i, k))
        piv = int(a[i, i])
        if piv != 1:
            s = int(inv[piv])
            a[i, i:] = mul[s, a[i, i:]]
            if record:
                ops.append(Op("S", i, i, s))
        rows = i + 1 + np.flatnonzero(a[i + 1:, i])
        if rows.size:
            factors = neg[a[rows, i]]
            a[rows, i:] = add[a[rows, i:], mul[factors[:, None], a[i, i:][None, :]]]
            if record:
                ops.extend(Op("A", i, int(r), int(f)) for r, f in zip(rows, factors))
        rank += 1

    for i in reversed(range(rank)):
        rows = np.flatnonzero(a[:i, i])
        if rows.size:
            factors = neg[a[rows, i]]
            a[rows, i:] = add[a[rows, i:], mul[factors[:, None], a[i, i:][None, :]]]
            if record:
                ops.extend(Op("A", i, int(r), int(f)) for r, f in zip(rows, factors))

    return EliminationResult(FqMatrix(F, a), pi, rank, tuple(ops))


def replay(M: FqMatrix, oplog: Iterable[Op]) -> FqMatrix:
    """Apply logged operations one at a time to a copy of ``M``."""
    F = M.field
    a = M.entries.copy()
    for op in oplog:
        if op.op == "A":
            a[op.j] = F.add_table[a[op.j], F.mul_table[op.factor, a[op.i]]]
        elif op.op == "L":
            a[[op.i, op.j]] = a[[op.j, op.i]]
        elif op.op == "C":
            a[:, [op.i, op.j]] = a[:, [op.j, op.i]]
        elif op.op == "S":
            a[op.i] = F.mul_table[op.factor, a[op.i]]
        else:
            raise ValueError(f"unknown operation {op.op!r}")
    return FqMatrix(F, a)


def replay_rows(field: Field, vec: np.ndarray, oplog: Iterable[Op]) -> np.ndarray:
    """Apply only the row operations of ``oplog`` to a column vector."""
    y = np.array(vec, dtype=field.dtype)
    for op in oplog:
        if op.op == "A":
            y[op.j] = field.add_table[y[op.j], field.mul_table[op.factor, y[op.i]]]
        elif op.op == "L":
            y[[op.i, op.j]] = y[[op.j, op.i]]
        elif op.op == "S":
            y[op.i] = field.mul_table[op.factor, y[op.i]]
    return y


@dataclass(frozen=True)
class ParametricSolution:
    """General kernel element as homogeneous linear forms in ``t_1..t_d``.

    ``forms[c, s]`` is the coefficient of ``t_{s+1}`` in the unknown for
    original column ``c``.
    """

    field: Field
    forms: np.ndarray
    pivot_columns: tuple[int, ...]
    free_columns: tuple[int, ...]

    @property
    def num_params(self) -> int:
        return self.forms.shape[1]

    def substitute(self, t: np.ndarray) -> np.ndarray:
        return field_matmul(self.field, self.forms, np.asarray(t).reshape(-1, 1))[:, 0]


def parametric_kernel(res: EliminationResult) -> ParametricSolution:
    F = res.field
    ech = res.echelon.entries
    r = res.rank
    v = ech.shape[1]
    d = v - r
    pi = res.pi
    forms = np.zeros((v, d), dtype=F.dtype)
    forms[pi[r:], np.arange(d)] = 1
    # reduced echelon: Y_{pi[i]} + sum_s ech[i, r+s] t_s = 0
    forms[pi[:r], :] = F.neg_table[ech[:r, r:]]
    return ParametricSolution(
        F, forms, tuple(int(c) for c in pi[:r]), tuple(int(c) for c in pi[r:])
    )


def kernel_basis_vectors(sol: ParametricSolution) -> np.ndarray:
    """Row ``s`` is the kernel vector for ``t = e_s``; shape ``(d, v)``."""
    return np.ascontiguousarray(sol.forms.T)


def field_matmul(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product of index matrices over ``field``.

    Each element becomes its ``k x k`` multiplication matrix (left factor) or
    coefficient vector (right factor), reducing the product to one over F_p,
    computed in float64 in chunks small enough to stay exact.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    m, n = A.shape
    n2, w = B.shape
    if n != n2:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    p, k = field.p, field.k
    if n == 0:
        return np.zeros((m, w), dtype=field.dtype)
    Ap = field.mul_matrices[A].transpose(0, 2, 1, 3).reshape(m * k, n * k).astype(np.float64)
    Bp = field.digits[B].transpose(0, 2, 1).reshape(n * k, w).astype(np.float64)
    chunk = max(1, (2**52) // max(1, (p - 1) ** 2))
    acc = np.zeros((m * k, w), dtype=np.float64)
    for lo in range(0, n * k, chunk):
        acc += Ap[:, lo:lo + chunk] @ Bp[lo:lo + chunk]
        acc = np.mod(acc, p)
    digits = acc.astype(np.int64).reshape(m, k, w).transpose(0, 2, 1)
    return field.from_digits(digits)


def rank(M: FqMatrix) -> int:
    return gauss_eliminate(M, record=False).rank
