"""Elementary symmetric evaluation and the quotient algebras F_q{E}, F_q{X}.

Both algebras have the monomials with every exponent below ``q`` as a
basis; products reduce exponents with ``x^q = x``.  Polynomials are stored
as sparse ``{exponent tuple: coefficient index}`` maps with zeros pruned,
so equality is map equality.

The three maps between them:

* ``phi_eval``: evaluate ``P(e_1(a), ..., e_n(a))`` at a point,
* ``psi_expand``: substitute ``E_k -> e_k(X)`` and reduce,
* ``gamma_eval``: evaluate an X-polynomial at a point.
"""

from __future__ import annotations

import collections
import functools
import itertools
import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, TextIO

import numpy as np

from .enumeration import (
    ExponentTuple,
    PointTuple,
    is_weakly_monotone,
    monomial_key,
    monomial_positions,
    monomials,
    reduce_exponent,
    weakly_monotone_tuples,
)
from .gf import Field, FieldElement, FieldError
from .linalg import field_matmul

DENSE_GUARD = 10**6


class ScaleError(RuntimeError):
    """Requested computation exceeds the configured size guard."""


def _as_index(field: Field, c) -> int:
    if isinstance(c, FieldElement):
        if c.field != field:
            raise FieldError(f"coefficient from {c.field}, expected {field}")
        return c.index
    c = int(c)
    if not 0 <= c < field.q:
        raise FieldError(f"coefficient index {c} out of range for {field}")
    return c


class _QPoly:
    """Shared implementation of the two quotient algebras."""

    var = "?"
    __slots__ = ("field", "n", "terms")

    def __init__(self, field: Field, n: int, terms: Mapping[ExponentTuple, int] | None = None):
        q = field.q
        clean: dict[ExponentTuple, int] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n:
                raise ValueError(f"exponent tuple {alpha} has length != {n}")
            if any(not 0 <= a < q for a in alpha):
                raise ValueError(f"exponents of {alpha} must lie in [0, {q})")
            c = _as_index(field, c)
            if c:
                clean[alpha] = c
        self.field = field
        self.n = n
        self.terms = clean

    # -- construction ---------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, n: int):
        return cls(field, n)

    @classmethod
    def constant(cls, field: Field, n: int, c=1):
        return cls(field, n, {(0,) * n: c})

    @classmethod
    def monomial(cls, field: Field, n: int, alpha: ExponentTuple, c=1):
        return cls(field, n, {tuple(alpha): c})

    @classmethod
    def variable(cls, field: Field, n: int, i: int):
        """The i-th generator, 1-based as in ``E_1 ... E_n``."""
        alpha = [0] * n
        alpha[i - 1] = 1
        return cls(field, n, {tuple(alpha): 1})

    @classmethod
    def _raw(cls, field: Field, n: int, terms: dict):
        obj = cls.__new__(cls)
        obj.field = field
        obj.n = n
        obj.terms = terms
        return obj

    # -- ring operations --------------------------------------------------------

    def _check_ctx(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.field != self.field or other.n != self.n:
            raise ValueError("polynomials live in different algebras")

    def __add__(self, other):
        self._check_ctx(other)
        F = self.field
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            s = F.add(out.get(alpha, 0), c)
            if s:
                out[alpha] = s
            else:
                out.pop(alpha, None)
        return self._raw(F, self.n, out)

    def __neg__(self):
        F = self.field
        return self._raw(F, self.n, {a: F.neg(c) for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        F = self.field
        c = _as_index(F, c)
        if c == 0:
            return self._raw(F, self.n, {})
        return self._raw(F, self.n, {a: F.mul(c, v) for a, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        self._check_ctx(other)
        F, q = self.field, self.field.q
        out: dict[ExponentTuple, int] = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                alpha = tuple(reduce_exponent(x + y, q) for x, y in zip(a1, a2))
                out[alpha] = F.add(out.get(alpha, 0), F.mul(c1, c2))
        return self._raw(F, self.n, {a: c for a, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = self.constant(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, self.field, self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, alpha: ExponentTuple) -> int:
        return self.terms.get(tuple(alpha), 0)

    def sorted_terms(self) -> list[tuple[ExponentTuple, int]]:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    # -- dense and vector forms -------------------------------------------------

    def to_dense(self) -> np.ndarray:
        q, n = self.field.q, self.n
        _guard(q**n)
        arr = np.zeros((q,) * n, dtype=self.field.dtype)
        for alpha, c in self.terms.items():
            arr[alpha] = c
        return arr

    @classmethod
    def from_dense(cls, field: Field, arr: np.ndarray):
        n = arr.ndim
        idx = np.argwhere(arr)
        vals = arr[tuple(idx.T)] if idx.size else []
        terms = {tuple(int(x) for x in alpha): int(c) for alpha, c in zip(idx, vals)}
        return cls._raw(field, n, terms)

    def to_vector(self) -> np.ndarray:
        """Coefficients in column (monomial) order."""
        pos = monomial_positions(self.field.q, self.n)
        vec = np.zeros(self.field.q**self.n, dtype=self.field.dtype)
        for alpha, c in self.terms.items():
            vec[pos[alpha]] = c
        return vec

    @classmethod
    def from_vector(cls, field: Field, n: int, vec: np.ndarray):
        mons = monomials(field.q, n)
        nz = np.flatnonzero(vec)
        return cls._raw(field, n, {mons[i]: int(vec[i]) for i in nz})

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": self.field.to_json(),
            "terms": [{"alpha": list(a), "coeff": c} for a, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict, field: Field | None = None):
        if field is None:
            field = Field.from_json(obj["field"])
        elif "field" in obj and Field.from_json(obj["field"]) != field:
            raise FieldError("polynomial file is over a different field")
        n = int(obj["n"])
        terms: dict[ExponentTuple, int] = {}
        for t in obj["terms"]:
            alpha = tuple(t["alpha"])
            if alpha in terms:
                raise ValueError(f"duplicate monomial {list(alpha)}")
            terms[alpha] = t["coeff"]
        return cls(field, n, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str, field: Field | None = None):
        return cls.from_json(json.loads(text), field)

    def to_text(self) -> str:
        """ASCII rendering such as ``2 e1 e2 + e1 e2^2``."""
        if not self.terms:
            return "0"
        parts = []
        for alpha, c in self.sorted_terms():
            factors = []
            for i, a in enumerate(alpha, 1):
                if a == 1:
                    factors.append(f"{self.var}{i}")
                elif a > 1:
                    factors.append(f"{self.var}{i}^{a}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append(" ".join(factors))
            else:
                parts.append(f"{c} " + " ".join(factors))
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, field: Field, n: int):
        """Inverse of :meth:`to_text`; also accepts ``e_1`` and ``*``.

        Integer coefficients are element indices.  Exponents are reduced
        with ``x^q = x``.
        """
        text = text.strip()
        if text.endswith("= 0"):
            text = text[:-3]
        out = cls.zero(field, n)
        if text.strip() == "0":
            return out
        for chunk in text.split("+"):
            factors = chunk.replace("*", " ").replace("_", "").split()
            if not factors:
                raise ValueError(f"empty term in {text!r}")
            c = 1
            alpha = [0] * n
            for tok in factors:
                if tok.isdigit():
                    c = field.mul(c, _as_index(field, int(tok)))
                    continue
                base, _, exp = tok.partition("^")
                if base[:1] != cls.var or not base[1:].isdigit():
                    raise ValueError(f"cannot parse factor {tok!r}")
                i = int(base[1:])
                if not 1 <= i <= n:
                    raise ValueError(f"variable {base} outside 1..{n}")
                alpha[i - 1] += int(exp) if exp else 1
            alpha = tuple(reduce_exponent(a, field.q) for a in alpha)
            out = out + cls.monomial(field, n, alpha, c)
        return out

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()!r}, n={self.n}, {self.field})"


class EPoly(_QPoly):
    """Element of F_q{E_1, ..., E_n}."""

    var = "e"
    __slots__ = ()


class XPoly(_QPoly):
    """Element of F_q{X_1, ..., X_n}."""

    var = "x"
    __slots__ = ()

    def permute(self, perm: tuple[int, ...]) -> "XPoly":
        """Substitute ``X_i -> X_{perm[i]}`` (0-based)."""
        out = {}
        for alpha, c in self.terms.items():
            beta = [0] * self.n
            for i, a in enumerate(alpha):
                beta[perm[i]] = a
            out[tuple(beta)] = c
        return XPoly._raw(self.field, self.n, out)


def epoly_add(P: EPoly, Q: EPoly) -> EPoly:
    return P + Q


def epoly_scale(c, P: EPoly) -> EPoly:
    return P.scale(c)


def epoly_mul(P: EPoly, Q: EPoly) -> EPoly:
    return P * Q


def _guard(size: int, limit: int | None = None) -> None:
    limit = DENSE_GUARD if limit is None else limit
    if size > limit:
        raise ScaleError(f"dense size {size} exceeds guard {limit}")


# -- evaluation ----------------------------------------------------------------

def eval_elementary(field: Field, a: PointTuple) -> tuple[int, ...]:
    """``(e_1(a), ..., e_n(a))`` from the coefficients of prod (1 + a_i T).

    Quadratic in ``n`` field operations, linear space.
    """
    n = len(a)
    add, mul = field.add_table, field.mul_table
    c = [1] + [0] * n
    for i, x in enumerate(a, 1):
        for j in range(i, 0, -1):
            c[j] = int(add[c[j], mul[x, c[j - 1]]])
    return tuple(c[1:])


def elementary_table(field: Field, points: np.ndarray) -> np.ndarray:
    """Row-wise :func:`eval_elementary` for an ``(N, n)`` array of points."""
    points = np.asarray(points)
    N, n = points.shape
    add, mul = field.add_table, field.mul_table
    c = np.zeros((N, n + 1), dtype=field.dtype)
    c[:, 0] = 1
    for i in range(n):
        x = points[:, i]
        for j in range(i + 1, 0, -1):
            c[:, j] = add[c[:, j], mul[x, c[:, j - 1]]]
    return c[:, 1:]


def eval_monomial(field: Field, m: ExponentTuple, a: PointTuple) -> int:
    e = eval_elementary(field, a)
    return _monomial_at(field, m, e)


def _monomial_at(field: Field, m: ExponentTuple, e: tuple[int, ...]) -> int:
    v = 1
    for ei, alpha in zip(e, m):
        if alpha:
            v = field.mul(v, int(field.pow_table[ei, alpha]))
    return v


def phi_eval(P: EPoly, a: PointTuple) -> int:
    """``P(e_1(a), ..., e_n(a))`` as an element index."""
    F = P.field
    e = eval_elementary(F, a)
    v = 0
    for alpha, c in P.terms.items():
        v = F.add(v, F.mul(c, _monomial_at(F, alpha, e)))
    return v


def monomial_value_matrix(field: Field, n: int, points: np.ndarray,
                          columns: int | None = None) -> np.ndarray:
    """Entry ``(r, c)`` is the c-th column monomial evaluated at point ``r``.

    Elementary values are computed once per point; each monomial column is
    then a product of table lookups.  ``columns`` keeps only a prefix of the
    monomial order.
    """
    E = elementary_table(field, points)
    mons = np.array(monomials(field.q, n)[:columns], dtype=np.int64).reshape(-1, n)
    pw, mul = field.pow_table, field.mul_table
    out = pw[E[:, 0][:, None], mons[None, :, 0]]
    for i in range(1, n):
        out = mul[out, pw[E[:, i][:, None], mons[None, :, i]]]
    return out


def all_points(q: int, n: int) -> np.ndarray:
    """All of F_q^n as an ``(q^n, n)`` index array in odometer order."""
    return np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64).reshape(-1, n)


def phi_values(P: EPoly, points: np.ndarray) -> np.ndarray:
    """Values of ``Phi(P)`` at each row of ``points``."""
    F = P.field
    E = elementary_table(F, points)
    out = np.zeros(len(E), dtype=F.dtype)
    pw = F.pow_table
    for alpha, c in P.terms.items():
        val = np.full(len(E), c, dtype=F.dtype)
        for i, a in enumerate(alpha):
            if a:
                val = F.mul_table[val, pw[E[:, i], a]]
        out = F.add_table[out, val]
    return out


def gamma_eval(Q: XPoly, a: PointTuple) -> int:
    F = Q.field
    v = 0
    for beta, c in Q.terms.items():
        t = c
        for x, b in zip(a, beta):
            if b:
                t = F.mul(t, int(F.pow_table[x, b]))
        v = F.add(v, t)
    return v


def axis_transform(field: Field, arr: np.ndarray, mat: np.ndarray) -> np.ndarray:
    """Contract every axis of ``arr`` with ``mat``: out[.., b, ..] = sum_a arr[.., a, ..] mat[a, b]."""
    out = arr
    for axis in range(arr.ndim):
        moved = np.moveaxis(out, axis, -1)
        shape = moved.shape
        flat = field_matmul(field, moved.reshape(-1, shape[-1]), mat)
        out = np.moveaxis(flat.reshape(shape[:-1] + (mat.shape[1],)), -1, axis)
    return np.ascontiguousarray(out)


def gamma_values(Q: XPoly) -> np.ndarray:
    """Dense table of ``Gamma(Q)``: entry ``[a_1, ..., a_n]`` is ``Q(a)``."""
    F = Q.field
    # vander[b, a] = a^b
    vander = np.ascontiguousarray(F.pow_table.T)
    return axis_transform(F, Q.to_dense(), vander)


# -- substitution E_k -> e_k(X) -----------------------------------------------------

# Symmetric X-polynomials are kept in the monomial symmetric basis: a key is
# an exponent vector sorted in decreasing order and stands for the sum of all
# its distinct permutations.  Every intermediate of the expansion is symmetric,
# so at most wm(q, n) keys ever appear.

def _orbit_size(counts: Iterable[int]) -> int:
    out = math.factorial(sum(counts))
    for m in counts:
        out //= math.factorial(m)
    return out


@functools.lru_cache(maxsize=None)
def _e_transitions(q: int, p: int, lam: tuple[int, ...], k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Expansion of ``m_lam * e_k`` as ``((mu, c), ...)`` with ``c`` an integer mod p.

    Multiplying by e_k bumps the exponent at k distinct positions, where a
    bump sends a to a+1 and q-1 to 1 (since x^q = x).  Choosing j_a of the
    m_a positions holding a gives the shape; the count of (vector, subset)
    pairs landing on one orbit, divided by the orbit size, is the coefficient.
    """
    mult = collections.Counter(lam)
    values = sorted(mult)
    n_lam = _orbit_size(mult.values())
    hits: dict[tuple[int, ...], int] = collections.defaultdict(int)
    for js in itertools.product(*(range(min(mult[a], k) + 1) for a in values)):
        if sum(js) != k:
            continue
        new = collections.Counter()
        ways = n_lam
        for a, j in zip(values, js):
            new[a] += mult[a] - j
            new[a + 1 if a < q - 1 else 1] += j
            ways *= math.comb(mult[a], j)
        mu = tuple(sorted(new.elements(), reverse=True))
        hits[mu] += ways
    out = []
    for mu, count in hits.items():
        size = _orbit_size(collections.Counter(mu).values())
        c = (count // size) % p
        if c:
            out.append((mu, c))
    return tuple(out)


def _sym_mul_elementary(field: Field, poly: dict, k: int) -> dict:
    out: dict[tuple[int, ...], int] = {}
    add, mul = field.add_table, field.mul_table
    for lam, c in poly.items():
        for mu, m in _e_transitions(field.q, field.p, lam, k):
            # m is an integer mod p, i.e. a prime-field element with the same index
            v = int(add[out.get(mu, 0), mul[c, m]])
            if v:
                out[mu] = v
            else:
                out.pop(mu, None)
    return out


def _sym_add(field: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for key, c in b.items():
        v = int(field.add_table[out.get(key, 0), c])
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _psi_symmetric(field: Field, n: int, terms: Mapping[ExponentTuple, int], depth: int = 1) -> dict:
    """Horner in E_depth over the remaining exponent tails."""
    if depth > n:
        c = _sum_field(field, terms.values())
        return {(0,) * n: c} if c else {}
    groups: dict[int, dict] = collections.defaultdict(dict)
    for alpha, c in terms.items():
        groups[alpha[0]][alpha[1:]] = c
    top = max(groups)
    result: dict = {}
    for j in range(top, -1, -1):
        if j != top and result:
            result = _sym_mul_elementary(field, result, depth)
        if j in groups:
            result = _sym_add(field, result, _psi_symmetric(field, n, groups[j], depth + 1))
    return result


def _sum_field(field: Field, values: Iterable[int]) -> int:
    total = 0
    for v in values:
        total = int(field.add_table[total, v])
    return total


def _symmetric_to_dense(field: Field, n: int, sym: dict) -> np.ndarray:
    q = field.q
    pts = all_points(q, n)
    keys = -np.sort(-pts, axis=1)
    codes = keys @ (q ** np.arange(n, dtype=np.int64))
    lookup = np.zeros(q**n, dtype=field.dtype)
    for mu, c in sym.items():
        lookup[int(np.dot(mu, q ** np.arange(n)))] = c
    # all_points enumerates in row-major order, which matches reshape
    return lookup[codes].reshape((q,) * n)


def psi_expand(P: EPoly, guard: int | None = None) -> XPoly:
    """Image of ``P`` under ``E_k -> e_k(X_1, ..., X_n)`` in F_q{X}."""
    F, n = P.field, P.n
    _guard(F.q**n, guard)
    if P.is_zero():
        return XPoly.zero(F, n)
    sym = _psi_symmetric(F, n, P.terms)
    return XPoly.from_dense(F, _symmetric_to_dense(F, n, sym))


def elementary_xpoly(field: Field, n: int, k: int) -> XPoly:
    """``e_k(X_1, ..., X_n)`` as an X-polynomial."""
    terms = {}
    for J in itertools.combinations(range(n), k):
        alpha = [0] * n
        for j in J:
            alpha[j] = 1
        terms[tuple(alpha)] = 1
    return XPoly(field, n, terms)


# -- function tables ------------------------------------------------------------------

@dataclass
class FunctionTable:
    """Values of a function F_q^n -> F_q.

    A symmetric table stores only the weakly monotone points; lookups sort
    the argument first.
    """

    field: Field
    n: int
    values: dict[PointTuple, int]
    symmetric: bool = False

    def __post_init__(self):
        q = self.field.q
        for a, v in self.values.items():
            if len(a) != self.n or any(not 0 <= x < q for x in a):
                raise ValueError(f"bad point {a}")
            if not 0 <= v < q:
                raise ValueError(f"bad value {v} at {a}")
            if self.symmetric and not is_weakly_monotone(a):
                raise ValueError(f"symmetric table has non-monotone point {a}")

    @classmethod
    def from_function(cls, field: Field, n: int, fn: Callable[[PointTuple], int],
                      symmetric: bool = False) -> "FunctionTable":
        pts = weakly_monotone_tuples(field, n) if symmetric else itertools.product(
            range(field.q), repeat=n)
        return cls(field, n, {tuple(a): int(fn(tuple(a))) for a in pts}, symmetric)

    def is_total(self) -> bool:
        q, n = self.field.q, self.n
        if self.symmetric:
            return all(a in self.values for a in weakly_monotone_tuples(q, n))
        return len(self.values) == q**n

    def __call__(self, a: PointTuple) -> int:
        a = tuple(a)
        if self.symmetric:
            a = tuple(sorted(a))
        return self.values[a]

    def to_dense(self) -> np.ndarray:
        """Full table as an array indexed by points, orbit-expanding if needed."""
        if not self.is_total():
            raise ValueError("function table is incomplete")
        q, n = self.field.q, self.n
        _guard(q**n)
        arr = np.zeros((q,) * n, dtype=self.field.dtype)
        for a in itertools.product(range(q), repeat=n):
            arr[a] = self(a)
        return arr

    def is_symmetric(self, perms: Iterable[tuple[int, ...]] | None = None) -> bool:
        if self.symmetric:
            return True
        arr = self.to_dense()
        n = self.n
        if perms is None:
            perms = [tuple(range(1, n)) + (0,)]
            if n >= 2:
                perms.append((1, 0) + tuple(range(2, n)))
        return all(np.array_equal(arr, np.transpose(arr, perm)) for perm in perms)

    def dump(self, fh: TextIO) -> None:
        if self.symmetric:
            fh.write("symmetric\n")
        for a in sorted(self.values):
            fh.write(" ".join(map(str, a)) + f" : {self.values[a]}\n")

    @classmethod
    def load(cls, fh: TextIO, field: Field, n: int) -> "FunctionTable":
        symmetric = False
        values: dict[PointTuple, int] = {}
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if line == "symmetric":
                if values:
                    raise ValueError("'symmetric' header must precede the values")
                symmetric = True
                continue
            if ":" not in line:
                raise ValueError(f"line {lineno}: expected 'i1 ... in : v'")
            lhs, rhs = line.split(":", 1)
            try:
                a = tuple(int(x) for x in lhs.split())
                v = int(rhs)
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer entry") from None
            if len(a) != n:
                raise ValueError(f"line {lineno}: expected {n} coordinates, got {len(a)}")
            if a in values:
                raise ValueError(f"line {lineno}: duplicate point {a}")
            values[a] = v
        table = cls(field, n, values, symmetric)
        if not table.is_total():
            raise ValueError("function table does not cover every required point")
        return table
