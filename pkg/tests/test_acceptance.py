"""End-to-end acceptance checks, one test group per numbered criterion.

``pytest tests/test_acceptance.py`` prints a PASS/FAIL line for each
criterion at the end of the run (see ``conftest.py``).  The module can also
be executed directly.
"""

import itertools
import json
import math
import random
import subprocess
import sys
import time

import numpy as np
import pytest

import worked_examples
from helpers import parse_all, random_epoly
from symrel.enumeration import kernel_dim, monomials, weakly_monotone_tuples, wm_count
from symrel.gf import field_new
from symrel.interp import interpolate_symmetric
from symrel.linalg import FqMatrix, Op, gauss_eliminate, replay
from symrel.relations import (
    build_matrix,
    coeffs_in_prime_field,
    evaluation_rank,
    full_point_values,
    in_span,
    relation_basis,
    verify_relation,
)
from symrel.symfun import EPoly, FunctionTable, all_points, phi_values, psi_expand

FIELDS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}


def F(q):
    return field_new(*FIELDS[q])


def pairs_up_to(limit):
    return [(q, n) for q in sorted(FIELDS) for n in range(1, 64) if q**n <= limit]


_bases = {}


def basis(q, n):
    if (q, n) not in _bases:
        _bases[q, n] = relation_basis(F(q), n)
    return _bases[q, n]


def same_span(field, A, B):
    """Mutual membership of two lists of E-polynomials, decided by ranks."""
    def rank(polys):
        if not polys:
            return 0
        return gauss_eliminate(FqMatrix(field, np.stack([P.to_vector() for P in polys])),
                               record=False).rank
    ra, rb, rab = rank(A), rank(B), rank(list(A) + list(B))
    return ra == rb == rab


# -- 1 ------------------------------------------------------------------------------

DIMENSIONS = [(2, 2, 1, 1.0), (2, 3, 4, 1.0), (3, 2, 3, 1.0), (3, 3, 17, 1.0),
              (4, 2, 6, 1.0), (5, 5, 2999, 60.0), (7, 4, 2191, 60.0)]


@pytest.mark.parametrize("q,n,dim,limit", DIMENSIONS)
def test_criterion_1_dimensions(q, n, dim, limit):
    field = F(q)
    t = time.perf_counter()
    B = relation_basis(field, n)
    elapsed = time.perf_counter() - t
    _bases[q, n] = B
    assert B.dim == dim == kernel_dim(q, n)
    assert elapsed < limit, f"{elapsed:.2f}s"


@pytest.mark.parametrize("q", sorted(FIELDS))
def test_criterion_1_single_variable(q):
    assert relation_basis(F(q), 1).dim == 0


# -- 2 ------------------------------------------------------------------------------

def test_criterion_2_matrices():
    F2 = F(2)
    assert build_matrix(F2, 2).entries.tolist() == worked_examples.M22
    M23 = build_matrix(F2, 3)
    assert M23.entries.tolist() == worked_examples.M23
    assert gauss_eliminate(M23).echelon.entries.tolist() == worked_examples.M23_REDUCED


# -- 3 ------------------------------------------------------------------------------

def test_criterion_3_binary_bases():
    assert list(basis(2, 2).basis) == [EPoly.parse("e1 e2", F(2), 2)]
    assert set(basis(2, 3).basis) == set(parse_all(worked_examples.BASIS_F2_N3, 2, 1, 3))


def test_criterion_3_ternary_n2():
    B = basis(3, 2)
    printed = parse_all(worked_examples.BASIS_F3_N2, 3, 1, 2)
    assert all(in_span(P, B) for P in printed)
    assert same_span(B.field, B.basis, printed)
    assert set(B.basis) == set(printed)


@pytest.mark.parametrize("q,n,printed", [
    (3, 3, worked_examples.BASIS_F3_N3),
    (4, 2, worked_examples.BASIS_F4_N2),
])
def test_criterion_3_span_fixtures(q, n, printed):
    B = basis(q, n)
    polys = parse_all(printed, *FIELDS[q], n)
    assert len(polys) == B.dim
    assert all(in_span(P, B) for P in polys)
    assert same_span(B.field, B.basis, polys)


# -- 4 ------------------------------------------------------------------------------

@pytest.mark.parametrize("q,n,text", [
    (5, 5, worked_examples.FIRST_IDENTITY_F5_N5),
    (7, 4, worked_examples.FIRST_IDENTITY_F7_N4),
])
def test_criterion_4_identities(q, n, text):
    P = EPoly.parse(text, F(q), n)
    assert not P.is_zero()
    assert verify_relation(P, "wm")


# -- 5 ------------------------------------------------------------------------------

@pytest.mark.parametrize("q,n", [(4, 2), (4, 3), (8, 2), (9, 2)])
def test_criterion_5_prime_field_coefficients(q, n):
    B = basis(q, n)
    assert B.dim == kernel_dim(q, n)
    assert all(coeffs_in_prime_field(P) for P in B.basis)


# -- 6 ------------------------------------------------------------------------------

@pytest.mark.parametrize("q,n", pairs_up_to(10**5))
def test_criterion_6_rank(q, n):
    assert evaluation_rank(F(q), n) == math.comb(n + q - 1, n) == wm_count(q, n)


# -- 7 ------------------------------------------------------------------------------

SOUNDNESS = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3), (8, 2), (9, 2), (5, 5), (7, 4)]


@pytest.mark.parametrize("q,n", SOUNDNESS)
def test_criterion_7_computed_bases_vanish_everywhere(q, n):
    B = basis(q, n)
    values = full_point_values(B.field, n, B.kernel)
    assert values.shape == (B.dim, q**n)
    assert not values.any()


@pytest.mark.parametrize("q,n,texts", [
    (2, 3, worked_examples.BASIS_F2_N3),
    (3, 2, worked_examples.BASIS_F3_N2),
    (3, 3, worked_examples.BASIS_F3_N3),
    (4, 2, worked_examples.BASIS_F4_N2),
    (5, 5, [worked_examples.FIRST_IDENTITY_F5_N5]),
    (7, 4, [worked_examples.FIRST_IDENTITY_F7_N4]),
])
def test_criterion_7_printed_relations_vanish_everywhere(q, n, texts):
    points = all_points(q, n)
    for P in parse_all(texts, *FIELDS[q], n):
        assert not phi_values(P, points).any()


# -- 8 ------------------------------------------------------------------------------

@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (3, 3), (5, 2)])
def test_criterion_8_interpolation_roundtrip(q, n):
    field = F(q)
    rng = random.Random(1000 * q + n)
    points = all_points(q, n)
    for _ in range(100):
        f = FunctionTable.from_function(field, n, lambda a: rng.randrange(q), symmetric=True)
        P = interpolate_symmetric(f)
        expected = np.array([f(a) for a in map(tuple, points)])
        assert np.array_equal(phi_values(P, points), expected)


# -- 9 ------------------------------------------------------------------------------

@pytest.mark.parametrize("q,n", pairs_up_to(10**4))
def test_criterion_9_psi_kernel(q, n):
    """Ker Psi coincides with the polynomials that vanish as functions."""
    B = basis(q, n)
    field = B.field
    rng = random.Random(7919 * q + n)
    mons = monomials(q, n)
    polys = []
    for i in range(100):
        kind = i % 3
        if kind == 2 or not B.dim:
            polys.append(random_epoly(field, n, rng, density=rng.choice([0.01, 0.1, 0.5])))
            continue
        P = EPoly.zero(field, n)
        for idx in rng.sample(range(B.dim), min(B.dim, rng.randint(1, 6))):
            P = P + B.basis[idx].scale(rng.randrange(1, q))
        if kind == 1:
            P = P + EPoly.monomial(field, n, mons[rng.randrange(q**n)], rng.randrange(1, q))
        polys.append(P)
    vanish = [verify_relation(P, "full") for P in polys]
    for P, v in zip(polys, vanish):
        assert psi_expand(P).is_zero() == v
    if B.dim:
        # both outcomes occur, so the equivalence is not vacuous
        assert any(vanish) and not all(vanish)


# -- 10 -----------------------------------------------------------------------------

def test_criterion_10_cli_runs_are_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        log = tmp_path / f"oplog{i}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "symrel", "basis", "--p", "3", "--k", "2", "--n", "2",
             "--format", "json", "--oplog", str(log)],
            capture_output=True, check=True)
        outs.append((proc.stdout, log.read_bytes()))
    assert outs[0] == outs[1]
    assert json.loads(outs[0][0])["dim"] == kernel_dim(9, 2)


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (4, 2), (5, 3), (9, 2)])
def test_criterion_10_oplog_replay(q, n):
    M = build_matrix(F(q), n)
    res = gauss_eliminate(M)
    ops = [Op(**d) for d in json.loads(res.oplog_json())]
    assert replay(M, ops) == res.echelon
    assert gauss_eliminate(M).oplog == res.oplog


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", *sys.argv[1:]]))
