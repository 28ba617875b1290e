from fractions import Fraction
from itertools import product

import gmpy2
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrowkernel.linalg import AmbientMismatch, Field, Subspace, is_prime, left_nullspace, nullspace, rank, rref, subspace_ops

from oracles import gf2_span

GF7 = Field.gf(7)
Q = Field.rationals()


def small_primes(limit):
    return [p for p in range(2, limit + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


def matrices(p, max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rref_examples():
    R, piv = rref(GF7, GF7.array([[2]]))
    assert R.tolist() == [[1]] and piv == [0]
    R, piv = rref(Q, Q.array([[1, 2], [2, 4]]))
    assert [[int(x) for x in row] for row in R] == [[1, 2], [0, 0]]
    assert piv == [0]
    R, piv = rref(GF7, GF7.zeros(0, 0))
    assert R.shape == (0, 0) and piv == []


def test_nullspace_examples():
    assert nullspace(GF7, GF7.eye(3)).dim == 0
    ns = nullspace(GF7, GF7.array([[1, 1]]))
    assert ns.dim == 1
    assert ns.basis.tolist() == [[1, 6]]


def test_left_nullspace():
    m = GF7.array([[1, 2], [2, 4], [0, 1]])
    ln = left_nullspace(GF7, m)
    assert ln.dim == 1
    assert GF7.is_zero(GF7.matmul(ln.basis, m))


def test_rational_entries_stay_exact():
    m = Q.array([[Fraction(1, 3), Fraction(2, 7)], [Fraction(2, 3), Fraction(4, 7)]])
    assert rank(Q, m) == 1
    R, _ = rref(Q, m)
    assert R[0, 1] == gmpy2.mpq(6, 7)


@pytest.mark.parametrize("p", small_primes(101))
def test_inverse_exhaustive(p):
    F = Field.gf(p)
    for x in range(1, p):
        assert x * F.inverse(x) % p == 1
    with pytest.raises(ZeroDivisionError):
        F.inverse(0)


def test_field_validation():
    assert is_prime(2) and is_prime(101) and not is_prime(1) and not is_prime(91)
    with pytest.raises(ValueError):
        Field.gf(6)
    assert Field.gf(7).name == "GF(7)" and Q.name == "Q"
    assert GF7.scalar(Fraction(1, 2)) == 4


def test_large_prime_matmul_is_exact():
    p = 2_147_483_647
    F = Field.gf(p)
    rng = np.random.default_rng(1)
    a = F.array(rng.integers(0, p, size=(4, 5)).tolist())
    b = F.array(rng.integers(0, p, size=(5, 3)).tolist())
    expect = [[sum(int(a[i, k]) * int(b[k, j]) for k in range(5)) % p for j in range(3)] for i in range(4)]
    assert F.matmul(a, b).tolist() == expect


@settings(max_examples=60, deadline=None)
@given(matrices(7))
def test_rref_idempotent_and_rank_nullity(rows):
    m = GF7.array(rows)
    R, piv = rref(GF7, m)
    R2, piv2 = rref(GF7, R)
    assert np.array_equal(R, R2) and piv == piv2
    ns = nullspace(GF7, m)
    assert ns.dim == m.shape[1] - rank(GF7, m)
    if ns.dim:
        assert GF7.is_zero(GF7.matmul(m, ns.basis.T))


@settings(max_examples=40, deadline=None)
@given(matrices(5, 4, 4))
def test_rational_rank_matches_fraction_elimination(rows):
    m = Q.array(rows)
    # independent rank over Q by Fraction elimination
    work = [[Fraction(x) for x in row] for row in rows]
    r = 0
    for c in range(len(work[0])):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c] / work[r][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
    assert rank(Q, m) == r


def test_subspace_examples():
    a = Subspace.from_rows(GF7, GF7.array([[1, 2, 0], [0, 0, 1]]))
    ops = subspace_ops(a, a)
    assert ops["sum"] == a and ops["intersection"] == a and ops["contains"]
    e = GF7.eye(4)
    u = Subspace.from_rows(GF7, e[:2])
    v = Subspace.from_rows(GF7, e[2:])
    ops = subspace_ops(u, v)
    assert ops["sum"].dim == 4 and ops["intersection"].dim == 0 and not ops["contains"]
    with pytest.raises(AmbientMismatch):
        u + Subspace.zero(GF7, 3)


@settings(max_examples=80, deadline=None)
@given(matrices(2, 4, 6), matrices(2, 4, 6))
def test_subspace_ops_against_gf2_enumeration(ra, rb):
    n = min(len(ra[0]), len(rb[0]))
    ra = [r[:n] for r in ra]
    rb = [r[:n] for r in rb]
    F = Field.gf(2)
    a = Subspace.from_rows(F, F.array(ra), n)
    b = Subspace.from_rows(F, F.array(rb), n)
    ops = subspace_ops(a, b)
    span_a, span_b = gf2_span(ra), gf2_span(rb)
    span_sum = gf2_span(ra + rb)
    assert 2 ** a.dim == len(span_a) and 2 ** b.dim == len(span_b)
    assert 2 ** ops["sum"].dim == len(span_sum)
    assert 2 ** ops["intersection"].dim == len(span_a & span_b)
    assert gf2_span(ops["intersection"].basis.tolist() or [[0] * n]) == span_a & span_b
    assert ops["sum"].dim + ops["intersection"].dim == a.dim + b.dim
    assert ops["contains"] == (span_sum == span_a)


def test_coordinates_and_reduce():
    a = Subspace.from_rows(GF7, GF7.array([[1, 0, 3], [0, 1, 5]]))
    v = GF7.array([[2, 3, (2 * 3 + 3 * 5) % 7]])
    assert a.contains_vectors(v)
    assert a.coordinates(v).tolist() == [[2, 3]]
    assert not a.contains_vectors(GF7.array([[0, 0, 1]]))
    assert a.complement_coordinates() == [2]


def test_all_gf3_subspaces_of_small_ambient():
    # every pair of 1-dim subspaces of GF(3)^2: sum is 1 or 2 dims, never more
    F = Field.gf(3)
    lines = [Subspace.from_rows(F, F.array([list(v)])) for v in product(range(3), repeat=2) if any(v)]
    for a, b in product(lines, repeat=2):
        s = a + b
        assert s.dim == (1 if a == b else 2)
        assert a.intersection(b).dim == (1 if a == b else 0)
