import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcforms import linalg
from arcforms.field import make_field

F5 = make_field(5)
F7 = make_field(7)


def det_cofactor(gf, rows):
    """Independent determinant oracle: Laplace expansion along row 0."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[r[c] for c in range(n) if c != j] for r in rows[1:]]
        term = gf.mul(rows[0][j], det_cofactor(gf, minor))
        total = gf.add(total, term) if j % 2 == 0 else gf.sub(total, term)
    return total


def test_det_examples():
    assert linalg.det(F5, linalg.identity(3)) == 1
    assert linalg.det(F5, [[1, 2], [1, 2]]) == 0
    assert linalg.det(F5, [[1, 2], [3, 4]]) == 3


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        linalg.det(F5, [[1, 2, 3], [4, 5, 6]])


def test_det_cross_check_cofactor_random_4x4():
    rng = random.Random(0)
    for _ in range(25):
        m = [[rng.randrange(7) for _ in range(4)] for _ in range(4)]
        assert linalg.det(F7, m) == det_cofactor(F7, m)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_alternating(m):
    d = linalg.det(F7, m)
    swapped = [m[1], m[0], m[2]]
    assert linalg.det(F7, swapped) == F7.neg(d)
    assert linalg.det(F7, [m[0], m[0], m[2]]) == 0


def test_nullspace_examples():
    rank, basis = linalg.nullspace(F5, linalg.identity(3))
    assert rank == 3 and basis == []
    rank, basis = linalg.nullspace(F5, [[0, 0, 0], [0, 0, 0]])
    assert rank == 0 and len(basis) == 3
    rank, basis = linalg.nullspace(F7, [[1, 2, 3], [2, 4, 6]])
    assert rank == 1 and len(basis) == 2


def test_nullspace_members_annihilate():
    rng = random.Random(1)
    for _ in range(20):
        rows = [[rng.randrange(7) for _ in range(5)] for _ in range(3)]
        rank, basis = linalg.nullspace(F7, rows)
        assert rank + len(basis) == 5
        for v in basis:
            assert all(linalg.dot(F7, r, v) == 0 for r in rows)


def test_nullspace_basis_is_reduced_echelon():
    rank, basis = linalg.nullspace(F7, [[1, 1, 0], [0, 0, 1]])
    # leading entries 1, strictly increasing pivot positions, pivots cleared
    leads = []
    for row in basis:
        lead = next(i for i, c in enumerate(row) if c)
        assert row[lead] == 1
        leads.append(lead)
        for other in basis:
            if other is not row:
                assert other[lead] == 0
    assert leads == sorted(leads)


def test_nullspace_canonical_under_row_scrambling():
    rng = random.Random(2)
    rows = [[rng.randrange(5) for _ in range(6)] for _ in range(3)]
    _, b1 = linalg.nullspace(F5, rows)
    scrambled = [[F5.mul(3, c) for c in rows[2]], rows[0], rows[1]]
    _, b2 = linalg.nullspace(F5, scrambled)
    assert b1 == b2


def test_rref_idempotent_and_rank():
    m = [[2, 4, 1], [1, 2, 3], [3, 6, 4]]
    red, pivots = linalg.rref(F5, m)
    assert linalg.rref(F5, red)[0] == red
    assert linalg.rank(F5, m) == len(pivots)


def test_inverse_and_solve():
    m = [[1, 2, 0], [0, 1, 4], [3, 0, 1]]
    inv = linalg.inverse(F7, m)
    assert linalg.mat_mul(F7, m, inv) == linalg.identity(3)
    rhs = [5, 1, 2]
    x = linalg.solve(F7, m, rhs)
    assert linalg.mat_vec(F7, m, x) == rhs
    # inconsistent system
    assert linalg.solve(F7, [[1, 0], [1, 0]], [1, 2]) is None
    with pytest.raises(ValueError):
        linalg.inverse(F7, [[1, 1], [1, 1]])


def test_det_multiplicative():
    rng = random.Random(3)
    for _ in range(10):
        a = [[rng.randrange(5) for _ in range(3)] for _ in range(3)]
        b = [[rng.randrange(5) for _ in range(3)] for _ in range(3)]
        lhs = linalg.det(F5, linalg.mat_mul(F5, a, b))
        rhs = F5.mul(linalg.det(F5, a), linalg.det(F5, b))
        assert lhs == rhs


def test_extension_field_linear_algebra():
    f4 = make_field(2, 2)
    # Vandermonde over F4 on distinct elements is invertible
    m = [[f4.pow(s, j) for j in range(3)] for s in (1, 2, 3)]
    assert linalg.det(f4, m) != 0
    rank, basis = linalg.nullspace(f4, m)
    assert rank == 3 and basis == []
