from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from gmk.abelian import (
    IntMatrix,
    NotUnipotentError,
    abelianization_matrix,
    column_l1,
    norms,
    power,
    rank,
    stated_block_form,
    true_block_D,
    unipotent_jordan_profile,
)
from gmk.family import identity, make_phi
from gmk.growth import growth_table


def rational_rank(rows):
    """Gauss-Jordan over Fractions, as an oracle for the integer elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for c in range(len(a[0])):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def naive_power(M, n):
    out = IntMatrix.identity(M.rows)
    for _ in range(n):
        out = out @ M
    return out


def test_phi_1_1_matrix():
    assert abelianization_matrix(make_phi(1, 1)).to_lists() == [[1, 1], [0, 1]]


def test_identity_matrix():
    assert abelianization_matrix(identity(3)) == IntMatrix.identity(3)


def test_phi_2_2_matrix_hand_computed():
    # columns: A1 -> A1, A2 -> A1 A2 A1^-1, B1 -> A1 A2 B1, B2 -> A1 A2 B1 B2 A1^-1
    assert abelianization_matrix(make_phi(2, 2)).to_lists() == [
        [1, 0, 1, 0],
        [0, 1, 1, 1],
        [0, 0, 1, 1],
        [0, 0, 0, 1],
    ]


@pytest.mark.parametrize("m", range(1, 6))
def test_block_structure(m):
    for k in range(1, m + 1):
        M = abelianization_matrix(make_phi(m, k))
        S = stated_block_form(m, k)
        assert M.block(0, m, 0, m) == IntMatrix.identity(m)
        assert M.block(m, m + k, 0, m + k) == S.block(m, m + k, 0, m + k)
        assert M.block(0, m, m, m + k) == true_block_D(m, k)


def test_power_examples():
    M = abelianization_matrix(make_phi(2, 2))
    P = power(M, 3)
    assert P.to_lists() == [[1, 0, 3, 3], [0, 1, 3, 6], [0, 0, 1, 3], [0, 0, 0, 1]]
    assert power(M, 0) == IntMatrix.identity(4)
    P = power(abelianization_matrix(make_phi(3, 2)), 4)
    assert P.block(3, 5, 3, 5).to_lists() == [[1, 4], [0, 1]]
    # last A-row of the top-right block is (C(4,1), C(5,2))
    assert list(P.entries[2][3:]) == [comb(4, 1), comb(5, 2)]
    with pytest.raises(ValueError):
        power(IntMatrix.from_rows([[1, 2]]), 2)


@pytest.mark.parametrize("m", range(1, 5))
def test_power_matches_naive(m):
    M = abelianization_matrix(make_phi(m, m))
    for n in range(0, 12):
        assert power(M, n) == naive_power(M, n)


def test_rank_examples():
    M = abelianization_matrix(make_phi(2, 2))
    I = IntMatrix.identity(4)
    assert rank(M - I) == 2
    assert rank(power(M - I, 2)) == 1
    assert rank(IntMatrix.zero(3, 4)) == 0


def test_rank_matches_rational_oracle():
    rng = random.Random(7)
    for _ in range(500):
        R, C = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.choice([0, 0, 1, -1, 2, 5]) for _ in range(C)] for _ in range(R)]
        if rng.random() < 0.4 and R > 1:
            rows[-1] = [2 * x for x in rows[0]]
        assert rank(IntMatrix.from_rows(rows)) == rational_rank(rows)


def test_jordan_examples():
    assert unipotent_jordan_profile(abelianization_matrix(make_phi(2, 2))).sizes == (3, 1)
    assert unipotent_jordan_profile(IntMatrix.identity(3)).sizes == (1, 1, 1)
    assert unipotent_jordan_profile(abelianization_matrix(make_phi(4, 3))).sizes == (4, 1, 1, 1)
    with pytest.raises(NotUnipotentError):
        unipotent_jordan_profile(IntMatrix.from_rows([[2, 0], [0, 1]]))


@pytest.mark.parametrize("m", range(1, 6))
def test_jordan_family(m):
    for k in range(1, m + 1):
        M = abelianization_matrix(make_phi(m, k))
        prof = unipotent_jordan_profile(M)
        assert prof.sizes == (k + 1,) + (1,) * (m - 1)
        assert prof.count == m


def test_single_jordan_block_sup_growth():
    c = 4
    J = IntMatrix.from_rows([[int(j in (i, i + 1)) for j in range(c)] for i in range(c)])
    for n in range(0, 15):
        assert norms(power(J, n))[0] == max(comb(n, j) for j in range(c))
    for n in range(2 * c, 15):
        assert norms(power(J, n))[0] == comb(n, c - 1)


def test_norm_examples():
    M = abelianization_matrix(make_phi(2, 2))
    assert norms(M) == (1, 3)
    assert norms(IntMatrix.zero(2, 2)) == (0, 0)
    assert norms(power(M, 3))[0] == 6


def test_column_l1_examples():
    P = power(abelianization_matrix(make_phi(2, 2)), 3)
    assert column_l1(P, 3) == 3 + 6 + 3 + 1
    assert all(column_l1(IntMatrix.identity(3), j) == 1 for j in range(3))
    for n in range(10):
        assert column_l1(power(abelianization_matrix(make_phi(1, 1)), n), 1) == n + 1
    with pytest.raises(IndexError):
        column_l1(P, 4)


def test_bk_column_sup_is_top_binomial():
    for m in range(1, 6):
        for k in range(1, m + 1):
            M = abelianization_matrix(make_phi(m, k))
            for n in range(1, 15):
                col = power(M, n).column(m + k - 1)
                assert max(col) == comb(n + k - 1, k)


@pytest.mark.parametrize("m,k", [(2, 2), (3, 2), (3, 3), (4, 4)])
def test_inequalities_against_growth(m, k):
    e = make_phi(m, k)
    gr = growth_table(e, 15).gr
    M = abelianization_matrix(e)
    for n in range(16):
        P = power(M, n)
        l1 = max(column_l1(P, j) for j in range(m + k))
        sup, linf = norms(P)
        assert gr[n] >= l1 >= sup
        assert sup <= linf <= (m + k) * sup
