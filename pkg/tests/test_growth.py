from __future__ import annotations

from fractions import Fraction

import pytest

from gmk.family import ParameterError, compose, iterate, make_phi
from gmk.growth import (
    S_word,
    T_word,
    closed_form_length,
    estimate_degree,
    growth_table,
    phi_n_A_prefix,
    recurrence_iterate_B,
    upper_bound_g,
    upper_bound_g_inv,
)
from gmk.words import Word, free_alphabet, invert


def test_growth_table_examples():
    t = growth_table(make_phi(2, 2), 3)
    assert t.lengths["B2"][3] == 19
    assert growth_table(make_phi(2, 2), 0).gr == [1]
    assert growth_table(make_phi(1, 1).inverse(), 7).lengths["B1"][7] == 8


def test_growth_table_invariants():
    t = growth_table(make_phi(3, 3), 8)
    assert all(col[0] == 1 for col in t.lengths.values())
    assert t.gr == [max(col[n] for col in t.lengths.values()) for n in range(9)]
    assert t.monotone


@pytest.mark.parametrize("sym, m, n, want", [("A3", 3, 5, 21), ("B1", 4, 6, 25), ("B2", 2, 2, 11)])
def test_closed_form_examples(sym, m, n, want):
    assert closed_form_length(sym, m, n) == want


def test_closed_form_unsupported():
    with pytest.raises(ParameterError):
        closed_form_length("B3", 3, 2)
    with pytest.raises(ParameterError):
        closed_form_length("B2", 2, 2, inverse=True)


def test_b2_closed_form_odd_m_integral():
    # m odd: m n (n+1) / 2 is still an integer, checked against iteration
    t = growth_table(make_phi(3, 2), 9)
    assert t.lengths["B2"] == [closed_form_length("B2", 3, n) for n in range(10)]


def test_recurrence_examples():
    al = free_alphabet(2, 2)
    assert recurrence_iterate_B(2, 1, 1, rank=4) == al.parse("A1 A2 B1 B2 A1^-1")
    w = recurrence_iterate_B(2, 1, 2, rank=4)
    assert len(w) == 11 and w == iterate(make_phi(2, 2), al.gen("B2"), 2)
    assert recurrence_iterate_B(3, 2, 2, rank=6) == iterate(make_phi(3, 3), free_alphabet(3, 3).gen("B3"), 2)


def test_recurrence_bounds():
    with pytest.raises(ParameterError):
        recurrence_iterate_B(2, 2, 1)
    with pytest.raises(ParameterError):
        recurrence_iterate_B(3, 1, 0)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_prefix_closed_form(m):
    al = free_alphabet(m, m)
    prefix = al.parse(" ".join(f"A{i}" for i in range(1, m + 1)))
    for n in range(0, 8):
        assert iterate(make_phi(m, m), prefix, n) == phi_n_A_prefix(m, n, 2 * m)


def test_upper_bound_examples():
    for n in range(10):
        assert upper_bound_g(3, 1, n) == 3 * n + 1
    assert upper_bound_g(2, 2, 3) == 19
    f = len(iterate(make_phi(3, 3), Word.generator(5, 6), 2))
    assert upper_bound_g(3, 3, 2) >= f
    with pytest.raises(ParameterError):
        upper_bound_g(2, 3, 1)


def test_upper_bound_inv_examples():
    for k in range(1, 5):
        for i in range(5):
            assert upper_bound_g_inv(4, k, i, 0) == (k - 1) * i + 1
    assert upper_bound_g_inv(2, 1, 5, 9) == 19
    for n in range(10):
        assert upper_bound_g_inv(2, 2, 0, n + 1) - upper_bound_g_inv(2, 2, 0, n) == (2 * n + 1) + 1


@pytest.mark.parametrize("m", [2, 3, 4])
def test_inverse_on_T_words_shifts_by_one(m):
    # phi^-1(T_{k,i}) = T_{k-1,1}^-1 T_{k,i+1}, checked against iteration
    inv = make_phi(m, m).inverse()
    r = 2 * m
    for k in range(2, m + 1):
        for i in range(5):
            lhs = iterate(inv, T_word(m, k, i, r), 1)
            assert lhs == invert(T_word(m, k - 1, 1, r)) * T_word(m, k, i + 1, r)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_inverse_on_S_words(m):
    inv = make_phi(m, m).inverse()
    r = 2 * m
    for i in range(6):
        assert iterate(inv, S_word(m, i, r) * T_word(m, 1, 1, r), 1) == S_word(m, i + 1, r) * T_word(m, 1, 1, r)


def test_estimate_degree_exact_power():
    assert abs(estimate_degree([n * n for n in range(1, 17)], start=1) - 2) <= Fraction(1, 10)


def test_estimate_degree_tables():
    assert abs(estimate_degree(growth_table(make_phi(2, 2), 16).gr) - 2) <= Fraction(35, 100)
    assert abs(estimate_degree(growth_table(make_phi(3, 2).inverse(), 16).gr) - 2) <= Fraction(35, 100)


def test_estimate_degree_power_invariance():
    for m, k in [(2, 2), (3, 2)]:
        e = make_phi(m, k)
        a = estimate_degree(growth_table(e, 16).gr)
        b = estimate_degree(growth_table(compose(e, e), 16).gr)
        assert abs(a - b) <= Fraction(1, 2)


def test_estimate_degree_errors():
    with pytest.raises(ValueError):
        estimate_degree([1, 2, 3])
    with pytest.raises(ValueError):
        estimate_degree([1] * 8 + [0] * 4)


def test_estimate_degree_is_two_decimal_rational():
    d = estimate_degree([n**3 + 7 for n in range(0, 17)])
    assert d.denominator in (1, 2, 4, 5, 10, 20, 25, 50, 100)
