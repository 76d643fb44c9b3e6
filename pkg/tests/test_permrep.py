from __future__ import annotations

import random

import pytest

from gmk.family import presentation
from gmk.permrep import act_word, build_action, flip, from_bits, swap, to_bits, verify_action, word_permutation
from gmk.words import AlphabetError, Word, reduce


def test_bits_roundtrip():
    assert to_bits(from_bits("00010"), 5) == "00010"
    assert from_bits("10000") == 1
    with pytest.raises(ValueError):
        from_bits("012")


def test_stage_zero_flip():
    a = build_action(2)
    assert to_bits(a.tables[0][from_bits("00000")], 5) == "10000"


def test_last_generator_flips_everywhere():
    a = build_action(2)
    assert all(a.tables[4][v] == flip(v, 5) for v in range(32))


def test_hand_evaluated_stage_one():
    # on H*_3 (coordinate 4 set) a1 is conjugated by swap(1,3) then flip(4)
    a = build_action(2)
    v = from_bits("00010")
    by_hand = flip(swap(flip(swap(flip(v, 4), 1, 3), 1), 1, 3), 4)
    assert to_bits(by_hand, 5) == "00110"
    assert a.tables[0][v] == by_hand


def test_act_word_examples():
    a = build_action(2)
    assert act_word(a, 7, Word.identity(5)) == 7
    assert act_word(a, 0, reduce([1, 1], 5)) == 0
    with pytest.raises(AlphabetError):
        act_word(a, 0, Word.identity(3))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_relators_act_trivially(m):
    a = build_action(m)
    for r in presentation(m, m).relators:
        assert word_permutation(a, r) == list(range(a.n_points))


def test_right_action_law():
    a = build_action(3)
    rng = random.Random(3)
    for _ in range(200):
        g = reduce([rng.choice([1, -1]) * rng.randint(1, 7) for _ in range(rng.randint(0, 8))], 7)
        h = reduce([rng.choice([1, -1]) * rng.randint(1, 7) for _ in range(rng.randint(0, 8))], 7)
        v = rng.randrange(a.n_points)
        assert act_word(a, v, g * h) == act_word(a, act_word(a, v, g), h)


@pytest.mark.parametrize("m", [1, 2, 5])
def test_verify_action_passes(m):
    rep = verify_action(build_action(m), presentation(m, m))
    assert rep.ok, rep.failures
    assert rep.points == 2 ** (2 * m + 1)
    assert len(rep.staged_transitivity) == m + 1


def test_verify_detects_broken_table():
    a = build_action(2)
    t = a.tables[0]
    t[0], t[1] = t[1], t[0]  # no longer an involution on these points
    rep = verify_action(a, presentation(2, 2))
    assert not rep.ok and rep.failures


def test_cycle_notation():
    a = build_action(1)
    assert a.cycles(2) == "(000 001)(100 101)(010 011)(110 111)"
