import random

import pytest

from wdp import multivec as mv


def test_stats_basics():
    assert mv.stats(mv.e(1)) == (1, 1, 1, 1)
    assert mv.stats(mv.from_pairs([(1, 2), (3, 1)])) == (3, 5, 3, 2)
    assert mv.stats(mv.e(2, 4)) == (4, 8, 16, 24)


def test_stats_additive():
    rng = random.Random(0)
    for _ in range(200):
        u = mv.from_pairs((rng.randint(1, 9), rng.randint(0, 3))
                          for _ in range(3))
        v = mv.from_pairs((rng.randint(1, 9), rng.randint(0, 3))
                          for _ in range(3))
        s = mv.add(u, v)
        assert mv.norm(s) == mv.norm(u) + mv.norm(v)
        assert mv.iweight(s) == mv.iweight(u) + mv.iweight(v)
        assert mv.ipow(s) == mv.ipow(u) * mv.ipow(v)


def test_multinomial():
    assert mv.multinomial(mv.e(1, 2), [mv.e(1)]) == 2
    assert mv.multinomial(mv.e(2, 3), [mv.e(2), mv.e(2)]) == 6
    assert mv.multinomial(mv.add(mv.e(1), mv.e(2)), []) == 1
    with pytest.raises(ValueError):
        mv.multinomial(mv.e(1), [mv.e(1, 2)])


def test_multinomial_permutation_invariant():
    rng = random.Random(1)
    for _ in range(50):
        top = mv.from_pairs((i, rng.randint(0, 2)) for i in (1, 2, 3))
        parts = []
        budget = top
        for _ in range(rng.randint(0, 3)):
            sub = mv.from_pairs((i, rng.randint(0, m))
                                for i, m in budget)
            if mv.leq(sub, budget):
                parts.append(sub)
                budget = mv.sub(budget, sub)
        ref = mv.multinomial(top, parts)
        rng.shuffle(parts)
        assert mv.multinomial(top, parts) == ref


def test_parity_class():
    assert mv.parity_class(mv.add(mv.e(1), mv.e(3, 3))) == "odd_support"
    assert mv.parity_class(mv.add(mv.e(2), mv.e(6))) == "odd_even_support"
    assert mv.parity_class(mv.e(4)) == "even_support"
    assert mv.parity_class(mv.add(mv.e(1), mv.e(2))) == "mixed"


def test_text_roundtrip():
    rng = random.Random(2)
    for _ in range(100):
        v = mv.from_pairs((rng.randint(1, 12), rng.randint(0, 4))
                          for _ in range(4))
        assert mv.parse_mv(mv.format_mv(v)) == v
    assert mv.format_mv(mv.ZERO) == "0"
    assert mv.parse_mv("0") == mv.ZERO
    with pytest.raises(ValueError):
        mv.parse_mv("2:1,1:1")


def test_sub_and_leq():
    u = mv.from_pairs([(1, 2), (4, 1)])
    v = mv.e(1)
    assert mv.sub(u, v) == mv.from_pairs([(1, 1), (4, 1)])
    assert mv.leq(v, u)
    assert not mv.leq(u, v)
    with pytest.raises(ValueError):
        mv.sub(v, u)
