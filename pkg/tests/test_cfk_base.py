from collections import Counter

import pytest

from branched_hfk.algebra import LaurentPoly
from branched_hfk.cfk_base import (
    alexander_polynomial,
    alexander_polynomial_fox,
    base_generators,
    determinant_check,
    epsilon_walk,
    hfk_hat_base,
)
from branched_hfk.twobridge import coprime_pairs, normalize, signature

FIG = LaurentPoly({-1: 4, 0: -7, 1: 4})


@pytest.mark.parametrize("pq", [(15, 7), (15, 4)])
def test_fifteen_levels(pq):
    gens = base_generators(normalize(*pq))
    assert Counter(g.alexander for g in gens) == {-1: 4, 0: 7, 1: 4}
    assert alexander_polynomial(normalize(*pq)) == FIG


def test_unknot():
    (g,) = base_generators(normalize(1, 1))
    assert (g.alexander, g.sign, g.maslov) == (0, 1, 0)
    assert alexander_polynomial(normalize(1, 1)) == LaurentPoly({0: 1})
    assert hfk_hat_base(normalize(1, 1)).ranks == {(0, 0): 1}


def test_trefoil():
    k = normalize(3, 1)
    assert alexander_polynomial(k) == LaurentPoly({-1: 1, 0: -1, 1: 1})
    assert alexander_polynomial_fox(k) == alexander_polynomial(k)
    # right-handed trefoil: top generator sits in Maslov grading 0
    assert hfk_hat_base(k).ranks == {(-1, -2): 1, (0, -1): 1, (1, 0): 1}


def test_figure_eight():
    k = normalize(5, 3)
    assert alexander_polynomial(k) == LaurentPoly({-1: -1, 0: 3, 1: -1})
    assert hfk_hat_base(k).ranks == {(-1, -1): 1, (0, 0): 3, (1, 1): 1}


def test_fifteen_hfk():
    assert hfk_hat_base(normalize(15, 7)).levels() == {-1: 4, 0: 7, 1: 4}


@pytest.mark.parametrize("pq,det", [((15, 7), 15), ((3, 1), 3), ((1, 1), 1)])
def test_determinant(pq, det):
    assert determinant_check(normalize(*pq)) == det


def test_properties_sweep():
    for p, q in coprime_pairs(199):
        k = normalize(p, q)
        delta = alexander_polynomial(k)
        assert delta == delta.mirror()
        assert delta(1) == 1
        assert abs(delta(-1)) == p
        assert delta.abs_coefficient_sum() == p
        assert delta == alexander_polynomial_fox(k)


def test_generator_structure():
    for p, q in coprime_pairs(99):
        k = normalize(p, q)
        sigma = signature(k)
        gens = base_generators(k, sigma)
        assert sum(g.sign for g in gens) == 1
        for a, b in zip(gens, gens[1:]):
            assert abs(a.alexander - b.alexander) == 1 and a.sign == -b.sign
        levels = Counter(g.alexander for g in gens)
        assert all(levels[a] == levels[-a] for a in levels)
        # same-level generators share a Maslov grading and its parity matches the sign
        for g in gens:
            assert g.maslov == g.alexander + sigma // 2
            assert (-1) ** (g.maslov % 2) == g.sign
        ranks = hfk_hat_base(k)
        assert ranks.total == p
        assert ranks.euler() == alexander_polynomial(k)


def test_walk():
    assert epsilon_walk(normalize(3, 1)) == [0, 1, 2]
    assert epsilon_walk(normalize(5, 3)) == [0, 1, 0, -1, 0]
