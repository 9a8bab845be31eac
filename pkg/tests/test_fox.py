from collections import Counter

import pytest
import sympy
from hypothesis import given, strategies as st

from branched_hfk.cfk_base import alexander_polynomial
from branched_hfk.errors import InfiniteH1, InvalidParameters
from branched_hfk.fox import (
    Presentation,
    Word,
    abelianize,
    fox_derivative,
    fox_images,
    lift_presentation,
    splitting_maps,
    two_bridge_presentation,
)
from branched_hfk.algebra import FiniteAbelianGroup
from branched_hfk.twobridge import coprime_pairs, normalize

words = st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=12).map(Word)


def fundamental_identity_holds(rel: Word, n_gens: int) -> bool:
    """sum_x (dR/dx)(x - 1) == R - 1 in the integral group ring of the free group."""
    lhs: Counter = Counter()
    for x in range(n_gens):
        for s in fox_derivative(rel, x):
            lhs[s.prefix * Word([(x, 1)])] += s.sign
            lhs[s.prefix] -= s.sign
    rhs = Counter({rel: 1})
    rhs[Word()] -= 1
    clean = lambda c: {k: v for k, v in c.items() if v}
    return clean(lhs) == clean(rhs)


class TestWord:
    def test_parse_and_print(self):
        w = Word.from_string("abaBAB")
        assert w.letters == ((0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1))
        assert w.to_string() == "abaBAB"

    def test_free_reduction(self):
        assert Word.from_string("abBA") == Word()
        assert Word.from_string("aAb").to_string() == "b"
        assert (Word.from_string("ab") * Word.from_string("Bc")).to_string() == "ac"

    @given(words)
    def test_inverse(self, w):
        assert w * w.inverse() == Word()
        assert all(not (x[0] == y[0] and x[1] == -y[1]) for x, y in zip(w.letters, w.letters[1:]))

    @given(words, words, words)
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)


class TestFoxDerivative:
    def test_leading_letter(self):
        (s,) = fox_derivative(Word.from_string("ab"), 0)
        assert s.sign == 1 and s.prefix == Word()

    def test_inverse_letter(self):
        (s,) = fox_derivative(Word.from_string("A"), 0)
        assert s.sign == -1 and s.prefix == Word.from_string("A")

    def test_trefoil(self):
        out = fox_derivative(Word.from_string("abaBAB"), 0)
        assert [(s.sign, s.prefix.to_string()) for s in out] == [(1, ""), (1, "ab"), (-1, "abaBA")]

    def test_other_generator(self):
        assert fox_derivative(Word.from_string("bb"), 0) == []

    @given(words)
    def test_fundamental_identity_random(self, w):
        assert fundamental_identity_holds(w, 3)

    @pytest.mark.parametrize("pq", [(3, 1), (5, 3), (15, 7), (15, 4), (21, 8)])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_fundamental_identity_constructed(self, pq, m):
        pres = lift_presentation(two_bridge_presentation(normalize(*pq)), m)
        for rel in pres.relators:
            assert fundamental_identity_holds(rel, pres.n_generators)

    def test_images_agree_with_explicit_prefixes(self):
        pres = lift_presentation(two_bridge_presentation(normalize(15, 7)), 2)
        maps = splitting_maps(pres)
        for rel in pres.relators:
            images = fox_images(rel, [0, 1], maps.rho, maps.epsilon, maps.h1_torsion)
            for col in (0, 1):
                explicit = [(s.sign, *maps.image(s.prefix)) for s in fox_derivative(rel, col)]
                assert [(im.sign, im.label, im.degree) for im in images[col]] == explicit


class TestTwoBridgePresentation:
    def test_trefoil(self):
        pres = two_bridge_presentation(normalize(3, 1))
        assert pres.relators[0].to_string() == "abaBAB"
        assert pres.generators[pres.meridian_index] == "b"

    def test_unknot(self):
        pres = two_bridge_presentation(normalize(1, 1))
        assert pres.relators[0].to_string() == "aB"

    def test_figure_eight(self):
        pres = two_bridge_presentation(normalize(5, 3))
        assert pres.relators[0].to_string().startswith("aBAb" + "a")

    def test_summand_count(self):
        for p, q in coprime_pairs(99):
            pres = two_bridge_presentation(normalize(p, q))
            assert len(fox_derivative(pres.relators[0], 0)) == p

    def test_text_round_trip(self):
        for pq in [(3, 1), (15, 4)]:
            for m in (1, 2, 3):
                pres = lift_presentation(two_bridge_presentation(normalize(*pq)), m)
                assert Presentation.from_text(pres.to_text()) == pres


class TestAbelianize:
    def test_trefoil_complement(self):
        ab = abelianize(two_bridge_presentation(normalize(3, 1)), kill_meridian=False)
        assert ab.free_rank == 1 and ab.group.order == 1

    def test_trefoil_covers(self):
        base = two_bridge_presentation(normalize(3, 1))
        two = abelianize(lift_presentation(base, 2), kill_meridian=True)
        assert two.group.invariant_factors == (3,) and two.free_rank == 0
        three = abelianize(lift_presentation(base, 3), kill_meridian=True)
        assert three.group.invariant_factors == (2, 2) and three.free_rank == 0

    def test_fifteen_complement(self):
        ab = abelianize(lift_presentation(two_bridge_presentation(normalize(15, 7)), 2))
        assert ab.free_rank == 1 and ab.group.invariant_factors == (15,)

    def test_cover_order_oracle(self):
        x = sympy.symbols("x")
        for p, q in coprime_pairs(49):
            knot = normalize(p, q)
            delta = alexander_polynomial(knot)
            f = sum(c * x ** (d - delta.min_degree) for d, c in delta.coeffs.items())
            base = two_bridge_presentation(knot)
            for m in (2, 3):
                expected = abs(sympy.resultant(x**m - 1, f, x))
                got = abelianize(lift_presentation(base, m), kill_meridian=True)
                assert got.free_rank == 0
                assert got.group.order == expected


class TestLift:
    def test_identity(self):
        base = two_bridge_presentation(normalize(3, 1))
        assert lift_presentation(base, 1) is base

    def test_trefoil_double(self):
        pres = lift_presentation(two_bridge_presentation(normalize(3, 1)), 2)
        assert pres.n_generators == 3 and len(pres.relators) == 2
        assert [r.to_string() for r in pres.relators] == ["acaB", "bbCAC"]

    def test_shapes(self):
        for m in (2, 3, 4):
            pres = lift_presentation(two_bridge_presentation(normalize(7, 3)), m)
            assert pres.n_generators == m + 1 and len(pres.relators) == m

    def test_invalid_degree(self):
        with pytest.raises(InvalidParameters):
            lift_presentation(two_bridge_presentation(normalize(3, 1)), 0)


class TestSplittingMaps:
    def test_base(self):
        maps = splitting_maps(two_bridge_presentation(normalize(3, 1)))
        assert maps.epsilon == (1, 1) and maps.h1_torsion.order == 1

    def test_trefoil_transfer(self):
        maps = splitting_maps(lift_presentation(two_bridge_presentation(normalize(3, 1)), 2))
        g = maps.h1_torsion
        assert g.invariant_factors == (3,)
        assert g.add(maps.rho[0], maps.rho[1]) == g.zero and maps.rho[0] != g.zero

    def test_kill_relators(self):
        for p, q in coprime_pairs(31):
            for m in (1, 2, 3):
                pres = lift_presentation(two_bridge_presentation(normalize(p, q)), m)
                maps = splitting_maps(pres)
                assert maps.epsilon[pres.meridian_index] == 1
                assert maps.rho[pres.meridian_index] == maps.h1_torsion.zero
                for r in pres.relators:
                    assert maps.image(r) == (maps.h1_torsion.zero, 0)

    def test_fifteen_seven(self):
        maps = splitting_maps(lift_presentation(two_bridge_presentation(normalize(15, 7)), 2))
        assert maps.h1_torsion == FiniteAbelianGroup((15,))
        assert set(maps.epsilon) <= {0, 1} and maps.epsilon[-1] == 1

    def test_infinite_h1(self):
        # 6-fold cover of the trefoil: Delta vanishes at primitive 6th roots of unity
        with pytest.raises(InfiniteH1):
            splitting_maps(lift_presentation(two_bridge_presentation(normalize(3, 1)), 6))
