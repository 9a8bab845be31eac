from math import gcd

import pytest
from hypothesis import given, strategies as st

from branched_hfk.algebra import symmetric_signature
from branched_hfk.errors import InvalidParameters
from branched_hfk.twobridge import (
    continued_fraction,
    coprime_pairs,
    epsilon_sequence,
    even_continued_fraction,
    from_twists,
    linking_matrix,
    normalize,
    schubert_pairing,
    signature,
)

P, M = 1, -1

coprime = st.integers(1, 499).map(lambda k: 2 * k + 1).flatmap(
    lambda p: st.integers(-5 * p, 5 * p).filter(lambda q: gcd(p, q) == 1).map(lambda q: (p, q))
)


class TestNormalize:
    @pytest.mark.parametrize("p,q,q_star", [(15, 4, 19), (15, 7, 7), (3, 1, 1), (1, 1, 1), (5, -2, 3)])
    def test_q_star(self, p, q, q_star):
        assert normalize(p, q).q_star == q_star

    @pytest.mark.parametrize("p,q", [(4, 1), (0, 1), (-3, 1), (15, 5), (9, 3)])
    def test_invalid(self, p, q):
        with pytest.raises(InvalidParameters):
            normalize(p, q)

    @given(coprime, st.integers(-4, 4))
    def test_depends_on_q_mod_p_only(self, pq, k):
        p, q = pq
        a, b = normalize(p, q), normalize(p, q + k * p)
        assert a.q_star == b.q_star and a.epsilon == b.epsilon
        assert a.q_star % 2 == 1 and 0 < a.q_star < 2 * p
        assert (a.q_star - q) % p == 0

    def test_unknot(self):
        k = normalize(1, 7)
        assert k.is_unknot and k.epsilon == ()


class TestEpsilon:
    def test_examples(self):
        assert epsilon_sequence(normalize(15, 7)) == [P, P, M, M, P, P, M, M, P, P, M, M, P, P]
        assert epsilon_sequence(normalize(3, 1)) == [P, P]
        assert epsilon_sequence(normalize(15, 4)) == [M, P, M, M, P, M, P, P, M, P, M, M, P, M]

    @given(coprime)
    def test_length_and_steps(self, pq):
        eps = normalize(*pq).epsilon
        assert len(eps) == pq[0] - 1
        assert all(e in (1, -1) for e in eps)

    @given(coprime)
    def test_palindromic(self, pq):
        # floor(i q/p) + floor((p - i) q/p) = q - 1 for odd q makes the sequence a palindrome
        eps = normalize(*pq).epsilon
        assert eps == eps[::-1]


class TestSchubert:
    def test_examples(self):
        assert schubert_pairing(3, 1) == {0: 5, 1: 0, 2: 1, 3: 2, 4: 3, 5: 4}
        assert schubert_pairing(15, 4)[0] == 26
        assert schubert_pairing(5, 0) == {i: i for i in range(10)}

    @given(coprime)
    def test_bijection(self, pq):
        pairing = schubert_pairing(*pq)
        assert sorted(pairing.values()) == list(range(2 * pq[0]))


class TestContinuedFractions:
    @pytest.mark.parametrize("p,q,cf", [(3, 1, [3]), (15, 7, [2, 7]), (15, 4, [3, 1, 3])])
    def test_examples(self, p, q, cf):
        assert continued_fraction(p, q) == cf
        assert from_twists(cf) == (p, q)

    def test_round_trip_exhaustive(self):
        for p in range(2, 1000):
            for q in range(1, p):
                if gcd(p, q) == 1:
                    cf = continued_fraction(p, q)
                    assert cf[-1] >= 2 and all(c >= 1 for c in cf)
                    assert from_twists(cf) == (p, q)

    def test_errors(self):
        with pytest.raises(InvalidParameters):
            continued_fraction(3, 3)
        with pytest.raises(InvalidParameters):
            from_twists([])
        with pytest.raises(InvalidParameters):
            from_twists([1, 0])

    def test_even_expansion(self):
        assert even_continued_fraction(15, 4) == [4, 4]
        assert even_continued_fraction(3, -2) == [-2, -2]
        assert even_continued_fraction(5, -2) == [-2, 2]


class TestSignature:
    def test_examples(self):
        assert signature(normalize(1, 1)) == 0
        assert signature(normalize(3, 1)) == -2
        assert signature(normalize(3, 2)) == 2
        assert signature(normalize(5, 3)) == 0

    def test_fifteen_pair(self):
        # same absolute value; the sign differs because K(15,4) matches the mirror of K(15,7)
        s7, s4 = signature(normalize(15, 7)), signature(normalize(15, 4))
        assert abs(s7) == abs(s4) == 2
        assert signature(normalize(15, 8)) == s4

    def test_matrix_oracle(self):
        for p, q in coprime_pairs(99):
            k = normalize(p, q)
            assert signature(k) == symmetric_signature(linking_matrix(k))

    def test_sign_sum_oracle(self):
        for p, q in coprime_pairs(199):
            k = normalize(p, q)
            s = signature(k)
            assert s == -sum(k.epsilon)
            assert s % 2 == 0

    @given(coprime)
    def test_mirror_negates(self, pq):
        p, q = pq
        assert signature(normalize(p, -q)) == -signature(normalize(p, q))
