import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from branched_hfk.algebra import (
    CycloPoly,
    CyclotomicInteger,
    FiniteAbelianGroup,
    GroupAlgebraElem,
    LaurentPoly,
    cyclotomic_eval,
    cyclotomic_polynomial,
    determinant,
    mat_mul,
    normalize_alexander,
    smith_normal_form,
    symmetric_signature,
)
from branched_hfk.errors import NotSymmetrizable, NotUnit

laurent = st.dictionaries(st.integers(-4, 4), st.integers(-6, 6), max_size=5).map(LaurentPoly)
small_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def group_elem(group):
    labels = st.tuples(*(st.integers(0, d - 1) for d in group.invariant_factors))
    return st.dictionaries(st.tuples(labels, st.integers(-2, 2)), st.integers(-4, 4), max_size=4).map(
        lambda c: GroupAlgebraElem(group, c)
    )


Z3 = FiniteAbelianGroup((3,))
Z2Z4 = FiniteAbelianGroup((2, 4))


class TestLaurentPoly:
    def test_no_zero_coefficients_stored(self):
        f = LaurentPoly({0: 0, 2: 3})
        assert f.coeffs == {2: 3}
        assert LaurentPoly() == 0 and not LaurentPoly({1: 0})

    def test_printing(self):
        assert str(LaurentPoly({-1: 4, 0: -7, 1: 4})) == "4T^-1 - 7 + 4T"
        assert str(LaurentPoly({-1: -1, 0: 3, 1: -1})) == "-T^-1 + 3 - T"
        assert str(LaurentPoly()) == "0"

    def test_exact_evaluation(self):
        f = LaurentPoly({-1: 1, 0: -1, 1: 1})
        assert f(1) == 1 and f(-1) == -3
        assert f(2) == Fraction(3, 2)

    @given(laurent, laurent, laurent)
    def test_ring_laws(self, f, g, h):
        assert f + g == g + f
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f - f == 0

    @given(laurent, st.integers(-3, 3))
    def test_shift_mirror(self, f, k):
        assert f.shift(k).shift(-k) == f
        assert f.mirror().mirror() == f
        assert f.shift(k) == f * LaurentPoly.monomial(1, k)


class TestNormalizeAlexander:
    def test_examples(self):
        assert normalize_alexander(LaurentPoly({0: 4, 1: -7, 2: 4})) == LaurentPoly({-1: 4, 0: -7, 1: 4})
        assert normalize_alexander(LaurentPoly({0: 1})) == LaurentPoly({0: 1})
        assert normalize_alexander(LaurentPoly({2: 1, 3: -1, 4: 1})) == LaurentPoly({-1: 1, 0: -1, 1: 1})

    def test_sign_fix(self):
        assert normalize_alexander(LaurentPoly({5: -1, 6: 1, 7: -1})) == LaurentPoly({-1: 1, 0: -1, 1: 1})

    def test_errors(self):
        with pytest.raises(NotSymmetrizable):
            normalize_alexander(LaurentPoly({0: 1, 1: 2}))
        with pytest.raises(NotSymmetrizable):
            normalize_alexander(LaurentPoly({0: 1, 1: 1}))  # needs a half-integral shift
        with pytest.raises(NotUnit):
            normalize_alexander(LaurentPoly({-1: 1, 0: 1, 1: 1}))
        with pytest.raises(NotSymmetrizable):
            normalize_alexander(LaurentPoly())

    @given(st.integers(-5, 5), st.sampled_from([1, -1]))
    def test_unit_invariance_and_idempotence(self, k, s):
        base = LaurentPoly({-1: 4, 0: -7, 1: 4})
        moved = (base * s).shift(k)
        assert normalize_alexander(moved) == base
        assert normalize_alexander(normalize_alexander(moved)) == base


class TestFiniteAbelianGroup:
    def test_validation(self):
        with pytest.raises(ValueError):
            FiniteAbelianGroup((2, 3))
        with pytest.raises(ValueError):
            FiniteAbelianGroup((1,))
        assert FiniteAbelianGroup().order == 1

    def test_from_diagonal(self):
        group, free, keep = FiniteAbelianGroup.from_diagonal([1, 3, 0])
        assert group.invariant_factors == (3,) and free == 1 and keep == [1]

    def test_arithmetic(self):
        assert Z2Z4.add((1, 3), (1, 2)) == (0, 1)
        assert Z2Z4.neg((1, 1)) == (1, 3)
        assert Z2Z4.element_order((1, 2)) == 2
        assert len(list(Z2Z4.elements())) == 8


class TestGroupAlgebra:
    @settings(max_examples=60)
    @given(group_elem(Z2Z4), group_elem(Z2Z4), group_elem(Z2Z4))
    def test_ring_laws(self, x, y, z):
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z

    @given(group_elem(Z3), group_elem(Z3))
    def test_augmentation_and_collapse_are_homomorphisms(self, x, y):
        assert (x * y).augmentation() == x.augmentation() * y.augmentation()
        assert (x * y).collapse() == x.collapse() * y.collapse()

    def test_components(self):
        x = GroupAlgebraElem(Z3, {((0,), 0): 1, ((0,), 1): -1, ((2,), 1): 1})
        assert x.components() == {(0,): LaurentPoly({0: 1, 1: -1}), (2,): LaurentPoly({1: 1})}

    def test_group_mismatch(self):
        with pytest.raises(ValueError):
            GroupAlgebraElem.monomial(Z3) + GroupAlgebraElem.monomial(Z2Z4)


class TestCyclotomic:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 12, 15, 30, 105])
    def test_cyclotomic_polynomial_matches_sympy(self, n):
        x = sympy.symbols("x")
        expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert list(cyclotomic_polynomial(n)) == expected

    @pytest.mark.parametrize("n", [3, 5, 8, 12, 15])
    def test_norm_matches_resultant(self, n):
        x = sympy.symbols("x")
        rng = random.Random(n)
        for _ in range(5):
            coeffs = [rng.randint(-3, 3) for _ in range(n)]
            elem = CyclotomicInteger(n, coeffs)
            f = sum(c * x**i for i, c in enumerate(coeffs))
            expected = sympy.resultant(sympy.cyclotomic_poly(n, x), f, x)
            assert elem.norm() == expected

    def test_galois_and_conjugate(self):
        z = CyclotomicInteger.root_power(5, 1)
        assert z.galois(2) == CyclotomicInteger.root_power(5, 2)
        assert z * z.conjugate() == 1
        assert sum((CyclotomicInteger.root_power(5, k) for k in range(1, 5)), CyclotomicInteger(5)) == -1

    def test_eval_trivial_character(self):
        x = GroupAlgebraElem(Z3, {((1,), 2): 3, ((2,), 2): -1, ((0,), 0): 5})
        out = cyclotomic_eval(x, (0,))
        assert out[2] == 2 and out[0] == 5

    def test_eval_monomial(self):
        x = GroupAlgebraElem.monomial(Z3, (1,), 1)
        assert cyclotomic_eval(x, (1,)) == CycloPoly(3, {1: CyclotomicInteger.root_power(3, 1)})

    @settings(max_examples=60)
    @given(group_elem(Z2Z4), group_elem(Z2Z4), st.tuples(st.integers(0, 1), st.integers(0, 3)))
    def test_eval_is_ring_homomorphism(self, x, y, chars):
        assert cyclotomic_eval(x * y, chars) == cyclotomic_eval(x, chars) * cyclotomic_eval(y, chars)
        assert cyclotomic_eval(x + y, chars) == cyclotomic_eval(x, chars) + cyclotomic_eval(y, chars)

    def test_norm_is_integral(self):
        z = CyclotomicInteger.root_power(3, 1)
        f = CycloPoly(3, {0: CyclotomicInteger.integer(3, 1), 1: z})
        assert f.norm() == LaurentPoly({0: 1, 1: -1, 2: 1})

    def test_divide_by_t_minus_one(self):
        f = CycloPoly.from_laurent(3, LaurentPoly({0: 1, 1: -2, 2: 1}))
        q, r = f.divide_by_t_minus_one()
        assert r.is_zero() and q == CycloPoly.from_laurent(3, LaurentPoly({0: -1, 1: 1}))


class TestSmithNormalForm:
    def test_examples(self):
        assert smith_normal_form([[2, 0], [0, 3]])[0] == [[1, 0], [0, 6]]
        assert smith_normal_form([[0]])[0] == [[0]]
        assert smith_normal_form([[3, 1], [1, 2]])[0] == [[1, 0], [0, 5]]

    @settings(max_examples=150)
    @given(small_matrix)
    def test_transforms_and_divisibility(self, m):
        d, u, v = smith_normal_form(m)
        assert mat_mul(mat_mul(u, m), v) == d
        assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
        diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
        for i in range(len(d)):
            for j in range(len(d[0])):
                if i != j:
                    assert d[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and (b % a == 0 if a else b == 0)
        if len(m) == len(m[0]):
            assert abs(determinant(m)) == abs(determinant(d))

    @given(small_matrix)
    def test_determinant_matches_sympy(self, m):
        if len(m) == len(m[0]):
            assert determinant(m) == sympy.Matrix(m).det()


class TestSymmetricSignature:
    @settings(max_examples=80)
    @given(st.integers(1, 5).flatmap(lambda n: st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n)))
    def test_matches_characteristic_polynomial(self, flat):
        n = int(round(len(flat) ** 0.5))
        a = [[flat[i * n + j] + flat[j * n + i] for j in range(n)] for i in range(n)]
        # all roots real: Descartes' rule counts positive and negative roots exactly
        lam = sympy.symbols("lam")
        poly = sympy.Poly(sympy.Matrix(a).charpoly(lam).as_expr(), lam)
        coeffs = [c for c in poly.all_coeffs()]

        def changes(cs):
            cs = [c for c in cs if c != 0]
            return sum(1 for x, y in zip(cs, cs[1:]) if x * y < 0)

        pos = changes(coeffs)
        neg = changes([c * (-1) ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs)])
        assert symmetric_signature(a) == pos - neg

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            symmetric_signature([[0, 1], [0, 0]])
