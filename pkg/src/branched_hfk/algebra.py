"""Exact arithmetic: Laurent polynomials, group rings, cyclotomic integers.

Everything here works over Python integers (and ``Fraction`` where a
rational intermediate is unavoidable).  Nothing in this module ever touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotSymmetrizable, NotUnit

IntMatrix = list[list[int]]

__all__ = [
    "LaurentPoly",
    "FiniteAbelianGroup",
    "GroupAlgebraElem",
    "CyclotomicInteger",
    "CycloPoly",
    "IntMatrix",
    "normalize_alexander",
    "cyclotomic_eval",
    "cyclotomic_polynomial",
    "smith_normal_form",
    "mat_mul",
    "identity_matrix",
    "determinant",
    "symmetric_signature",
]


def _term_str(coeff, degree: int, var: str = "T") -> str:
    if degree == 0:
        return str(coeff)
    mono = var if degree == 1 else f"{var}^{degree}"
    if coeff == 1:
        return mono
    if coeff == -1:
        return "-" + mono
    return f"{coeff}{mono}"


class LaurentPoly:
    """An element of Z[T, T^-1], stored as a sparse degree -> coefficient map."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for d, v in coeffs.items():
                if v:
                    c[int(d)] = int(v)
        self._c = c
        self._hash = None

    @classmethod
    def monomial(cls, coeff: int = 1, degree: int = 0) -> "LaurentPoly":
        return cls({degree: coeff})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]]) -> "LaurentPoly":
        """Sum of ``coeff * T**degree`` over ``(degree, coeff)`` pairs."""
        c: dict[int, int] = {}
        for d, v in terms:
            c[d] = c.get(d, 0) + v
        return cls(c)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, degree: int) -> int:
        return self._c.get(degree, 0)

    def degrees(self) -> list[int]:
        return sorted(self._c)

    @property
    def min_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    @property
    def max_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.monomial(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for d, v in other._c.items():
            c[d] = c.get(d, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({d: -v for d, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({d: v * other for d, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict[int, int] = {}
        for d1, v1 in self._c.items():
            for d2, v2 in other._c.items():
                c[d1 + d2] = c.get(d1 + d2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __call__(self, value):
        """Evaluate exactly; negative powers of non-unit integers give a Fraction."""
        total = 0
        for d, v in self._c.items():
            if d >= 0:
                total += v * value**d
            elif value in (1, -1):
                total += v * value ** (-d)
            else:
                total += v * Fraction(1, value ** (-d))
        return total

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by T**k."""
        return LaurentPoly({d + k: v for d, v in self._c.items()})

    def mirror(self) -> "LaurentPoly":
        """Substitute T -> T^-1."""
        return LaurentPoly({-d: v for d, v in self._c.items()})

    def is_symmetric(self) -> bool:
        return self == self.mirror()

    def abs_coefficient_sum(self) -> int:
        return sum(abs(v) for v in self._c.values())

    def coefficient_list(self) -> list[int]:
        """Dense coefficients from the lowest to the highest degree."""
        if not self._c:
            return []
        lo, hi = self.min_degree, self.max_degree
        return [self._c.get(d, 0) for d in range(lo, hi + 1)]

    def to_json(self) -> dict[str, int]:
        return {str(d): self._c[d] for d in sorted(self._c)}

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self._c.items()))!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = ""
        for d in sorted(self._c):
            t = _term_str(self._c[d], d)
            if not out:
                out = t
            elif t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out


T = LaurentPoly.monomial(1, 1)


def normalize_alexander(f: LaurentPoly) -> LaurentPoly:
    """Return the symmetric representative ``±T^k f`` with value +1 at T = 1.

    Raises ``NotSymmetrizable`` when no integral shift makes ``f``
    palindromic and ``NotUnit`` when ``f(1)`` is not a unit.
    """
    if f.is_zero():
        raise NotSymmetrizable("zero polynomial")
    coeffs = f.coefficient_list()
    if coeffs != coeffs[::-1]:
        raise NotSymmetrizable(f"{f} is not palindromic after any shift")
    span = f.min_degree + f.max_degree
    if span % 2:
        raise NotSymmetrizable(f"{f} needs a half-integral shift")
    g = f.shift(-span // 2)
    value = g(1)
    if value == 1:
        return g
    if value == -1:
        return -g
    raise NotUnit(f"{f} evaluates to {value} at T = 1")


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk`` and every ``di >= 2``."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for d in fs:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"invariant factors {fs} fail divisibility")

    @classmethod
    def from_diagonal(cls, diagonal: Sequence[int]) -> tuple["FiniteAbelianGroup", int, list[int]]:
        """Split a Smith diagonal into torsion, free rank and torsion positions.

        Units (``|d| == 1``) are dropped; zeros count towards the free rank.
        """
        torsion, keep, free = [], [], 0
        for i, d in enumerate(diagonal):
            d = abs(d)
            if d == 0:
                free += 1
            elif d > 1:
                torsion.append(d)
                keep.append(i)
        return cls(tuple(torsion)), free, keep

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def reduce(self, element: Iterable[int]) -> tuple[int, ...]:
        element = tuple(element)
        if len(element) != len(self.invariant_factors):
            raise ValueError(f"element {element} has wrong length for {self}")
        return tuple(c % d for c, d in zip(element, self.invariant_factors))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors))

    def sub(self, x, y) -> tuple[int, ...]:
        return tuple((a - b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def scale(self, k: int, x) -> tuple[int, ...]:
        return tuple((k * a) % d for a, d in zip(x, self.invariant_factors))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return product(*(range(d) for d in self.invariant_factors))

    def element_order(self, x) -> int:
        o = 1
        for a, d in zip(x, self.invariant_factors):
            k = d // gcd(a, d)
            o = o * k // gcd(o, k)
        return o

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


Label = tuple[int, ...]


class GroupAlgebraElem:
    """An element of Z[A][T, T^-1] for a finite abelian group ``A``.

    Keys are ``(label, degree)`` with ``label`` a reduced residue tuple.
    """

    __slots__ = ("group", "_c")

    def __init__(self, group: FiniteAbelianGroup, coeffs: Mapping[tuple[Label, int], int] | None = None):
        self.group = group
        c: dict[tuple[Label, int], int] = {}
        if coeffs:
            for (label, deg), v in coeffs.items():
                if v:
                    key = (group.reduce(label), int(deg))
                    c[key] = c.get(key, 0) + int(v)
            c = {k: v for k, v in c.items() if v}
        self._c = c

    @classmethod
    def monomial(cls, group: FiniteAbelianGroup, label=None, degree: int = 0, coeff: int = 1):
        label = group.zero if label is None else label
        return cls(group, {(tuple(label), degree): coeff})

    @classmethod
    def zero(cls, group: FiniteAbelianGroup) -> "GroupAlgebraElem":
        return cls(group)

    @property
    def coeffs(self) -> dict[tuple[Label, int], int]:
        return dict(self._c)

    def _check(self, other: "GroupAlgebraElem"):
        if other.group != self.group:
            raise ValueError(f"group mismatch: {self.group} vs {other.group}")

    def __add__(self, other):
        if not isinstance(other, GroupAlgebraElem):
            return NotImplemented
        self._check(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return GroupAlgebraElem(self.group, c)

    def __neg__(self):
        return GroupAlgebraElem(self.group, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupAlgebraElem):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupAlgebraElem(self.group, {k: v * other for k, v in self._c.items()})
        if not isinstance(other, GroupAlgebraElem):
            return NotImplemented
        self._check(other)
        add = self.group.add
        c: dict[tuple[Label, int], int] = {}
        for (l1, d1), v1 in self._c.items():
            for (l2, d2), v2 in other._c.items():
                key = (add(l1, l2), d1 + d2)
                c[key] = c.get(key, 0) + v1 * v2
        return GroupAlgebraElem(self.group, c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElem):
            return NotImplemented
        return self.group == other.group and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.group, frozenset(self._c.items())))

    def __bool__(self) -> bool:
        return bool(self._c)

    def translate(self, label) -> "GroupAlgebraElem":
        """Multiply by the group element ``label``."""
        add = self.group.add
        return GroupAlgebraElem(self.group, {(add(l, label), d): v for (l, d), v in self._c.items()})

    def shift(self, k: int) -> "GroupAlgebraElem":
        return GroupAlgebraElem(self.group, {(l, d + k): v for (l, d), v in self._c.items()})

    def components(self) -> dict[Label, LaurentPoly]:
        """Split into ``{label: p_label(T)}``."""
        parts: dict[Label, dict[int, int]] = {}
        for (l, d), v in self._c.items():
            parts.setdefault(l, {})[d] = v
        return {l: LaurentPoly(c) for l, c in sorted(parts.items())}

    def collapse(self) -> LaurentPoly:
        """Image under the trivial character (every group element -> 1)."""
        return LaurentPoly.from_terms((d, v) for (_, d), v in self._c.items())

    def augmentation(self) -> int:
        return sum(self._c.values())

    def __repr__(self) -> str:
        return f"GroupAlgebraElem({self.group}, {dict(sorted(self._c.items()))!r})"


# -- cyclotomic integers -----------------------------------------------------


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_monic(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    num = list(num)
    dn = len(den) - 1
    if len(num) <= dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j, dc in enumerate(den):
                num[i - dn + j] -= c * dc
    return quot, num[:dn]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod_monic(num, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(num)


def _units(n: int) -> list[int]:
    return [u for u in range(1, n + 1) if gcd(u, n) == 1] if n > 1 else [1]


class CyclotomicInteger:
    """An element of Z[zeta_n], held as a polynomial reduced modulo Phi_n."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[int] = ()):
        phi = cyclotomic_polynomial(n)
        deg = len(phi) - 1
        coeffs = list(coeffs)
        if len(coeffs) > deg:
            _, coeffs = _poly_divmod_monic(coeffs, phi)
        coeffs = coeffs + [0] * (deg - len(coeffs))
        self.n = n
        self.coeffs = tuple(coeffs)

    @classmethod
    def root_power(cls, n: int, k: int, coeff: int = 1) -> "CyclotomicInteger":
        k %= n
        return cls(n, [0] * k + [coeff])

    @classmethod
    def integer(cls, n: int, value: int) -> "CyclotomicInteger":
        return cls(n, [value])

    def _check(self, other):
        if other.n != self.n:
            raise ValueError(f"conductor mismatch {self.n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CyclotomicInteger.integer(self.n, other)
        self._check(other)
        return CyclotomicInteger(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInteger(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.n, [a * other for a in self.coeffs])
        self._check(other)
        return CyclotomicInteger(self.n, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CyclotomicInteger.integer(self.n, other)
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def galois(self, u: int) -> "CyclotomicInteger":
        """Apply the automorphism zeta -> zeta**u (``u`` coprime to n)."""
        if gcd(u, self.n) != 1:
            raise ValueError(f"{u} is not a unit mod {self.n}")
        out = [0] * self.n
        for i, a in enumerate(self.coeffs):
            out[(i * u) % self.n] += a
        return CyclotomicInteger(self.n, out)

    def conjugate(self) -> "CyclotomicInteger":
        return self.galois(-1 % self.n if self.n > 1 else 1)

    def norm(self) -> int:
        """Field norm to Q, computed as det of the multiplication map."""
        deg = len(self.coeffs)
        cols = []
        for i in range(deg):
            cols.append((self * CyclotomicInteger.root_power(self.n, i)).coeffs)
        return determinant([list(r) for r in zip(*cols)])

    def __repr__(self) -> str:
        return f"CyclotomicInteger({self.n}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                terms.append(_term_str(a, i, "z"))
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


class CycloPoly:
    """A Laurent polynomial in T with coefficients in Z[zeta_n]."""

    __slots__ = ("n", "_c")

    def __init__(self, n: int, coeffs: Mapping[int, CyclotomicInteger] | None = None):
        self.n = n
        c = {}
        if coeffs:
            for d, v in coeffs.items():
                if v.n != n:
                    raise ValueError("coefficient conductor mismatch")
                if not v.is_zero():
                    c[int(d)] = v
        self._c = c

    @classmethod
    def from_laurent(cls, n: int, f: LaurentPoly) -> "CycloPoly":
        return cls(n, {d: CyclotomicInteger.integer(n, v) for d, v in f.coeffs.items()})

    @property
    def coeffs(self) -> dict[int, CyclotomicInteger]:
        return dict(self._c)

    def __getitem__(self, degree: int) -> CyclotomicInteger:
        return self._c.get(degree, CyclotomicInteger(self.n))

    def __add__(self, other):
        if other.n != self.n:
            raise ValueError("conductor mismatch")
        c = dict(self._c)
        for d, v in other._c.items():
            c[d] = c[d] + v if d in c else v
        return CycloPoly(self.n, c)

    def __neg__(self):
        return CycloPoly(self.n, {d: -v for d, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloPoly(self.n, {d: v * other for d, v in self._c.items()})
        if other.n != self.n:
            raise ValueError("conductor mismatch")
        c: dict[int, CyclotomicInteger] = {}
        for d1, v1 in self._c.items():
            for d2, v2 in other._c.items():
                k = d1 + d2
                c[k] = c[k] + v1 * v2 if k in c else v1 * v2
        return CycloPoly(self.n, c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloPoly):
            return NotImplemented
        return self.n == other.n and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._c.items())))

    def is_zero(self) -> bool:
        return not self._c

    def shift(self, k: int) -> "CycloPoly":
        return CycloPoly(self.n, {d + k: v for d, v in self._c.items()})

    def galois(self, u: int) -> "CycloPoly":
        return CycloPoly(self.n, {d: v.galois(u) for d, v in self._c.items()})

    def conjugate(self) -> "CycloPoly":
        return CycloPoly(self.n, {d: v.conjugate() for d, v in self._c.items()})

    def at_one(self) -> CyclotomicInteger:
        """Substitute T = 1."""
        total = CyclotomicInteger(self.n)
        for v in self._c.values():
            total = total + v
        return total

    def divide_by_t_minus_one(self) -> tuple["CycloPoly", CyclotomicInteger]:
        """Synthetic division by ``T - 1``: returns (quotient, remainder)."""
        zero = CyclotomicInteger(self.n)
        if not self._c:
            return self, zero
        lo, hi = min(self._c), max(self._c)
        quot: dict[int, CyclotomicInteger] = {}
        carry = zero
        for d in range(hi, lo, -1):
            carry = carry + self[d]
            quot[d - 1] = carry
        return CycloPoly(self.n, quot), carry + self[lo]

    def norm(self) -> LaurentPoly:
        """Product of all Galois conjugates; always has rational coefficients."""
        acc = CycloPoly(self.n, {0: CyclotomicInteger.integer(self.n, 1)})
        for u in _units(self.n):
            acc = acc * self.galois(u)
        out = {}
        for d, v in acc._c.items():
            if not v.is_rational():
                raise ArithmeticError("norm did not land in Z[T, T^-1]")
            out[d] = v.coeffs[0]
        return LaurentPoly(out)

    def to_json(self) -> dict[str, list[int]]:
        return {str(d): list(self._c[d].coeffs) for d in sorted(self._c)}

    def __repr__(self) -> str:
        return f"CycloPoly({self.n}, {self.to_json()!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for d in sorted(self._c):
            mono = "" if d == 0 else ("T" if d == 1 else f"T^{d}")
            parts.append(f"({self._c[d]}){mono}")
        return " + ".join(parts)


def cyclotomic_eval(x: GroupAlgebraElem, chars: Sequence[int]) -> CycloPoly:
    """Push ``x`` through the character given by one residue per invariant factor.

    The group element ``(c_1, ..., c_k)`` goes to ``zeta_n ** sum(chars_i * c_i * n / d_i)``
    with ``n`` the exponent of the group.
    """
    factors = x.group.invariant_factors
    chars = tuple(chars)
    if len(chars) != len(factors):
        raise ValueError(f"need {len(factors)} character residues, got {len(chars)}")
    n = x.group.exponent
    weights = [(c % d) * (n // d) for c, d in zip(chars, factors)]
    acc: dict[int, list[int]] = {}
    for (label, deg), v in x.coeffs.items():
        k = sum(w * a for w, a in zip(weights, label)) % n
        row = acc.setdefault(deg, [0] * n)
        row[k] += v
    return CycloPoly(n, {d: CyclotomicInteger(n, row) for d, row in acc.items()})


# -- integer matrices --------------------------------------------------------


def identity_matrix(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns ``(D, U, V)`` with ``U M V = D``.

    ``U`` and ``V`` are unimodular; the diagonal of ``D`` is non-negative
    and each entry divides the next (zeros last).
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(map(int, r)) for r in m]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for r in d:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < rows and t < cols and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, v


def symmetric_signature(m: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric integer matrix, by exact congruence diagonalization."""
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    active = list(range(n))
    while active:
        k = active[0]
        if a[k][k] == 0:
            j = next((j for j in active if a[j][j] != 0), None)
            if j is not None:
                k = j
            else:
                j = next((j for j in active[1:] if a[k][j] != 0), None)
                if j is None:
                    active.remove(k)
                    continue
                # row/col k += row/col j makes the (k, k) entry 2 a[k][j]
                for r in range(n):
                    a[r][k] += a[r][j]
                for c in range(n):
                    a[k][c] += a[j][c]
        piv = a[k][k]
        pos += piv > 0
        neg += piv < 0
        active.remove(k)
        for i in active:
            f = a[i][k] / piv
            if f:
                for c in range(n):
                    a[i][c] -= f * a[k][c]
        for i in active:
            a[k][i] = a[i][k] = Fraction(0)
    return pos - neg
