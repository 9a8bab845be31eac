"""Two-bridge knots K(p, q): normal form, sign sequence, continued fractions, signature."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, floor

from .errors import InvalidParameters

__all__ = [
    "TwoBridgeKnot",
    "normalize",
    "epsilon_sequence",
    "schubert_pairing",
    "continued_fraction",
    "from_twists",
    "signature",
    "even_continued_fraction",
    "linking_matrix",
    "coprime_pairs",
]


@dataclass(frozen=True)
class TwoBridgeKnot:
    """A two-bridge knot in normal form.

    ``q_star`` is the odd representative of ``q`` mod ``p`` in ``(0, 2p)``;
    ``epsilon`` holds the crossing signs that drive every downstream
    computation.  Build instances through :func:`normalize`.
    """

    p: int
    q: int
    q_star: int
    epsilon: tuple[int, ...] = field(repr=False)

    @property
    def is_unknot(self) -> bool:
        return self.p == 1

    @property
    def name(self) -> str:
        return f"K({self.p},{self.q})"


def normalize(p: int, q: int) -> TwoBridgeKnot:
    if not isinstance(p, int) or not isinstance(q, int):
        raise InvalidParameters("p and q must be integers")
    if p <= 0 or p % 2 == 0:
        raise InvalidParameters(f"p = {p} must be a positive odd integer")
    if gcd(p, q) != 1:
        raise InvalidParameters(f"gcd({p}, {q}) != 1")
    if p == 1:
        return TwoBridgeKnot(1, q, 1, ())
    r = q % p
    q_star = r if r % 2 else r + p
    eps = tuple(-1 if (i * q_star // p) % 2 else 1 for i in range(1, p))
    return TwoBridgeKnot(p, q, q_star, eps)


def epsilon_sequence(knot: TwoBridgeKnot) -> list[int]:
    return list(knot.epsilon)


def schubert_pairing(p: int, q: int) -> dict[int, int]:
    """Arc endpoints of the Schubert diagram: ``i -> (i - q) mod 2p``."""
    if p <= 0:
        raise InvalidParameters("p must be positive")
    n = 2 * p
    return {i: (i - q) % n for i in range(n)}


def continued_fraction(p: int, q: int) -> list[int]:
    """Canonical expansion of p/q with positive terms and last term at least 2."""
    if not 0 < q < p:
        raise InvalidParameters(f"need 0 < q < p, got p={p}, q={q}")
    terms = []
    a, b = p, q
    while b:
        terms.append(a // b)
        a, b = b, a % b
    if a != 1:
        raise InvalidParameters(f"gcd({p}, {q}) != 1")
    return terms


def from_twists(terms: list[int]) -> tuple[int, int]:
    """Evaluate ``c1 + 1/(c2 + 1/(... + 1/cn))`` and return ``(numerator, denominator)``."""
    if not terms:
        raise InvalidParameters("empty continued fraction")
    value = Fraction(terms[-1])
    for c in reversed(terms[:-1]):
        if value == 0:
            raise InvalidParameters("continued fraction hits division by zero")
        value = c + 1 / value
    return value.numerator, value.denominator


def even_continued_fraction(p: int, q: int) -> list[int]:
    """Expansion ``p/q = b1 - 1/(b2 - 1/(...))`` with every ``bi`` even.

    Requires ``p`` and ``q`` of opposite parity; each step picks the unique
    even integer within distance one of the current value.
    """
    if (p + q) % 2 == 0:
        raise InvalidParameters("p and q must have opposite parity")
    x = Fraction(p, q)
    out = []
    while True:
        if x.denominator == 1 and x.numerator % 2 == 0:
            out.append(int(x))
            return out
        b = 2 * floor((x + 1) / 2)
        if abs(b - x) >= 1:
            raise ArithmeticError(f"no even term within distance one of {x}")
        out.append(b)
        x = 1 / (b - x)


def linking_matrix(knot: TwoBridgeKnot) -> list[list[int]]:
    """Tridiagonal Goeritz-type form whose signature is the knot signature."""
    if knot.is_unknot:
        return []
    terms = even_continued_fraction(knot.p, knot.q_star - knot.p)
    n = len(terms)
    return [[terms[i] if i == j else int(abs(i - j) == 1) for j in range(n)] for i in range(n)]


def signature(knot: TwoBridgeKnot) -> int:
    """Knot signature, negative for the right-handed trefoil K(3,1).

    The linking matrix is tridiagonal with even diagonal entries of size at
    least 2, so its leading pivots never vanish and their signs give the
    signature directly.
    """
    if knot.is_unknot:
        return 0
    total = 0
    pivot = None
    for b in even_continued_fraction(knot.p, knot.q_star - knot.p):
        pivot = Fraction(b) if pivot is None else b - 1 / pivot
        total += 1 if pivot > 0 else -1
    return total


def coprime_pairs(max_p: int, min_p: int = 1):
    """All normalized pairs ``(p, q)`` with odd ``p`` in range and ``0 < q < p`` (``q = 1`` for the unknot)."""
    for p in range(max(min_p, 1) | 1, max_p + 1, 2):
        if p == 1:
            yield 1, 1
            continue
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield p, q
