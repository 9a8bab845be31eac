"""Torsion of the cover complement and twisted Alexander polynomials.

The numerator is computed here by an independent route: Fox entries are
assembled as elements of Z[H1][T, 1/T] from explicit prefix words and the
determinant is taken inside that ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .algebra import CycloPoly, CyclotomicInteger, GroupAlgebraElem, LaurentPoly, cyclotomic_eval
from .cover import permutation_sign
from .errors import BranchedHFKError
from .fox import lift_presentation, splitting_maps, two_bridge_presentation
from .twobridge import TwoBridgeKnot

__all__ = [
    "TorsionElement",
    "fox_matrix",
    "turaev_torsion",
    "acyclicity_check",
    "twisted_alexander_wada",
    "wada_leading_value",
    "wada_norm",
]


@dataclass(frozen=True)
class TorsionElement:
    """``numerator / (T - 1)``, kept unreduced."""

    numerator: GroupAlgebraElem

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly({1: 1, 0: -1})

    def components(self) -> dict[tuple[int, ...], LaurentPoly]:
        return self.numerator.components()

    def __str__(self) -> str:
        parts = [f"[{','.join(map(str, lab))}]*({p})" for lab, p in self.components().items()]
        return f"({' + '.join(parts)}) / (T - 1)"


def fox_matrix(knot: TwoBridgeKnot, m: int = 2) -> list[list[GroupAlgebraElem]]:
    """Entries (rho x epsilon)(dR_i/dx_j) over the non-meridian generators.

    Built with the product rule d(uv) = du + u dv, carrying the image of the
    prefix u as a group-ring monomial while reading the relator.
    """
    pres = lift_presentation(two_bridge_presentation(knot), m)
    maps = splitting_maps(pres)
    group = maps.h1_torsion
    cols = [g for g in range(pres.n_generators) if g != pres.meridian_index]
    col_index = {c: j for j, c in enumerate(cols)}
    matrix = []
    for rel in pres.relators:
        entries: list[dict] = [{} for _ in cols]
        lab, deg = group.zero, 0
        for g, e in rel.letters:
            if e < 0:
                lab = group.sub(lab, maps.rho[g])
                deg -= maps.epsilon[g]
            j = col_index.get(g)
            if j is not None:
                entries[j][lab, deg] = entries[j].get((lab, deg), 0) + e
            if e > 0:
                lab = group.add(lab, maps.rho[g])
                deg += maps.epsilon[g]
        matrix.append([GroupAlgebraElem(group, t) for t in entries])
    return matrix


def _determinant(matrix: list[list[GroupAlgebraElem]]) -> GroupAlgebraElem:
    n = len(matrix)
    group = matrix[0][0].group
    total = GroupAlgebraElem.zero(group)
    for perm in permutations(range(n)):
        term = GroupAlgebraElem.monomial(group)
        for i in range(n):
            term = term * matrix[i][perm[i]]
            if not term:
                break
        if term:
            total = total + term * permutation_sign(perm)
    return total


@lru_cache(maxsize=256)
def turaev_torsion(knot: TwoBridgeKnot, m: int = 2) -> TorsionElement:
    """Torsion numerator, sign-fixed so that the augmentation is +|H1|.

    Labels are raw Smith-basis classes of the prefix words.
    """
    num = _determinant(fox_matrix(knot, m))
    if num.augmentation() < 0:
        num = -num
    return TorsionElement(num)


def acyclicity_check(knot: TwoBridgeKnot, m: int) -> bool:
    """True when the numerator augments to +-|H1| of the closed cover."""
    pres = lift_presentation(two_bridge_presentation(knot), m)
    try:
        order = splitting_maps(pres).h1_torsion.order
    except BranchedHFKError:
        return False
    value = turaev_torsion(knot, m).numerator.augmentation()
    return abs(value) == order and value != 0


def twisted_alexander_wada(knot: TwoBridgeKnot, m: int, chars) -> CycloPoly:
    """Numerator of the character-twisted Alexander polynomial (denominator T - 1)."""
    return cyclotomic_eval(turaev_torsion(knot, m).numerator, tuple(chars))


def wada_leading_value(knot: TwoBridgeKnot, m: int, chars) -> tuple[int, CyclotomicInteger]:
    """Order of vanishing at T = 1 and the first nonzero Taylor value there.

    For a nontrivial character the numerator always vanishes at T = 1,
    since every class contributes +1 there and the character sums to zero.
    """
    poly = twisted_alexander_wada(knot, m, chars)
    if poly.is_zero():
        raise BranchedHFKError("twisted numerator is identically zero")
    order = 0
    while True:
        quot, rem = poly.divide_by_t_minus_one()
        if not rem.is_zero():
            return order, rem
        poly, order = quot, order + 1


def wada_norm(knot: TwoBridgeKnot, m: int, chars) -> LaurentPoly:
    """Product of all Galois conjugates of the twisted numerator."""
    return twisted_alexander_wada(knot, m, chars).norm()
