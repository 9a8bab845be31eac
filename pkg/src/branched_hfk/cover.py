"""Spin^c-decomposed Euler data of the lifted knot in a cyclic branched cover.

Generators of the lifted knot complex are the summands of the formal
determinant of the Fox matrix of the lifted presentation.  Each summand's
prefix words are pushed through the splitting maps: the torsion part gives
the Spin^c label, the linking weight gives the Alexander degree, and the
product of Fox signs with the permutation sign gives the Z/2 grading.
"""

from __future__ import annotations

import hashlib
import json
from math import gcd
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .algebra import CyclotomicInteger, FiniteAbelianGroup, LaurentPoly
from .cfk_base import base_generators
from .errors import BranchedHFKError
from .fox import (
    FoxImage,
    Presentation,
    SplittingMaps,
    Word,
    fox_derivative,
    fox_images,
    lift_presentation,
    splitting_maps,
    two_bridge_presentation,
)
from .twobridge import TwoBridgeKnot

__all__ = [
    "CoverData",
    "CoverGenerator",
    "SpincClassSummary",
    "CentralReport",
    "cover_data",
    "cover_data_from_presentation",
    "cover_generators",
    "spinc_classes",
    "spinc_classes_from_data",
    "central_iso_check",
    "central_iso_report",
    "fingerprint",
    "canonical_profile",
    "permutation_sign",
    "alexander_cover_order",
    "table_unit",
]


def permutation_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class CoverData:
    """The lifted presentation with its splitting maps and per-row Fox images.

    ``tables[i][j]`` lists the images of the summands of dR_i/dx_j, where the
    columns ``x_j`` are the non-meridian generators in order.
    """

    knot: TwoBridgeKnot | None
    m: int
    presentation: Presentation
    maps: SplittingMaps
    columns: tuple[int, ...]
    tables: tuple[tuple[tuple[FoxImage, ...], ...], ...]
    global_sign: int
    central_label: tuple[int, ...]

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.maps.h1_torsion


@lru_cache(maxsize=256)
def cover_data(knot: TwoBridgeKnot, m: int = 2) -> CoverData:
    return cover_data_from_presentation(two_bridge_presentation(knot), m, knot)


def cover_data_from_presentation(base: Presentation, m: int, knot: TwoBridgeKnot | None = None) -> CoverData:
    """Cover data for any one-relator base presentation whose relator involves a non-meridian generator."""
    pres = lift_presentation(base, m)
    maps = splitting_maps(pres)
    group = maps.h1_torsion
    columns = tuple(g for g in range(pres.n_generators) if g != pres.meridian_index)
    if len(columns) != len(pres.relators):
        raise BranchedHFKError("Fox matrix of the lifted presentation is not square")
    tables = []
    for rel in pres.relators:
        images = fox_images(rel, columns, maps.rho, maps.epsilon, group)
        tables.append(tuple(tuple(images[c]) for c in columns))
    arrays = _expand(tables, group)
    total = int(arrays["sign"].sum())
    if abs(total) != group.order:
        raise BranchedHFKError(f"signed summand count {total} is not +-|H1| = {group.order}")
    central = {tuple(int(c[i]) for c in arrays["label"]) for i in np.flatnonzero(arrays["central"])}
    if len(central) != 1:
        raise BranchedHFKError(f"deck-invariant summands carry labels {sorted(central)}")
    return CoverData(
        knot, m, pres, maps, columns, tuple(tables), 1 if total > 0 else -1, central.pop()
    )


def _expand(tables, group: FiniteAbelianGroup) -> dict[str, np.ndarray]:
    """Vectorized determinant expansion: one array entry per summand.

    Labels come back reduced but not re-centered; signs exclude the global flip.
    """
    m = len(tables)
    k = len(group.invariant_factors)
    mods = np.array(group.invariant_factors, dtype=np.int64).reshape(k, 1)
    out = {"sign": [], "degree": [], "label": [], "central": [], "positions": [], "perm": []}
    for perm_index, perm in enumerate(permutations(range(m))):
        cols = [tables[i][perm[i]] for i in range(m)]
        if any(not c for c in cols):
            continue
        shape = tuple(len(c) for c in cols)
        sign = np.full(shape, permutation_sign(perm), dtype=np.int64)
        degree = np.zeros(shape, dtype=np.int64)
        label = np.zeros((k,) + shape, dtype=np.int64)
        positions = []
        for i, col in enumerate(cols):
            view = [1] * m
            view[i] = len(col)
            sign = sign * np.array([im.sign for im in col], dtype=np.int64).reshape(view)
            degree = degree + np.array([im.degree for im in col], dtype=np.int64).reshape(view)
            if k:
                lab = np.array([im.label for im in col], dtype=np.int64).T.reshape([k] + view)
                label = label + lab
            positions.append(np.broadcast_to(np.array([im.position for im in col]).reshape(view), shape))
        central = np.ones(shape, dtype=bool)
        for pos in positions[1:]:
            central &= pos == positions[0]
        out["sign"].append(sign.ravel())
        out["degree"].append(degree.ravel())
        flat = label.reshape(k, sign.size)
        out["label"].append(flat % mods if k else flat)
        out["central"].append(central.ravel())
        out["positions"].append(np.stack([p.ravel() for p in positions]))
        out["perm"].append(np.full(sign.size, perm_index, dtype=np.int64))
    if not out["sign"]:
        return {
            "sign": np.zeros(0, np.int64),
            "degree": np.zeros(0, np.int64),
            "label": np.zeros((k, 0), np.int64),
            "central": np.zeros(0, bool),
            "positions": np.zeros((m, 0), np.int64),
            "perm": np.zeros(0, np.int64),
        }
    return {
        "sign": np.concatenate(out["sign"]),
        "degree": np.concatenate(out["degree"]),
        "label": np.concatenate(out["label"], axis=1),
        "central": np.concatenate(out["central"]),
        "positions": np.concatenate(out["positions"], axis=1),
        "perm": np.concatenate(out["perm"]),
    }


@dataclass(frozen=True)
class CoverGenerator:
    """One determinant summand.

    ``choices`` holds, for each row, the position of the chosen Fox summand
    along the base relator; ``columns`` is the permutation it sits on.
    ``label`` is measured from the deck-invariant class.
    """

    choices: tuple[int, ...]
    columns: tuple[int, ...]
    word: Word
    label: tuple[int, ...]
    degree: int
    sign: int


def cover_generators(knot: TwoBridgeKnot, m: int = 2) -> list[CoverGenerator]:
    data = cover_data(knot, m)
    group = data.group
    pres = data.presentation
    prefixes = [
        [fox_derivative(rel, c) for c in data.columns] for rel in pres.relators
    ]
    out = []
    for perm in permutations(range(m)):
        psign = permutation_sign(perm)
        picks = [list(enumerate(data.tables[i][perm[i]])) for i in range(m)]
        for combo in product(*picks):
            sign = psign * data.global_sign
            label = group.zero
            degree = 0
            word = Word()
            for i, (j, im) in enumerate(combo):
                sign *= im.sign
                label = group.add(label, im.label)
                degree += im.degree
                word = word * prefixes[i][perm[i]][j].prefix
            out.append(
                CoverGenerator(
                    choices=tuple(im.position for _, im in combo),
                    columns=tuple(data.columns[c] for c in perm),
                    word=word,
                    label=group.sub(label, data.central_label),
                    degree=degree,
                    sign=sign,
                )
            )
    return out


@dataclass(frozen=True)
class SpincClassSummary:
    """Aggregate of one Spin^c class.

    ``levels`` and ``signed`` are keyed by Alexander level after subtracting
    ``offset`` from the raw degree.  ``centered`` says whether that offset
    makes the level multiset symmetric; otherwise the anchor is the degree
    of the first summand in (permutation, chosen positions) order.
    """

    label: tuple[int, ...]
    size: int
    levels: dict[int, int]
    signed: dict[int, int]
    offset: int
    centered: bool
    is_central: bool
    conjugate_label: tuple[int, ...]
    p_s: LaurentPoly = field(compare=False)

    @property
    def rank_lower_bounds(self) -> dict[int, int]:
        return {a: abs(c) for a, c in self.signed.items() if c}

    def to_json(self) -> dict:
        return {
            "label": list(self.label),
            "size": self.size,
            "levels": {str(a): c for a, c in sorted(self.levels.items())},
            "signed": {str(a): c for a, c in sorted(self.signed.items())},
            "p_s": str(self.p_s),
            "centered": self.centered,
            "offset": self.offset,
            "is_central": self.is_central,
            "conjugate_label": list(self.conjugate_label),
            "rank_lower_bounds": {str(a): c for a, c in sorted(self.rank_lower_bounds.items())},
        }


@lru_cache(maxsize=64)
def _knot_class_tables(knot: TwoBridgeKnot, m: int):
    return _class_tables(cover_data(knot, m))


def _class_tables(data: CoverData):
    """Per-class raw-degree counts and signed counts, via integer encoding.

    Also returns, per class, the raw degree of its first summand in the
    order (permutation, chosen positions row by row).
    """
    group = data.group
    arr = _expand(data.tables, group)
    sign = arr["sign"] * data.global_sign
    factors = group.invariant_factors
    k = len(factors)
    central = np.array(data.central_label, dtype=np.int64).reshape(k, 1)
    mods = np.array(factors, dtype=np.int64).reshape(k, 1)
    rel = (arr["label"] - central) % mods if k else arr["label"]
    code = np.zeros(sign.shape, dtype=np.int64)
    for i, d in enumerate(factors):
        code = code * d + rel[i]
    deg = arr["degree"]
    lo = int(deg.min()) if deg.size else 0
    span = int(deg.max()) - lo + 1 if deg.size else 1
    key = code * span + (deg - lo)
    keys, inverse = np.unique(key, return_inverse=True)
    counts = np.bincount(inverse)
    pos = np.bincount(inverse[sign > 0], minlength=len(keys))
    neg = np.bincount(inverse[sign < 0], minlength=len(keys))
    per_class: dict[int, dict[int, tuple[int, int]]] = {}
    for kk, c, s in zip(keys.tolist(), counts.tolist(), (pos - neg).tolist()):
        cl, d = divmod(kk, span)
        per_class.setdefault(cl, {})[d + lo] = (c, s)
    order = np.lexsort(tuple(arr["positions"][::-1]) + (arr["perm"], code))
    first = np.ones(order.size, dtype=bool)
    first[1:] = code[order][1:] != code[order][:-1]
    anchors = dict(zip(code[order][first].tolist(), deg[order][first].tolist()))
    return per_class, arr, anchors


def _decode(code: int, factors) -> tuple[int, ...]:
    out = []
    for d in reversed(factors):
        code, r = divmod(code, d)
        out.append(r)
    return tuple(reversed(out))


def _symmetric_center(counts: dict[int, int]) -> int | None:
    lo, hi = min(counts), max(counts)
    if (lo + hi) % 2:
        return None
    c2 = lo + hi
    if all(counts.get(c2 - d, 0) == n for d, n in counts.items()):
        return c2 // 2
    return None


def spinc_classes(knot: TwoBridgeKnot, m: int = 2) -> list[SpincClassSummary]:
    return _summaries(cover_data(knot, m), _knot_class_tables(knot, m))


def spinc_classes_from_data(data: CoverData) -> list[SpincClassSummary]:
    return _summaries(data, _class_tables(data))


def _summaries(data: CoverData, tables) -> list[SpincClassSummary]:
    group = data.group
    per_class, _, anchors = tables
    out = []
    for code in sorted(per_class):
        label = _decode(code, group.invariant_factors)
        raw = per_class[code]
        counts = {d: c for d, (c, _) in raw.items()}
        center = _symmetric_center(counts)
        centered = center is not None
        offset = center if centered else anchors[code]
        levels = {d - offset: c for d, c in sorted(counts.items())}
        signed = {d - offset: s for d, (_, s) in sorted(raw.items())}
        out.append(
            SpincClassSummary(
                label=label,
                size=sum(counts.values()),
                levels=levels,
                signed=signed,
                offset=offset,
                centered=centered,
                is_central=not any(label),
                conjugate_label=group.neg(label),
                p_s=LaurentPoly(signed),
            )
        )
    return out


@dataclass(frozen=True)
class CentralReport:
    ok: bool
    problems: tuple[str, ...]


def central_iso_report(knot: TwoBridgeKnot) -> CentralReport:
    """Compare the self-conjugate class of the double cover with the base complex."""
    problems = []
    data = cover_data(knot, 2)
    group = data.group
    _, arr, _ = _knot_class_tables(knot, 2)
    classes = spinc_classes(knot, 2)
    self_conj = [c for c in classes if c.conjugate_label == c.label]
    if len(self_conj) != 1 or not self_conj[0].is_central:
        problems.append(f"self-conjugate classes: {[c.label for c in self_conj]}")
    central = next((c for c in classes if c.is_central), None)
    base = base_generators(knot, sigma=0)
    if central is None:
        problems.append("no class at the deck-invariant label")
        return CentralReport(False, tuple(problems))
    if central.size != knot.p:
        problems.append(f"central class has {central.size} generators, expected {knot.p}")
    base_levels = Counter(g.alexander for g in base)
    base_signed = Counter()
    for g in base:
        base_signed[g.alexander] += g.sign
    if central.levels != dict(sorted(base_levels.items())):
        problems.append(f"levels {central.levels} != base {dict(sorted(base_levels.items()))}")
    if central.signed != dict(sorted(base_signed.items())):
        problems.append(f"signed {central.signed} != base {dict(sorted(base_signed.items()))}")
    # summand by summand: the deck-invariant summand at position k lifts the
    # k-th Fox summand of the base relator
    down = cover_data(knot, 1)
    down_summands = down.tables[0][0]
    down_offset = spinc_classes(knot, 1)[0].offset
    idx = np.flatnonzero(arr["central"])
    seen = set()
    for i in idx.tolist():
        k = int(arr["positions"][0, i])
        seen.add(k)
        level = int(arr["degree"][i]) - central.offset
        sign = int(arr["sign"][i]) * data.global_sign
        b = down_summands[k]
        expected = (b.degree - down_offset, b.sign * down.global_sign)
        if (level, sign) != expected:
            problems.append(f"position {k}: cover ({level}, {sign}) vs base {expected}")
    if seen != set(range(knot.p)):
        problems.append("deck-invariant summands do not biject with base generators")
    rel = (arr["label"][:, idx] - np.array(data.central_label, dtype=np.int64).reshape(-1, 1))
    if group.invariant_factors and np.any(rel % np.array(group.invariant_factors).reshape(-1, 1)):
        problems.append("deck-invariant summands span several labels")
    return CentralReport(not problems, tuple(problems))


def central_iso_check(knot: TwoBridgeKnot) -> bool:
    return central_iso_report(knot).ok


def canonical_profile(poly: LaurentPoly) -> tuple[int, ...]:
    """Coefficient list modulo shifts and T -> 1/T."""
    coeffs = poly.coefficient_list()
    return min(tuple(coeffs), tuple(reversed(coeffs)))


def fingerprint(knot: TwoBridgeKnot, m: int = 2) -> str:
    """Hex digest of the multiset of (class size, canonical profile of p_s).

    No label enters, so the key is unchanged by any automorphism of H1
    and by conjugation; it is also unchanged under mirroring.
    """
    classes = spinc_classes(knot, m)
    items = sorted([c.size, list(canonical_profile(c.p_s))] for c in classes)
    payload = {
        "m": m,
        "h1": list(cover_data(knot, m).group.invariant_factors),
        "classes": items,
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def alexander_cover_order(delta: LaurentPoly, m: int) -> int:
    """Product of |delta(w)| over the nontrivial m-th roots of unity w.

    Grouped by conductor: each divisor d > 1 of m contributes the absolute
    norm of delta(zeta_d).
    """
    total = 1
    for d in range(2, m + 1):
        if m % d:
            continue
        value = CyclotomicInteger(d)
        for deg, c in delta.coeffs.items():
            value = value + CyclotomicInteger.root_power(d, deg, c)
        total *= abs(value.norm())
    return total


def table_unit(classes: list[SpincClassSummary], expected: tuple[int, ...]) -> int | None:
    """Smallest unit u with size(+-u k) = expected[k] for every listed k, if any.

    ``expected`` lists the sizes of s_0, s_+-1, s_+-2, ... for a cyclic H1.
    """
    sizes = {c.label: c.size for c in classes}
    n = expected[0] if len(classes) == expected[0] else len(classes)
    if any(len(lab) != 1 for lab in sizes) or n != len(sizes):
        return None
    for u in range(1, n):
        if gcd(u, n) != 1:
            continue
        if all(
            sizes.get(((u * k) % n,)) == size and sizes.get(((-u * k) % n,)) == size
            for k, size in enumerate(expected)
        ):
            return u
    return None
