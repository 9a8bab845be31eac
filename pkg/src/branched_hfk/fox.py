"""Free-group words, presentations, Fox calculus and cyclic-cover lifts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import FiniteAbelianGroup, smith_normal_form
from .errors import BranchedHFKError, InfiniteH1, InvalidParameters
from .twobridge import TwoBridgeKnot

__all__ = [
    "Word",
    "Presentation",
    "FoxSummand",
    "FoxImage",
    "Abelianization",
    "SplittingMaps",
    "fox_derivative",
    "fox_images",
    "two_bridge_presentation",
    "abelianize",
    "lift_presentation",
    "splitting_maps",
]

Letter = tuple[int, int]


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if e != 1 and e != -1:
            raise ValueError(f"exponent {e} must be +1 or -1")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


class Word:
    """A freely reduced word in numbered generators; letters are ``(index, +-1)``."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = _free_reduce(letters)

    @classmethod
    def _reduced(cls, letters: tuple[Letter, ...]) -> "Word":
        w = cls.__new__(cls)
        w.letters = letters
        return w

    @classmethod
    def from_string(cls, text: str) -> "Word":
        """Parse ``abaBAB``: lowercase letters are generators, uppercase their inverses."""
        letters = []
        for ch in text.strip():
            if not ch.isalpha():
                raise ValueError(f"bad letter {ch!r}")
            letters.append((ord(ch.lower()) - ord("a"), -1 if ch.isupper() else 1))
        return cls(letters)

    def to_string(self) -> str:
        return "".join(chr(ord("a") + g).upper() if e < 0 else chr(ord("a") + g) for g, e in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        a, b = self.letters, other.letters
        i = 0
        while i < len(a) and i < len(b) and a[-1 - i][0] == b[i][0] and a[-1 - i][1] == -b[i][1]:
            i += 1
        return Word._reduced(a[: len(a) - i] + b[i:])

    def inverse(self) -> "Word":
        return Word._reduced(tuple((g, -e) for g, e in reversed(self.letters)))

    def exponent_sums(self, n_generators: int) -> list[int]:
        row = [0] * n_generators
        for g, e in self.letters:
            row[g] += e
        return row

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.to_string() < other.to_string()

    def __repr__(self) -> str:
        return f"Word({self.to_string()!r})"


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    meridian_index: int

    def __post_init__(self):
        n = len(self.generators)
        if not 0 <= self.meridian_index < n:
            raise ValueError("meridian index out of range")
        for r in self.relators:
            if any(g >= n for g, _ in r.letters):
                raise ValueError(f"relator {r} uses an unknown generator")

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def relation_matrix(self) -> list[list[int]]:
        return [r.exponent_sums(self.n_generators) for r in self.relators]

    def to_text(self) -> str:
        """Letters ``a, b, c, ...`` stand for the generators in order; uppercase is inverse."""
        names = " ".join(f"{chr(ord('a') + i)}={name}" for i, name in enumerate(self.generators))
        header = f"# generators: {names}; meridian: {chr(ord('a') + self.meridian_index)}"
        return "\n".join([header] + [r.to_string() for r in self.relators]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("# generators:"):
            raise ValueError("missing '# generators:' header")
        body, _, merid = lines[0][len("# generators:"):].partition("; meridian:")
        names = [item.split("=", 1)[1] for item in body.split()]
        meridian = ord(merid.strip()) - ord("a")
        relators = tuple(Word.from_string(ln) for ln in lines[1:])
        return cls(tuple(names), relators, meridian)


@dataclass(frozen=True)
class FoxSummand:
    sign: int
    prefix: Word


@dataclass(frozen=True)
class FoxImage:
    """A Fox summand seen through an abelian map: sign, position and prefix image."""

    sign: int
    position: int
    label: tuple[int, ...]
    degree: int


def fox_derivative(rel: Word, gen: int) -> list[FoxSummand]:
    out = []
    for i, (g, e) in enumerate(rel.letters):
        if g != gen:
            continue
        cut = i if e > 0 else i + 1
        out.append(FoxSummand(e, Word._reduced(rel.letters[:cut])))
    return out


def fox_images(
    rel: Word,
    columns: Sequence[int],
    labels: Sequence[Sequence[int]],
    degrees: Sequence[int],
    group: FiniteAbelianGroup,
) -> dict[int, list[FoxImage]]:
    """Images of the summands of dR/dx for every ``x`` in ``columns`` under (label, degree).

    Prefix images come from running sums, so no prefix word is built.
    ``position`` counts occurrences of any column letter from the left.
    """
    mods = group.invariant_factors
    wanted = set(columns)
    out: dict[int, list[FoxImage]] = {c: [] for c in columns}
    if not mods:
        deg = pos = 0
        for g, e in rel.letters:
            if e < 0:
                deg -= degrees[g]
            if g in wanted:
                out[g].append(FoxImage(e, pos, (), deg))
                pos += 1
            if e > 0:
                deg += degrees[g]
        return out
    lab = [0] * len(mods)
    deg = 0
    pos = 0
    for g, e in rel.letters:
        if e > 0:
            if g in wanted:
                out[g].append(FoxImage(1, pos, tuple(x % d for x, d in zip(lab, mods)), deg))
                pos += 1
            lab = [x + y for x, y in zip(lab, labels[g])]
            deg += degrees[g]
        else:
            lab = [x - y for x, y in zip(lab, labels[g])]
            deg -= degrees[g]
            if g in wanted:
                out[g].append(FoxImage(-1, pos, tuple(x % d for x, d in zip(lab, mods)), deg))
                pos += 1
    return out


def two_bridge_presentation(knot: TwoBridgeKnot) -> Presentation:
    """``<a, b | w a w^-1 b^-1>`` with ``w = a^e1 b^e2 a^e3 ...``; ``b`` is the meridian."""
    if knot.is_unknot:
        return Presentation(("a", "b"), (Word([(0, 1), (1, -1)]),), 1)
    w = Word((i % 2, e) for i, e in enumerate(knot.epsilon))
    rel = w * Word([(0, 1)]) * w.inverse() * Word([(1, -1)])
    return Presentation(("a", "b"), (rel,), 1)


@dataclass(frozen=True)
class Abelianization:
    """Smith-basis description of a presentation's first homology.

    ``torsion_map[g]`` and ``free_map[g]`` give the image of generator ``g``.
    """

    group: FiniteAbelianGroup
    free_rank: int
    torsion_map: tuple[tuple[int, ...], ...]
    free_map: tuple[tuple[int, ...], ...]


def abelianize(pres: Presentation, kill_meridian: bool = False) -> Abelianization:
    rows = pres.relation_matrix()
    n = pres.n_generators
    if kill_meridian:
        rows.append([int(j == pres.meridian_index) for j in range(n)])
    if not rows:
        rows = [[0] * n]
    d, _, v = smith_normal_form(rows)
    diag = [d[i][i] if i < len(d) else 0 for i in range(n)]
    diag += [0] * (n - len(diag))
    group, free_rank, keep = FiniteAbelianGroup.from_diagonal(diag)
    free_idx = [i for i in range(n) if diag[i] == 0]
    torsion_map = tuple(group.reduce(v[g][i] for i in keep) for g in range(n))
    free_map = tuple(tuple(v[g][i] for i in free_idx) for g in range(n))
    return Abelianization(group, free_rank, torsion_map, free_map)


def _linking_weights(pres: Presentation) -> tuple[int, ...]:
    """The epimorphism H1(complement) -> Z, normalized to +1 on the meridian."""
    ab = abelianize(pres, kill_meridian=False)
    if ab.free_rank != 1:
        raise InfiniteH1(f"complement has free rank {ab.free_rank}, expected 1")
    weights = [fm[0] for fm in ab.free_map]
    mu = weights[pres.meridian_index]
    if mu not in (1, -1):
        raise BranchedHFKError(f"meridian maps to {mu} under the linking map; knot is not nullhomologous")
    return tuple(w * mu for w in weights)


def lift_presentation(pres: Presentation, m: int) -> Presentation:
    """Reidemeister-Schreier presentation of the m-fold cyclic cover complement.

    Cosets are represented by powers of the meridian.  The meridian lifts at
    cosets ``0 .. m-2`` form the Schreier tree and are dropped; the lift at
    coset ``m-1`` (the m-th power of the meridian) is kept as the last generator.
    """
    if m < 1:
        raise InvalidParameters(f"cover degree m = {m} must be >= 1")
    if m == 1:
        return pres
    weights = _linking_weights(pres)
    mi = pres.meridian_index
    others = [g for g in range(pres.n_generators) if g != mi]
    index = {(g, c): k * m + c for k, g in enumerate(others) for c in range(m)}
    top = len(others) * m
    names = tuple(f"{pres.generators[g]}{c}" for g in others for c in range(m))
    names += (f"{pres.generators[mi]}^{m}",)

    relators = []
    for r in pres.relators:
        for start in range(m):
            c = start
            out = []
            for g, e in r.letters:
                k = weights[g]
                if e > 0:
                    if g == mi:
                        if c == m - 1:
                            out.append((top, 1))
                    else:
                        out.append((index[g, c], 1))
                    c = (c + k) % m
                else:
                    c = (c - k) % m
                    if g == mi:
                        if c == m - 1:
                            out.append((top, -1))
                    else:
                        out.append((index[g, c], -1))
            if c != start:
                raise BranchedHFKError("relator does not close up in the cover")
            relators.append(Word(out))
    return Presentation(names, tuple(relators), top)


@dataclass(frozen=True)
class SplittingMaps:
    """Abelian data of a cover complement.

    ``epsilon`` is the linking weight of each generator and ``rho`` its class
    in the torsion group of the closed cover.
    """

    epsilon: tuple[int, ...]
    rho: tuple[tuple[int, ...], ...]
    h1_torsion: FiniteAbelianGroup

    def image(self, word: Word) -> tuple[tuple[int, ...], int]:
        group = self.h1_torsion
        lab = group.zero
        deg = 0
        for g, e in word.letters:
            lab = group.add(lab, group.scale(e, self.rho[g]))
            deg += e * self.epsilon[g]
        return lab, deg


def splitting_maps(pres: Presentation) -> SplittingMaps:
    closed = abelianize(pres, kill_meridian=True)
    if closed.free_rank:
        raise InfiniteH1(f"closed manifold has first Betti number {closed.free_rank}")
    eps = _linking_weights(pres)
    maps = SplittingMaps(eps, closed.torsion_map, closed.group)
    for r in pres.relators:
        if maps.image(r) != (closed.group.zero, 0):
            raise BranchedHFKError(f"relator {r} survives the splitting maps")
    return maps
