"""Ordered chord diagrams as circular words.

A diagram on ``n`` chords is stored as a word of length ``2n``: position ``p``
(points ``0..2n-1`` in clockwise order) carries the label of the chord it
belongs to.  The label order is the chord order, so a word is an *ordered*
chord diagram.  Two words describe the same ordered diagram when one is a
cyclic rotation of the other with labels kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class MalformedDiagramError(ValueError):
    """Raised when a word or chord list does not describe a perfect matching."""


@dataclass(frozen=True)
class ChordWord:
    word: tuple[int, ...]

    def __post_init__(self) -> None:
        word = tuple(int(x) for x in self.word)
        object.__setattr__(self, "word", word)
        if len(word) % 2:
            raise MalformedDiagramError(f"odd word length {len(word)}")
        n = len(word) // 2
        counts = [0] * (n + 1)
        for lab in word:
            if not 1 <= lab <= n:
                raise MalformedDiagramError(f"label {lab} outside 1..{n}")
            counts[lab] += 1
        bad = [lab for lab in range(1, n + 1) if counts[lab] != 2]
        if bad:
            raise MalformedDiagramError(f"labels {bad} do not occur exactly twice")

    @property
    def n(self) -> int:
        return len(self.word) // 2

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_word(self.word)

    @classmethod
    def parse(cls, text: str) -> "ChordWord":
        try:
            labels = [int(tok) for tok in text.split()]
        except ValueError as exc:
            raise MalformedDiagramError(f"cannot parse word {text!r}") from exc
        return cls(tuple(labels))

    def matching(self) -> "Matching":
        return Matching(partners(self.word))

    def chords(self) -> list[tuple[int, int]]:
        """Endpoint pairs ``(p, q)`` with ``p < q``, indexed by label - 1."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for p, lab in enumerate(self.word):
            out[lab - 1].append(p)
        return [(a, b) for a, b in out]


@dataclass(frozen=True)
class Matching:
    """Fixed-point-free involution on the points ``0..2n-1``."""

    partner: tuple[int, ...]

    def __post_init__(self) -> None:
        m = self.partner
        for p, q in enumerate(m):
            if q == p or not 0 <= q < len(m) or m[q] != p:
                raise MalformedDiagramError(f"not an involution at point {p}")

    @property
    def size(self) -> int:
        return len(self.partner)


@dataclass(frozen=True)
class CanonicalClass:
    word: tuple[int, ...]
    torsion: bool
    class_id: int = field(default=-1, compare=False)

    def chord_word(self) -> ChordWord:
        return ChordWord(self.word)

    def __str__(self) -> str:
        return format_word(self.word)


def format_word(word: Iterable[int]) -> str:
    return " ".join(str(x) for x in word)


def partners(word: Sequence[int]) -> tuple[int, ...]:
    first: dict[int, int] = {}
    out = [0] * len(word)
    for p, lab in enumerate(word):
        q = first.pop(lab, None)
        if q is None:
            first[lab] = p
        else:
            out[p] = q
            out[q] = p
    return tuple(out)


def from_chords(chords: Sequence[Iterable[int]]) -> ChordWord:
    """Build the word of an ordered diagram given as a list of point pairs.

    Chord ``i`` (0-based position in ``chords``) gets label ``i + 1``.

    >>> str(from_chords([(0, 2), (1, 3)]))
    '1 2 1 2'
    """
    n = len(chords)
    word = [0] * (2 * n)
    for i, chord in enumerate(chords, start=1):
        pts = list(chord)
        if len(pts) != 2 or pts[0] == pts[1]:
            raise MalformedDiagramError(f"chord {i} is not a pair of distinct points: {pts}")
        for p in pts:
            if not 0 <= p < 2 * n:
                raise MalformedDiagramError(f"point {p} outside 0..{2 * n - 1}")
            if word[p]:
                raise MalformedDiagramError(f"point {p} repeated")
            word[p] = i
    return ChordWord(tuple(word))


def relabel_first_occurrence(word: Sequence[int]) -> tuple[tuple[int, ...], dict[int, int]]:
    """Relabel so labels appear in order 1, 2, ... by first occurrence.

    Returns the new word and the map old label -> new label.
    """
    mapping: dict[int, int] = {}
    out = []
    for lab in word:
        new = mapping.get(lab)
        if new is None:
            new = mapping[lab] = len(mapping) + 1
        out.append(new)
    return tuple(out), mapping


def rotate(w: ChordWord, r: int, relabel: bool = True) -> ChordWord:
    """Turn the diagram ``r`` steps clockwise: the chord end at point ``p`` moves to ``p + r``.

    With ``relabel`` (the default) the result is relabeled by first occurrence,
    which changes the chord order; pass ``relabel=False`` to keep each chord's
    label, i.e. to get the same ordered diagram in a different position.
    """
    m = len(w.word)
    if m == 0:
        return w
    r %= m
    rotated = w.word[m - r:] + w.word[: m - r]
    if relabel:
        rotated = relabel_first_occurrence(rotated)[0]
    return ChordWord(rotated)


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of ``0..len-1`` given in one-line notation."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        p = start
        while not seen[p]:
            seen[p] = True
            p = perm[p]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _label_map_sign(mapping: dict[int, int]) -> int:
    n = len(mapping)
    perm = [0] * n
    for old, new in mapping.items():
        perm[old - 1] = new - 1
    return permutation_sign(perm)


def apply_permutation(w: ChordWord, sigma: Sequence[int]) -> tuple[ChordWord, int]:
    """Reorder chords: the result's chord ``i`` is ``w``'s chord ``sigma(i)``.

    ``sigma`` is given 1-based in one-line notation, ``sigma[i - 1] = sigma(i)``.
    Returns the relabeled word and the sign of ``sigma``.
    """
    n = w.n
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{list(sigma)} is not a permutation of 1..{n}")
    inverse = [0] * (n + 1)
    for i, s in enumerate(sigma, start=1):
        inverse[s] = i
    word = tuple(inverse[lab] for lab in w.word)
    return ChordWord(word), permutation_sign([s - 1 for s in sigma])


def canonical_form(word: Sequence[int]) -> tuple[tuple[int, ...], int, bool]:
    """Rotation-canonical word, reordering sign and torsion flag of a raw word.

    The canonical word is the lexicographic minimum over all rotations of the
    first-occurrence relabeling.  The input ordered diagram equals ``sign``
    times the canonical one.  If two minimizing rotations relabel with
    opposite parity the class has order two, and the sign is reported as +1.
    """
    word = tuple(word)
    best: tuple[int, ...] | None = None
    signs: set[int] = set()
    for r in range(len(word)):
        cand, mapping = relabel_first_occurrence(word[r:] + word[:r])
        if best is None or cand < best:
            best = cand
            signs = {_label_map_sign(mapping)}
        elif cand == best:
            signs.add(_label_map_sign(mapping))
    if best is None:
        return (), 1, False
    if len(signs) > 1:
        return best, 1, True
    return best, signs.pop(), False


def canonicalize(w: ChordWord) -> tuple[CanonicalClass, int]:
    word, sign, torsion = canonical_form(w.word)
    return CanonicalClass(word, torsion), sign


def crossing_graph(w: ChordWord) -> dict[int, set[int]]:
    """Adjacency sets on chord labels; ``i ~ j`` iff their endpoints interleave."""
    ends = w.chords()
    adj: dict[int, set[int]] = {i: set() for i in range(1, w.n + 1)}
    for i, (a, b) in enumerate(ends, start=1):
        for j in range(i + 1, w.n + 1):
            c, d = ends[j - 1]
            if (a < c < b) != (a < d < b):
                adj[i].add(j)
                adj[j].add(i)
    return adj


def is_connected_graph(adj: dict[int, set[int]]) -> bool:
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(adj)
