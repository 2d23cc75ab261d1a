"""Boundary cycles, genus and the filling-system predicate."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import ChordWord, crossing_graph, is_connected_graph, partners


class NotFillingError(ValueError):
    pass


@dataclass(frozen=True)
class BoundaryProfile:
    orbits: tuple[int, ...]  # sorted orbit lengths of tau o omega
    b: int
    g: Optional[int]  # None when (n + 1 - b) / 2 is not a nonnegative integer

    @property
    def k(self) -> int:
        return self.b - 1

    @property
    def min_orbit(self) -> int:
        return min(self.orbits) if self.orbits else 0


def orbit_lengths(partner: tuple[int, ...]) -> list[int]:
    """Cycle lengths of ``p -> partner[(p + 1) % 2n]``."""
    m = len(partner)
    seen = bytearray(m)
    out = []
    for start in range(m):
        if seen[start]:
            continue
        length = 0
        p = start
        while not seen[p]:
            seen[p] = 1
            p = partner[(p + 1) % m]
            length += 1
        out.append(length)
    return out


def boundary_profile(w: ChordWord) -> BoundaryProfile:
    orbits = tuple(sorted(orbit_lengths(partners(w.word))))
    b = len(orbits)
    twice_g = w.n + 1 - b
    g = twice_g // 2 if twice_g >= 0 and twice_g % 2 == 0 else None
    return BoundaryProfile(orbits, b, g)


def is_filling_system(w: ChordWord, g: int, k: int) -> bool:
    n = w.n
    if n == 0 or n != 2 * g + k:
        return False
    prof = boundary_profile(w)
    return prof.b == k + 1 and prof.min_orbit >= 3


@dataclass(frozen=True)
class FillingSystem:
    word: ChordWord
    g: int
    k: int
    profile: BoundaryProfile

    @classmethod
    def of(cls, w: ChordWord | tuple[int, ...]) -> "FillingSystem":
        """Classify ``w``; raise :class:`NotFillingError` if it is not filling for any genus."""
        if not isinstance(w, ChordWord):
            w = ChordWord(tuple(w))
        if w.n == 0:
            raise NotFillingError("empty diagram")
        prof = boundary_profile(w)
        if prof.g is None or prof.min_orbit < 3:
            raise NotFillingError(f"{w} has boundary cycles {prof.orbits}")
        return cls(w, prof.g, prof.b - 1, prof)

    @property
    def n(self) -> int:
        return self.word.n


def is_disconnected(w: ChordWord) -> bool:
    if w.n < 1:
        raise ValueError("empty diagram")
    return not is_connected_graph(crossing_graph(w))


def remove_chord(word: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Drop chord ``i`` and shift larger labels down; chord order is preserved."""
    return tuple(lab if lab < i else lab - 1 for lab in word if lab != i)


def delete_chord(u: FillingSystem, i: int) -> Optional[ChordWord]:
    """The face ``(u_1, ..., u_i hat, ..., u_n)``, or ``None`` when it is zero.

    The face is nonzero only if it is a (k-1)-filling system of the same genus.
    """
    n = u.n
    if not 1 <= i <= n:
        raise IndexError(f"chord {i} outside 1..{n}")
    rest = ChordWord(remove_chord(u.word.word, i))
    if u.k >= 1 and is_filling_system(rest, u.g, u.k - 1):
        return rest
    return None
