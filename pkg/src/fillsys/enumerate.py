"""Enumeration of the basis of U_k: filling systems up to rotation."""

from __future__ import annotations

import logging
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator, Optional

import numpy as np

from .diagram import CanonicalClass, ChordWord, canonical_form, format_word
from .filling import is_filling_system

log = logging.getLogger(__name__)

CACHE_MAGIC = "# fillsys basis v1"
# 19!! matchings, i.e. everything up to 20 points
DEFAULT_BUDGET = math.prod(range(1, 20, 2))


class BudgetExceededError(RuntimeError):
    pass


def double_factorial_odd(n: int) -> int:
    """(2n - 1)!!, the number of perfect matchings on 2n points."""
    return math.prod(range(1, 2 * n, 2))


def one_face_count(n: int) -> int:
    """Closed form (2n)! / (2^n (n+1)!) for one-face matchings on 2n points."""
    return math.factorial(2 * n) // (2**n * math.factorial(n + 1))


@dataclass(frozen=True)
class Basis:
    g: int
    k: int
    classes: tuple[CanonicalClass, ...]
    index: dict[tuple[int, ...], int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self.index:
            self.index.update({c.word: i for i, c in enumerate(self.classes)})

    @property
    def n(self) -> int:
        return 2 * self.g + self.k

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i: int) -> CanonicalClass:
        return self.classes[i]

    def __iter__(self) -> Iterator[CanonicalClass]:
        return iter(self.classes)

    @property
    def torsion_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c.torsion]

    def to_text(self) -> str:
        lines = [
            CACHE_MAGIC,
            f"genus={self.g} k={self.k} n={self.n} count={len(self)}",
        ]
        lines += [f"{format_word(c.word)} {int(c.torsion)}" for c in self.classes]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Basis":
        lines = text.splitlines()
        if not lines or lines[0] != CACHE_MAGIC:
            raise ValueError("not a fillsys basis file")
        head = dict(tok.split("=") for tok in lines[1].split())
        g, k, n, count = (int(head[key]) for key in ("genus", "k", "n", "count"))
        if n != 2 * g + k:
            raise ValueError(f"inconsistent header {lines[1]!r}")
        classes = []
        for i, line in enumerate(lines[2:]):
            *labels, tors = line.split()
            classes.append(CanonicalClass(tuple(int(x) for x in labels), tors == "1", i))
        if len(classes) != count:
            raise ValueError(f"expected {count} classes, found {len(classes)}")
        return cls(g, k, tuple(classes))


def _make_basis(g: int, k: int, entries) -> Basis:
    entries = sorted(entries)
    return Basis(g, k, tuple(CanonicalClass(w, t, i) for i, (w, t) in enumerate(entries)))


def enumerate_matchings(point_count: int, visitor: Optional[Callable] = None) -> Iterator[tuple[int, ...]]:
    """Yield every perfect matching on ``0..point_count-1`` as a partner tuple.

    The smallest unmatched point is always paired next, so the order is
    deterministic.  If ``visitor`` is given it is called on each matching too.
    """
    if point_count % 2 or point_count < 2:
        raise ValueError("point count must be even and >= 2")
    partner = [-1] * point_count

    def rec(free: int) -> Iterator[tuple[int, ...]]:
        if free == 0:
            m = tuple(partner)
            if visitor is not None:
                visitor(m)
            yield m
            return
        a = partner.index(-1)
        for c in range(a + 1, point_count):
            if partner[c] == -1:
                partner[a], partner[c] = c, a
                yield from rec(free - 2)
                partner[a] = partner[c] = -1

    yield from rec(point_count)


def word_of_matching(partner: tuple[int, ...]) -> tuple[int, ...]:
    labels = [0] * len(partner)
    nxt = 1
    for p, q in enumerate(partner):
        if q > p:
            labels[p] = labels[q] = nxt
            nxt += 1
    return tuple(labels)


def brute_force_basis(g: int, k: int) -> Basis:
    """Reference enumeration in plain Python: filter all matchings, canonicalize, dedup.

    Independent of the compiled kernel; used to produce the golden files.
    """
    n = 2 * g + k
    seen: dict[tuple[int, ...], bool] = {}
    for m in enumerate_matchings(2 * n):
        w = ChordWord(word_of_matching(m))
        if is_filling_system(w, g, k):
            word, _, torsion = canonical_form(w.word)
            seen[word] = torsion
    return _make_basis(g, k, seen.items())


def _scan(args):
    from ._kernels import scan_subtree

    m, first, k, canonical_only = args
    words, tors, visited = scan_subtree(m, first, k, canonical_only)
    return words, tors, visited


def _scan_all(n: int, k: int, canonical_only: bool, workers: int):
    m = 2 * n
    jobs = [(m, first, k, canonical_only) for first in range(1, m)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan, jobs))
    return [_scan(job) for job in jobs]


def count_labeled_filling(n: int, k: int, workers: int = 1) -> int:
    """Number of matchings on 2n points that are k-filling (no rotation quotient)."""
    if n < 1:
        return 0
    return sum(len(t) for _, t, _ in _scan_all(n, k, False, workers))


def _cache_path(cache_dir: Path, g: int, k: int) -> Path:
    return Path(cache_dir) / f"basis_g{g}_k{k}.txt"


def write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _load_cache(path: Path, g: int, k: int) -> Optional[Basis]:
    try:
        basis = Basis.from_text(path.read_text())
    except (OSError, ValueError, KeyError, IndexError):
        return None
    if (basis.g, basis.k) != (g, k):
        return None
    return basis


def enumerate_basis(
    g: int,
    k: int,
    workers: int = 1,
    cache_dir: Optional[os.PathLike] = None,
    budget: Optional[int] = DEFAULT_BUDGET,
) -> Basis:
    """Canonical classes of all k-filling systems of genus g, sorted.

    Work is split by the partner of point 0; the result does not depend on
    ``workers``.  ``budget`` caps the number of matchings scanned (``None``
    lifts the cap); a usable cache file bypasses the cap.
    """
    if g < 0 or k < 0:
        raise ValueError("genus and k must be nonnegative")
    if cache_dir is not None:
        cached = _load_cache(_cache_path(cache_dir, g, k), g, k)
        if cached is not None:
            return cached
    basis = _enumerate_cached(g, k, workers, budget)
    if cache_dir is not None:
        write_atomic(_cache_path(cache_dir, g, k), basis.to_text())
    return basis


def check_budget(n: int, budget: Optional[int]) -> None:
    total = double_factorial_odd(n)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            f"{2 * n} points means {total} matchings, over the budget of {budget}"
        )


@lru_cache(maxsize=32)
def _enumerate_cached(g: int, k: int, workers: int, budget: Optional[int]) -> Basis:
    n = 2 * g + k
    if n == 0:
        return Basis(g, k, ())
    check_budget(n, budget)
    log.info("enumerating U_%d at genus %d: %d matchings", k, g, double_factorial_odd(n))
    entries = []
    for words, tors, _ in _scan_all(n, k, True, workers):
        entries += [(tuple(row), bool(t)) for row, t in zip(words.tolist(), tors.tolist())]
    return _make_basis(g, k, entries)


def basis_as_array(basis: Basis) -> np.ndarray:
    return np.array([c.word for c in basis.classes], dtype=np.int8).reshape(len(basis), 2 * basis.n)
