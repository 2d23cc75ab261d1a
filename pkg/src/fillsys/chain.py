"""Chain groups U_k and the differential between them.

U_k is presented as Z^c / <2 e_j : j torsion>.  Coefficients on torsion
classes are kept reduced to {0, 1}.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from .diagram import ChordWord, canonical_form
from .enumerate import DEFAULT_BUDGET, Basis, enumerate_basis
from .filling import FillingSystem, boundary_profile, remove_chord
from .zlinalg import SparseIntMatrix, torsion_relations, write_matrix_market

log = logging.getLogger(__name__)


class ChainConsistencyError(RuntimeError):
    """A face landed outside the target basis; the enumeration is incomplete."""


@dataclass(frozen=True)
class ChainVector:
    basis: Basis = field(repr=False)
    coeffs: Mapping[int, int]

    def __post_init__(self) -> None:
        tors = self.basis.classes
        clean = {}
        for i, v in self.coeffs.items():
            if tors[i].torsion:
                v %= 2
            if v:
                clean[i] = v
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainVector):
            return NotImplemented
        return (self.basis.g, self.basis.k) == (other.basis.g, other.basis.k) and self.coeffs == other.coeffs

    def __add__(self, other: "ChainVector") -> "ChainVector":
        out = dict(self.coeffs)
        for i, v in other.coeffs.items():
            out[i] = out.get(i, 0) + v
        return ChainVector(self.basis, out)

    def scale(self, a: int) -> "ChainVector":
        return ChainVector(self.basis, {i: a * v for i, v in self.coeffs.items()})

    def __neg__(self) -> "ChainVector":
        return self.scale(-1)

    def coefficient(self, word: tuple[int, ...]) -> int:
        return self.coeffs.get(self.basis.index[word], 0)

    def support(self) -> list[tuple[int, ...]]:
        return [self.basis.classes[i].word for i in self.coeffs]

    def __bool__(self) -> bool:
        return bool(self.coeffs)


def face_terms(word: tuple[int, ...], g: int, k: int) -> list[tuple[int, tuple[int, ...], int]]:
    """Nonzero faces of an ordered k-filling system of genus g.

    Returns ``(i, canonical word, coefficient)`` for each chord i whose
    deletion is a (k-1)-filling system of genus g; the coefficient is
    ``(-1)^(i-1)`` times the reordering sign (0 or 1 on order-two classes).
    """
    n = len(word) // 2
    out = []
    for i in range(1, n + 1):
        rest = remove_chord(word, i)
        prof = boundary_profile(ChordWord(rest))
        if prof.b != k or prof.min_orbit < 3:
            continue
        cword, sign, torsion = canonical_form(rest)
        coeff = 1 if torsion else (-1) ** (i - 1) * sign
        out.append((i, cword, coeff))
    return out


def differential_of_word(word: tuple[int, ...], g: int, k: int, target: Basis) -> ChainVector:
    if k < 1:
        raise ValueError("the differential is defined on U_k for k >= 1")
    coeffs: dict[int, int] = {}
    for _, cword, c in face_terms(tuple(word), g, k):
        idx = target.index.get(cword)
        if idx is None:
            raise ChainConsistencyError(f"face {cword} of {word} missing from U_{k - 1}")
        coeffs[idx] = coeffs.get(idx, 0) + c
    return ChainVector(target, coeffs)


def differential(u: FillingSystem | ChordWord, target: Optional[Basis] = None) -> ChainVector:
    """Boundary of an ordered filling system, expressed in the basis of U_{k-1}."""
    if not isinstance(u, FillingSystem):
        u = FillingSystem.of(u)
    if target is None:
        target = enumerate_basis(u.g, u.k - 1)
    return differential_of_word(u.word.word, u.g, u.k, target)


@dataclass
class DifferentialMatrix:
    rows: Basis
    cols: Basis
    columns: list[dict[int, int]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def torsion_rows(self) -> list[int]:
        return self.rows.torsion_indices

    @property
    def torsion_cols(self) -> list[int]:
        return self.cols.torsion_indices

    def sparse(self) -> SparseIntMatrix:
        return SparseIntMatrix.from_columns(len(self.rows), self.columns)

    def augmented(self) -> SparseIntMatrix:
        """[D | 2 e_j for each torsion row j]: presents U_{k-1} / image exactly."""
        return self.sparse().hstack(torsion_relations(len(self.rows), self.torsion_rows))

    def column_vector(self, c: int) -> ChainVector:
        return ChainVector(self.rows, self.columns[c])

    def export(self, mtx_path: Path) -> Path:
        """Write the MatrixMarket file and the torsion sidecar; returns the sidecar path."""
        mtx_path = Path(mtx_path)
        with open(mtx_path, "w", newline="\n") as fh:
            write_matrix_market(self.sparse(), fh)
        sidecar = mtx_path.with_suffix(mtx_path.suffix + ".torsion")
        rows = " ".join(str(i + 1) for i in self.torsion_rows)
        sidecar.write_text(f"torsion-rows: {rows}".rstrip() + "\n")
        return sidecar


def read_torsion_sidecar(path: Path) -> list[int]:
    """0-based row indices from a ``torsion-rows:`` sidecar."""
    text = Path(path).read_text().strip()
    key, _, rest = text.partition(":")
    if key != "torsion-rows":
        raise ValueError(f"not a torsion sidecar: {text[:40]!r}")
    return [int(x) - 1 for x in rest.split()]


def _columns_chunk(args):
    """Differential columns for a block of basis words, via the compiled face kernel."""
    import numpy as np

    from ._kernels import face_kernel

    words, g, k, target = args
    columns: list[dict[int, int]] = [{} for _ in words]
    if not words:
        return columns
    arr = np.array(words, dtype=np.int8)
    cols, faces, coeffs, tors = face_kernel(arr, k)
    index = target.index
    for c, face, coeff, t in zip(cols.tolist(), faces.tolist(), coeffs.tolist(), tors.tolist()):
        idx = index.get(tuple(face))
        if idx is None:
            raise ChainConsistencyError(f"face {face} of {words[c]} missing from U_{k - 1}")
        col = columns[c]
        v = col.get(idx, 0) + coeff
        if t:
            v %= 2
        if v:
            col[idx] = v
        else:
            col.pop(idx, None)
    return [dict(sorted(col.items())) for col in columns]


def assemble_matrix(
    g: int,
    k: int,
    workers: int = 1,
    cache_dir=None,
    budget: Optional[int] = DEFAULT_BUDGET,
) -> DifferentialMatrix:
    """Matrix of the differential U_k -> U_{k-1}, columns in basis order."""
    if k < 1:
        raise ValueError("k must be at least 1")
    cols = enumerate_basis(g, k, workers=workers, cache_dir=cache_dir, budget=budget)
    rows = enumerate_basis(g, k - 1, workers=workers, cache_dir=cache_dir, budget=budget)
    words = [c.word for c in cols]
    if workers > 1 and len(words) > 1000:
        size = -(-len(words) // (4 * workers))
        chunks = [(words[i : i + size], g, k, rows) for i in range(0, len(words), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            columns = [col for part in pool.map(_columns_chunk, chunks) for col in part]
    else:
        columns = _columns_chunk((words, g, k, rows))
    return DifferentialMatrix(rows, cols, columns)


def compose_is_zero(outer: DifferentialMatrix, inner: DifferentialMatrix) -> bool:
    """outer . inner == 0 with torsion rows of the product compared mod 2."""
    if outer.cols.k != inner.rows.k or outer.cols.g != inner.rows.g:
        raise ValueError("matrices do not compose")
    tors = set(outer.torsion_rows)
    for col in inner.columns:
        acc: dict[int, int] = {}
        for mid, a in col.items():
            for r, b in outer.columns[mid].items():
                acc[r] = acc.get(r, 0) + a * b
        for r, v in acc.items():
            if (v % 2 if r in tors else v) != 0:
                return False
    return True


def compose_check(g: int, workers: int = 1, cache_dir=None, budget: Optional[int] = DEFAULT_BUDGET) -> bool:
    d1 = assemble_matrix(g, 1, workers, cache_dir, budget)
    d2 = assemble_matrix(g, 2, workers, cache_dir, budget)
    return compose_is_zero(d1, d2)
