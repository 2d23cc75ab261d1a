"""Exact integer linear algebra on sparse matrices.

Everything here works with Python ints, so there is no overflow.  The main
entry points are :func:`smith_normal_form`, :func:`cokernel` and
:func:`solve_in_image`.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, TextIO

Vector = dict[int, int]


@dataclass
class SparseIntMatrix:
    rows: int
    cols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (r, c), v in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v == 0:
                del self.entries[r, c]

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]]) -> "SparseIntMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(r, c): int(v) for r, row in enumerate(data) for c, v in enumerate(row) if v})

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, int]]) -> "SparseIntMatrix":
        entries = {(r, c): v for c, col in enumerate(columns) for r, v in col.items() if v}
        return cls(rows, len(columns), entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def columns(self) -> list[Vector]:
        cols: list[Vector] = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def matvec(self, y: Mapping[int, int]) -> Vector:
        cols = self.columns()
        out: Vector = {}
        for c, a in y.items():
            if not 0 <= c < self.cols:
                raise IndexError(f"column {c} outside 0..{self.cols - 1}")
            for r, v in cols[c].items():
                out[r] = out.get(r, 0) + a * v
        return {r: v for r, v in out.items() if v}

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[r, c] = out.get((r, c), 0) + v * w
        return SparseIntMatrix(self.rows, other.cols, out)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseIntMatrix":
        """Entry (r, c) moves to (row_perm[r], col_perm[c])."""
        return SparseIntMatrix(
            self.rows, self.cols, {(row_perm[r], col_perm[c]): v for (r, c), v in self.entries.items()}
        )

    def hstack(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        entries = dict(self.entries)
        entries.update({(r, c + self.cols): v for (r, c), v in other.entries.items()})
        return SparseIntMatrix(self.rows, self.cols + other.cols, entries)


@dataclass
class SnfResult:
    invariant_factors: tuple[int, ...]
    rank: int
    # with transforms: input == P @ D @ Q, D = diag(invariant_factors) padded to the input shape
    P: Optional[list[list[int]]] = None
    Q: Optional[list[list[int]]] = None

    def diagonal(self, rows: int, cols: int) -> list[list[int]]:
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(self.invariant_factors):
            out[i][i] = d
        return out


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/t_1 + ... with 1 < t_1 | t_2 | ..."""

    free_rank: int
    torsion: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


class _Transforms:
    """Keeps ``input == P @ M @ Q`` while row and column operations act on M."""

    def __init__(self, rows: int, cols: int) -> None:
        self.Pcols: list[Vector] = [{i: 1} for i in range(rows)]
        self.Qrows: list[Vector] = [{i: 1} for i in range(cols)]

    @staticmethod
    def _mix(vecs: list[Vector], i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # (v_i, v_j) <- (a v_i + b v_j, c v_i + d v_j)
        vi, vj = vecs[i], vecs[j]
        ni: Vector = {}
        nj: Vector = {}
        for key in set(vi) | set(vj):
            x, y = vi.get(key, 0), vj.get(key, 0)
            s, t = a * x + b * y, c * x + d * y
            if s:
                ni[key] = s
            if t:
                nj[key] = t
        vecs[i], vecs[j] = ni, nj

    def row_op(self, i: int, j: int, s: int, t: int, u: int, v: int) -> None:
        # rows (i, j) of M were multiplied by A = [[s, t], [u, v]]; P <- P A^-1
        det = s * v - t * u
        self._mix(self.Pcols, i, j, v * det, -u * det, -t * det, s * det)

    def col_op(self, i: int, j: int, s: int, t: int, u: int, v: int) -> None:
        # cols (i, j) of M <- (s c_i + u c_j, t c_i + v c_j), i.e. M B with B = [[s, t], [u, v]]; Q <- B^-1 Q
        det = s * v - t * u
        self._mix(self.Qrows, i, j, v * det, -t * det, -u * det, s * det)

    def dense(self, rows: int, cols: int) -> tuple[list[list[int]], list[list[int]]]:
        P = [[0] * rows for _ in range(rows)]
        for c, col in enumerate(self.Pcols):
            for r, v in col.items():
                P[r][c] = v
        Q = [[0] * cols for _ in range(cols)]
        for r, row in enumerate(self.Qrows):
            for c, v in row.items():
                Q[r][c] = v
        return P, Q


class _Eliminator:
    """Sparse unimodular elimination with row and column dictionaries."""

    def __init__(self, m: SparseIntMatrix, transforms: bool) -> None:
        self.rowd: dict[int, Vector] = {}
        self.cold: dict[int, Vector] = {}
        for (r, c), v in m.entries.items():
            self.rowd.setdefault(r, {})[c] = v
            self.cold.setdefault(c, {})[r] = v
        self.tf = _Transforms(m.rows, m.cols) if transforms else None

    def _set(self, r: int, c: int, v: int) -> None:
        if v:
            self.rowd.setdefault(r, {})[c] = v
            self.cold.setdefault(c, {})[r] = v
        else:
            row = self.rowd.get(r)
            if row is not None and c in row:
                del row[c]
                if not row:
                    del self.rowd[r]
                col = self.cold[c]
                del col[r]
                if not col:
                    del self.cold[c]

    def row_mix(self, i: int, j: int, s: int, t: int, u: int, v: int) -> None:
        ri, rj = dict(self.rowd.get(i, {})), dict(self.rowd.get(j, {}))
        for c in set(ri) | set(rj):
            x, y = ri.get(c, 0), rj.get(c, 0)
            self._set(i, c, s * x + t * y)
            self._set(j, c, u * x + v * y)
        if self.tf:
            self.tf.row_op(i, j, s, t, u, v)

    def col_mix(self, i: int, j: int, s: int, t: int, u: int, v: int) -> None:
        ci, cj = dict(self.cold.get(i, {})), dict(self.cold.get(j, {}))
        for r in set(ci) | set(cj):
            x, y = ci.get(r, 0), cj.get(r, 0)
            self._set(r, i, s * x + u * y)
            self._set(r, j, t * x + v * y)
        if self.tf:
            self.tf.col_op(i, j, s, t, u, v)

    def pick_pivot(self) -> tuple[int, int]:
        best = None
        for r, row in self.rowd.items():
            rn = len(row) - 1
            for c, v in row.items():
                key = (abs(v), rn * (len(self.cold[c]) - 1), r, c)
                if best is None or key < best:
                    best = key
                    if key[0] == 1 and key[1] == 0:
                        return r, c
        assert best is not None
        return best[2], best[3]

    def clear_pivot(self, i: int, j: int) -> int:
        """Reduce row i and column j to the single entry (i, j); return that entry."""
        while True:
            a = self.rowd[i][j]
            for r, b in list(self.cold[j].items()):
                if r == i:
                    continue
                if b % a:
                    d, s, t = ext_gcd(a, b)
                    self.row_mix(i, r, s, t, -b // d, a // d)
                    a = d
                else:
                    self.row_mix(i, r, 1, 0, -(b // a), 1)
            dirty = False
            for c, b in list(self.rowd[i].items()):
                if c == j:
                    continue
                if b % a:
                    d, s, t = ext_gcd(a, b)
                    # c_j <- s c_j + t c_c, c_c <- -b/d c_j + a/d c_c
                    self.col_mix(j, c, s, -b // d, t, a // d)
                    a = d
                    dirty = True
                elif self.tf or dirty:
                    self.col_mix(j, c, 1, -(b // a), 0, 1)
                else:
                    # column j is zero outside row i, so this only clears (i, c)
                    self._set(i, c, 0)
            if not dirty:
                return a

    def negate_row(self, i: int) -> None:
        for c, v in list(self.rowd[i].items()):
            self._set(i, c, -v)
        if self.tf:
            self.tf.Pcols[i] = {r: -v for r, v in self.tf.Pcols[i].items()}

    def detach(self, i: int, j: int) -> None:
        del self.rowd[i]
        del self.cold[j]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(d, s, t) with d = gcd(a, b) = s a + t b and d > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    x, y = a, b
    while y:
        q = x // y
        x, y = y, x - q * y
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if x < 0:
        x, s0, t0 = -x, -s0, -t0
    return x, s0, t0


def _normalize_diagonal(diag: list[int], tf: Optional[_Transforms] = None) -> list[int]:
    """Turn a diagonal into a divisibility chain, applying the same 2x2 moves to transforms."""
    diag = list(diag)
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            d, s, t = ext_gcd(a, b)
            if tf:
                tf.col_op(i, j, 1, 0, 1, 1)
                tf.row_op(i, j, s, t, -b // d, a // d)
                tf.col_op(i, j, 1, -(t * b) // d, 0, 1)
            diag[i], diag[j] = d, a * b // d
    return diag


def smith_normal_form(m: SparseIntMatrix, transforms: bool = False) -> SnfResult:
    """Invariant factors of ``m`` over Z.

    Pivots are entries of least absolute value, ties broken by fill-in cost
    and then by (row, col), so the run is deterministic.  With ``transforms``
    the unimodular P and Q with ``m == P @ D @ Q`` are returned as dense lists.
    """
    el = _Eliminator(m, transforms)
    pivots: list[tuple[int, int, int]] = []
    while el.rowd:
        i, j = el.pick_pivot()
        a = el.clear_pivot(i, j)
        if a < 0:
            el.negate_row(i)
            a = -a
        pivots.append((i, j, a))
        el.detach(i, j)

    tf = el.tf
    if tf:
        # move pivot t to position (t, t)
        row_at = list(range(m.rows))  # row_at[pos] = original row index now at pos
        col_at = list(range(m.cols))
        row_pos = list(range(m.rows))
        col_pos = list(range(m.cols))
        for t, (i, j, _) in enumerate(pivots):
            pi = row_pos[i]
            if pi != t:
                tf.row_op(t, pi, 0, 1, 1, 0)
                other = row_at[t]
                row_at[t], row_at[pi] = i, other
                row_pos[i], row_pos[other] = t, pi
            pj = col_pos[j]
            if pj != t:
                tf.col_op(t, pj, 0, 1, 1, 0)
                other = col_at[t]
                col_at[t], col_at[pj] = j, other
                col_pos[j], col_pos[other] = t, pj
    diag = _normalize_diagonal([a for _, _, a in pivots], tf)
    P = Q = None
    if tf:
        P, Q = tf.dense(m.rows, m.cols)
    return SnfResult(tuple(diag), len(diag), P, Q)


def invariant_factors(m: SparseIntMatrix) -> tuple[int, ...]:
    return smith_normal_form(m).invariant_factors


def cokernel(m: SparseIntMatrix) -> AbelianGroup:
    """Z^rows / image(m)."""
    snf = smith_normal_form(m)
    return AbelianGroup(m.rows - snf.rank, tuple(d for d in snf.invariant_factors if d > 1))


def torsion_relations(rows: int, torsion_rows: Iterable[int]) -> SparseIntMatrix:
    """Columns 2 e_j, one per order-two generator."""
    torsion_rows = list(torsion_rows)
    return SparseIntMatrix(rows, len(torsion_rows), {(r, c): 2 for c, r in enumerate(torsion_rows)})


class ImageLattice:
    """Column echelon (Hermite-type) basis of the lattice spanned by inserted vectors.

    Basis vectors are keyed by their leading (smallest) row index and carry a
    positive leading entry.  With ``track`` each one also remembers its
    expression in the inserted generators, which is what makes
    :meth:`solve` return a certificate.
    """

    def __init__(self, rows: int, track: bool = True) -> None:
        self.rows = rows
        self.track = track
        self.basis: dict[int, tuple[Vector, Vector]] = {}

    @staticmethod
    def _axpy(y: Vector, a: int, x: Mapping[int, int]) -> None:
        for key, v in x.items():
            s = y.get(key, 0) + a * v
            if s:
                y[key] = s
            else:
                y.pop(key, None)

    @staticmethod
    def _comb(a: int, x: Vector, b: int, y: Vector) -> Vector:
        out: Vector = {}
        for key in set(x) | set(y):
            s = a * x.get(key, 0) + b * y.get(key, 0)
            if s:
                out[key] = s
        return out

    def insert(self, vec: Mapping[int, int], label: Optional[int] = None) -> None:
        vec = {r: v for r, v in vec.items() if v}
        expr: Vector = {label: 1} if self.track and label is not None else {}
        while vec:
            p = min(vec)
            a = vec[p]
            if p not in self.basis:
                if a < 0:
                    vec = {r: -v for r, v in vec.items()}
                    expr = {c: -v for c, v in expr.items()}
                self.basis[p] = (vec, expr)
                return
            bvec, bexpr = self.basis[p]
            b = bvec[p]
            if a % b == 0:
                q = a // b
                self._axpy(vec, -q, bvec)
                if self.track:
                    self._axpy(expr, -q, bexpr)
                continue
            d, s, t = ext_gcd(b, a)
            new_vec = self._comb(s, bvec, t, vec)
            rest = self._comb(a // d, bvec, -(b // d), vec)
            if self.track:
                new_expr = self._comb(s, bexpr, t, expr)
                expr = self._comb(a // d, bexpr, -(b // d), expr)
            else:
                new_expr = {}
            self.basis[p] = (new_vec, new_expr)
            vec = rest

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_everything(self) -> bool:
        """True when the lattice is all of Z^rows (triangular with unit diagonal)."""
        return len(self.basis) == self.rows and all(v[p] == 1 for p, (v, _) in self.basis.items())

    def reduce(self, vec: Mapping[int, int]) -> tuple[Vector, Vector]:
        """Subtract lattice vectors greedily; returns (remainder, expression used)."""
        w = {r: v for r, v in vec.items() if v}
        used: Vector = {}
        heap = list(w)
        heapq.heapify(heap)
        last = -1
        while heap:
            p = heapq.heappop(heap)
            if p == last:
                continue
            last = p
            a = w.get(p, 0)
            if not a or p not in self.basis:
                continue
            bvec, bexpr = self.basis[p]
            q = a // bvec[p]
            if not q:
                continue
            for r, x in bvec.items():
                s = w.get(r, 0) - q * x
                if s:
                    if r not in w:
                        heapq.heappush(heap, r)
                    w[r] = s
                else:
                    w.pop(r, None)
            if self.track:
                self._axpy(used, q, bexpr)
        return w, used

    def contains(self, vec: Mapping[int, int]) -> bool:
        return not self.reduce(vec)[0]

    def solve(self, vec: Mapping[int, int]) -> Optional[Vector]:
        if not self.track:
            raise ValueError("lattice was built without tracking; use contains()")
        rem, used = self.reduce(vec)
        return None if rem else used


def image_lattice(m: SparseIntMatrix, track: bool = True, stop_when_full: bool = True) -> ImageLattice:
    lat = ImageLattice(m.rows, track)
    for c, col in enumerate(m.columns()):
        if stop_when_full and lat.is_everything():
            break
        lat.insert(col, c)
    return lat


def solve_in_image(
    m: SparseIntMatrix, v: Mapping[int, int], lattice: Optional[ImageLattice] = None
) -> Optional[Vector]:
    """Integer ``y`` (sparse, keyed by column) with ``m @ y == v``, or None if v is not in the image.

    The certificate is checked by multiplication before it is returned.
    """
    for r in v:
        if not 0 <= r < m.rows:
            raise ValueError(f"row {r} outside 0..{m.rows - 1}")
    lat = lattice if lattice is not None else image_lattice(m)
    y = lat.solve(v)
    if y is None:
        return None
    if m.matvec(y) != {r: x for r, x in v.items() if x}:
        raise ArithmeticError("membership certificate failed to verify")
    return y


def rank_mod_p(m: SparseIntMatrix, p: int) -> int:
    """Rank over GF(p) by incremental row-echelon insertion of the columns."""
    pivots: dict[int, Vector] = {}
    for col in m.columns():
        vec = {r: v % p for r, v in col.items() if v % p}
        while vec:
            lead = min(vec)
            if lead not in pivots:
                inv = pow(vec[lead], -1, p)
                pivots[lead] = {r: v * inv % p for r, v in vec.items()}
                break
            q = vec[lead]
            for r, v in pivots[lead].items():
                s = (vec.get(r, 0) - q * v) % p
                if s:
                    vec[r] = s
                else:
                    vec.pop(r, None)
        if len(pivots) == m.rows:
            break
    return len(pivots)


MM_HEADER = "%%MatrixMarket matrix coordinate integer general"


def write_matrix_market(m: SparseIntMatrix, fh: TextIO) -> None:
    """Exact integer coordinate format, 1-based, entries sorted by (column, row)."""
    fh.write(MM_HEADER + "\n")
    fh.write(f"{m.rows} {m.cols} {m.nnz}\n")
    for (r, c), v in sorted(m.entries.items(), key=lambda e: (e[0][1], e[0][0])):
        fh.write(f"{r + 1} {c + 1} {v}\n")


def read_matrix_market(fh: TextIO) -> SparseIntMatrix:
    header = fh.readline().strip()
    if header.lower() != MM_HEADER.lower():
        raise ValueError(f"unsupported MatrixMarket header {header!r}")
    line = fh.readline()
    while line.startswith("%"):
        line = fh.readline()
    rows, cols, nnz = (int(x) for x in line.split())
    entries: dict[tuple[int, int], int] = {}
    for _ in range(nnz):
        r, c, v = fh.readline().split()
        entries[int(r) - 1, int(c) - 1] = int(v)
    return SparseIntMatrix(rows, cols, entries)


def gcd_all(values: Iterable[int]) -> int:
    out = 0
    for v in values:
        out = math.gcd(out, v)
    return out
