"""Freeze the brute-force basis files and one-face counts used by the tests.

Uses only the plain-Python enumeration (no compiled kernel):

    python scripts/make_golden.py [outdir]
"""

import sys
from pathlib import Path

from fillsys.diagram import ChordWord
from fillsys.enumerate import (
    brute_force_basis,
    enumerate_matchings,
    one_face_count,
    word_of_matching,
)
from fillsys.filling import boundary_profile

CASES = [(1, 0), (2, 0), (2, 1), (3, 0)]


def labeled_one_face(n: int) -> int:
    return sum(boundary_profile(ChordWord(word_of_matching(m))).b == 1 for m in enumerate_matchings(2 * n))


def main(outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for g, k in CASES:
        basis = brute_force_basis(g, k)
        path = outdir / f"basis_g{g}_k{k}.txt"
        path.write_text(basis.to_text(), newline="\n")
        print(f"{path}: {len(basis)} classes, {len(basis.torsion_indices)} of order two")
    lines = []
    for n in (4, 6, 8):
        count = labeled_one_face(n)
        assert count == one_face_count(n), (n, count)
        lines.append(f"{n} {count}")
    (outdir / "one_face_counts.txt").write_text("\n".join(lines) + "\n", newline="\n")
    print("one-face counts:", "; ".join(lines))


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "tests" / "golden")
