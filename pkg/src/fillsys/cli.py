"""Command line interface.

Exit status: 0 success, 1 a verification check failed, 2 usage error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .chain import assemble_matrix
from .diagram import ChordWord, MalformedDiagramError, canonicalize, format_word
from .enumerate import DEFAULT_BUDGET, BudgetExceededError, enumerate_basis
from .figures import verify_vanishing
from .render import write_svg
from .zlinalg import cokernel

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    genus: Optional[int] = None
    k: Optional[int] = None
    word: Optional[str] = None
    out: Optional[Path] = None
    cache_dir: Optional[Path] = None
    budget: Optional[int] = DEFAULT_BUDGET
    workers: int = 1
    fmt: str = "text"
    stretch: bool = False

    def validate(self) -> None:
        if self.genus is not None and self.genus < 1:
            raise UsageError("--genus must be at least 1")
        if self.k is not None and self.k < 0:
            raise UsageError("--k must be nonnegative")
        if self.workers < 1:
            raise UsageError("--workers must be positive")
        if self.out is not None and not self.out.parent.exists():
            raise UsageError(f"output directory {self.out.parent} does not exist")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="worker processes (results do not depend on this)")
    common.add_argument("--cache-dir", type=Path, help="directory for basis cache files")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max matchings to scan")
    common.add_argument("--no-budget", action="store_true", help="lift the enumeration budget")
    common.add_argument("--format", dest="fmt", choices=("text", "machine"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="fillsys", description="Chord diagram chain complexes and the U_0 / d(U_1) computation.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common], help="write the basis of U_k")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out", type=Path)

    s = sub.add_parser("differential", parents=[common], help="export d: U_k -> U_{k-1} as MatrixMarket")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out", type=Path, required=True)

    s = sub.add_parser("coinvariants", parents=[common], help="compute U_0 / d(U_1)")
    s.add_argument("--genus", type=int, required=True)

    s = sub.add_parser("verify-paper", aliases=["verify-vanishing"], parents=[common], help="run every vanishing check")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--stretch", action="store_true", help="allow genus >= 4 (Hermite + modular certificate)")

    s = sub.add_parser("canonical", parents=[common], help="canonical class of a word")
    s.add_argument("--word", required=True)

    s = sub.add_parser("render", parents=[common], help="draw a word as SVG")
    s.add_argument("--word", required=True)
    s.add_argument("--out", type=Path, required=True)
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        genus=getattr(ns, "genus", None),
        k=getattr(ns, "k", None),
        word=getattr(ns, "word", None),
        out=getattr(ns, "out", None),
        cache_dir=ns.cache_dir,
        budget=None if ns.no_budget else ns.budget,
        workers=ns.workers,
        fmt=ns.fmt,
        stretch=getattr(ns, "stretch", False),
    )


def run(cfg: RunConfig) -> int:
    cfg.validate()
    kw = dict(workers=cfg.workers, cache_dir=cfg.cache_dir, budget=cfg.budget)

    if cfg.command == "enumerate":
        text = enumerate_basis(cfg.genus, cfg.k, **kw).to_text()
        if cfg.out:
            cfg.out.write_text(text, newline="\n")
        else:
            sys.stdout.write(text)
        return EXIT_OK

    if cfg.command == "differential":
        if cfg.k < 1:
            raise UsageError("--k must be at least 1 for a differential")
        d = assemble_matrix(cfg.genus, cfg.k, **kw)
        sidecar = d.export(cfg.out)
        print(f"wrote {cfg.out} ({d.shape[0]}x{d.shape[1]}, {d.sparse().nnz} entries) and {sidecar}")
        return EXIT_OK

    if cfg.command == "coinvariants":
        d = assemble_matrix(cfg.genus, 1, **kw)
        group = cokernel(d.augmented())
        if cfg.fmt == "machine":
            print(f"COKERNEL genus={cfg.genus} free_rank={group.free_rank} torsion={','.join(map(str, group.torsion)) or '-'}")
        else:
            print(f"U_0 / d(U_1) at genus {cfg.genus}: {group}  (|U_0| = {d.shape[0]}, |U_1| = {d.shape[1]})")
        return EXIT_OK

    if cfg.command in ("verify-paper", "verify-vanishing"):
        if cfg.genus < 2:
            raise UsageError("verify-paper needs --genus >= 2")
        report = verify_vanishing(cfg.genus, stretch=cfg.stretch, **kw)
        sys.stdout.write(report.machine() if cfg.fmt == "machine" else report.text())
        return EXIT_OK if report.passed else EXIT_CHECK

    w = ChordWord.parse(cfg.word)
    if cfg.command == "canonical":
        cls, sign = canonicalize(w)
        if cfg.fmt == "machine":
            print(f"{format_word(cls.word)} {sign:+d} {int(cls.torsion)}")
        else:
            print(f"canonical: {format_word(cls.word)}")
            print(f"sign: {sign:+d}")
            print(f"torsion: {'yes' if cls.torsion else 'no'}")
        return EXIT_OK

    if cfg.command == "render":
        write_svg(w, cfg.out)
        return EXIT_OK

    raise UsageError(f"unknown command {cfg.command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return run(_config(ns))
    except (UsageError, MalformedDiagramError) as exc:
        print(f"fillsys: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"fillsys: budget: {exc} (pass --no-budget to override)", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"fillsys: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
