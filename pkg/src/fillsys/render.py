"""Deterministic SVG drawings of chord diagrams.

Points sit on a circle, starting at the top and going clockwise; chords are
straight segments labeled at their midpoints.  Coordinates are written with
six decimals so the output bytes depend only on the word and RENDER_VERSION.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional

from .diagram import ChordWord

RENDER_VERSION = 1
SIZE = 240.0
RADIUS = 100.0


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def point_xy(p: int, m: int) -> tuple[float, float]:
    angle = math.radians(90.0 - 360.0 * p / m)
    c = SIZE / 2
    return c + RADIUS * math.cos(angle), c - RADIUS * math.sin(angle)


def render_svg(w: ChordWord, title: Optional[str] = None) -> str:
    m = len(w.word)
    c = _fmt(SIZE / 2)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(SIZE)}" height="{_fmt(SIZE)}" '
        f'viewBox="0 0 {_fmt(SIZE)} {_fmt(SIZE)}">',
        f"<!-- fillsys render v{RENDER_VERSION}: {w} -->",
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append(f'<circle cx="{c}" cy="{c}" r="{_fmt(RADIUS)}" fill="none" stroke="black" stroke-width="1.000000"/>')
    for label, (p, q) in enumerate(w.chords(), start=1):
        x1, y1 = point_xy(p, m)
        x2, y2 = point_xy(q, m)
        out.append(
            f'<line class="chord" data-chord="{label}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="black" stroke-width="1.500000"/>'
        )
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        out.append(
            f'<text x="{_fmt(mx)}" y="{_fmt(my)}" font-size="10.000000" text-anchor="middle" '
            f'fill="firebrick">{label}</text>'
        )
    for p in range(m):
        x, y = point_xy(p, m)
        out.append(f'<circle class="point" cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.000000" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(w: ChordWord, path: Path, title: Optional[str] = None) -> None:
    Path(path).write_text(render_svg(w, title), newline="\n")
