"""Draw X, Y and Z for one genus as SVG files.

    python scripts/render_figures.py --genus 3 --out figures/
"""

import argparse
from pathlib import Path

from fillsys.figures import build_x, build_y, build_z
from fillsys.render import write_svg


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--genus", type=int, default=3)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for name, build in (("X", build_x), ("Y", build_y), ("Z", build_z)):
        u = build(args.genus)
        path = args.out / f"{name}_g{args.genus}.svg"
        write_svg(u.word, path, title=f"{name}, genus {args.genus}: {u.word}")
        print(f"{path}: {u.word}")


if __name__ == "__main__":
    main()
