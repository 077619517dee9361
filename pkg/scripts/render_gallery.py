#!/usr/bin/env python3
"""Render a gallery of depth-2 trusses from the deterministic tower family.

Writes one SVG per tower plus an index.html that inlines them all, so the
whole family can be eyeballed in a browser.

Usage:
    python3 scripts/render_gallery.py --out gallery/
    python3 scripts/render_gallery.py --out gallery/ --limit 12 --width 160
"""

import argparse
import html
import pathlib
import sys

from trusskit import layout_2truss, scene_to_svg
from trusskit.oracles import tower_family


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-ordinal", type=int, default=2)
    parser.add_argument("--limit", type=int, default=None, help="render at most this many")
    parser.add_argument("--width", type=int, default=120, help="display edge length in pixels")
    args = parser.parse_args(argv)

    towers = [t for t in tower_family(args.seed, args.max_ordinal) if t.depth == 2]
    if args.limit is not None:
        towers = towers[: args.limit]
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    for k, t in enumerate(towers):
        scene = layout_2truss(t)
        svg = scene_to_svg(scene)
        name = f"truss_{k:03d}.svg"
        (out / name).write_text(svg)
        caption = (
            f"{k:03d}: {scene.counts['regions']} regions,"
            f" {scene.counts['wires']} wires, {scene.counts['nodes']} nodes"
        )
        rows.append(
            f'<figure><img src="{name}" width="{args.width}" alt="{html.escape(caption)}">'
            f"<figcaption>{html.escape(caption)}</figcaption></figure>"
        )

    page = (
        "<!doctype html>\n<meta charset='utf-8'>\n<title>truss gallery</title>\n"
        "<style>figure{display:inline-block;margin:6px;font:12px monospace}"
        "img{border:1px solid #ccc}</style>\n" + "\n".join(rows) + "\n"
    )
    (out / "index.html").write_text(page)
    print(f"wrote {len(towers)} svg file(s) and index.html to {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
