"""Geometric layout of depth-2 trusses.

The first stage fixes horizontal singular levels on the vertical axis; the
second stage's fibers put singular points on each level and band.  Every
element of the stage-2 total space becomes one scene element:

  regular over regular   -> region (a quad between attachment heights)
  singular over regular  -> wire (a segment crossing the band)
  singular over singular -> node (a point on its level)

Attachments across band boundaries follow the interval duals of the
stage-2 covering maps; outer boundaries keep the band's own positions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import LayoutError
from .ordinal import dual_delta_to_nabla
from .poset import POINT_ELEMENT, point_poset
from .strata import Stratum
from .tower import TrussTower
from .mesh import compactify, realize_1truss
from .serialize import element_key


@dataclass(frozen=True)
class Region:
    key: str
    label: object
    corners: tuple


@dataclass(frozen=True)
class Wire:
    key: str
    label: object
    points: tuple


@dataclass(frozen=True)
class Node:
    key: str
    label: object
    x: object
    y: object


@dataclass(frozen=True)
class Scene:
    regions: tuple
    wires: tuple
    nodes: tuple

    @property
    def counts(self) -> dict:
        return {
            "regions": len(self.regions),
            "wires": len(self.wires),
            "nodes": len(self.nodes),
        }


def layout_2truss(t: TrussTower) -> Scene:
    """Lay out a depth-2 truss over the point as regions, wires and nodes."""
    if not isinstance(t, TrussTower) or t.base != point_poset():
        raise LayoutError("layout needs a truss tower over the point")
    if t.depth != 2:
        raise LayoutError(f"layout supports depth 2 only, got depth {t.depth}")
    s1, s2 = t.stages
    n = s1.ord[POINT_ELEMENT].n
    vertical = compactify(realize_1truss(n))

    def reg1(i):
        return (POINT_ELEMENT, Stratum.regular(i, n))

    def sing1(j):
        return (POINT_ELEMENT, Stratum.singular(j, n))

    fiber = {x: compactify(realize_1truss(s2.ord[x])) for x in s2.base.elements}

    def attach(band: int, idx: int, top: bool):
        # top/bottom boundary position of sheet idx of band i; outer
        # boundaries keep the band's own fiber positions
        level = band if top else band - 1
        if 0 <= level < n:
            sigma = dual_delta_to_nabla(s2.arrow[(sing1(level), reg1(band))])
            return fiber[sing1(level)][sigma(idx)]
        return fiber[reg1(band)][idx]

    regions = []
    wires = []
    nodes = []
    for i in range(n + 1):
        x = reg1(i)
        m = s2.ord[x].n
        y_bot, y_top = vertical[i], vertical[i + 1]
        for j in range(m + 1):
            el = (x, Stratum.regular(j, m))
            regions.append(Region(
                key=element_key(el),
                label=t.labels.on_objects[el],
                corners=(
                    (attach(i, j, False), y_bot),
                    (attach(i, j + 1, False), y_bot),
                    (attach(i, j + 1, True), y_top),
                    (attach(i, j, True), y_top),
                ),
            ))
        for k in range(m):
            el = (x, Stratum.singular(k, m))
            wires.append(Wire(
                key=element_key(el),
                label=t.labels.on_objects[el],
                points=(
                    (attach(i, k + 1, False), y_bot),
                    (attach(i, k + 1, True), y_top),
                ),
            ))
    for j in range(n):
        x = sing1(j)
        m = s2.ord[x].n
        for k in range(m):
            el = (x, Stratum.singular(k, m))
            nodes.append(Node(
                key=element_key(el),
                label=t.labels.on_objects[el],
                x=fiber[x][k + 1],
                y=vertical[j + 1],
            ))
    return Scene(
        regions=tuple(sorted(regions, key=lambda r: r.key)),
        wires=tuple(sorted(wires, key=lambda w: w.key)),
        nodes=tuple(sorted(nodes, key=lambda p: p.key)),
    )


def _coord(v) -> str:
    text = format(float(v), ".4f").rstrip("0").rstrip(".")
    return text if text else "0"


def _sx(x) -> str:
    return _coord((x + 1) * 50)


def _sy(y) -> str:
    return _coord((1 - y) * 50)


def _svg_id(prefix: str, key: str) -> str:
    return prefix + "-" + re.sub(r"[^A-Za-z0-9_-]", "-", key)


def scene_to_svg(scene: Scene, node_radius=3) -> str:
    """Deterministic SVG 1.1 text for a scene; same scene, same bytes."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 100 100">',
    ]
    for r in scene.regions:
        path = " L ".join(f"{_sx(x)},{_sy(y)}" for x, y in r.corners)
        lines.append(
            f'  <path id="{_svg_id("region", r.key)}" d="M {path} Z" '
            'fill="#dce6f2" stroke="#8aa0b8" stroke-width="0.4"/>'
        )
    for w in scene.wires:
        pts = " ".join(f"{_sx(x)},{_sy(y)}" for x, y in w.points)
        lines.append(
            f'  <polyline id="{_svg_id("wire", w.key)}" points="{pts}" '
            'fill="none" stroke="#1d3352" stroke-width="1.2"/>'
        )
    for p in scene.nodes:
        lines.append(
            f'  <circle id="{_svg_id("node", p.key)}" cx="{_sx(p.x)}" cy="{_sy(p.y)}" '
            f'r="{node_radius}" fill="#132031"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
