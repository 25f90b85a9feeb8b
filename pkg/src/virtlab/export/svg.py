"""SVG polar plots for pattern cuts (linear radial scale)."""

from __future__ import annotations

import math

from ..patterns import PlaneCut

GRID_RINGS = (0.25, 0.5, 0.75, 1.0)
GRID_COLOR = "#C8C8C8"


def _px(x: float) -> str:
    s = "%.2f" % x
    return "0.00" if s == "-0.00" else s


def write_svg_polar(
    cuts: list[PlaneCut],
    size_px: int = 480,
    rings: tuple[float, ...] = GRID_RINGS,
) -> str:
    """One closed path per cut over the given grid rings (default quarters).

    Angle 0 points right and grows counterclockwise; each path is stroked
    with its cut color. Output bytes depend only on the inputs.
    """
    if not cuts:
        raise ValueError("no cuts to plot")
    c = size_px / 2.0
    radius = 0.9 * c
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size_px}" height="{size_px}" '
        f'viewBox="0 0 {size_px} {size_px}">',
        f'<rect width="{size_px}" height="{size_px}" fill="#FFFFFF"/>',
    ]
    for ring in rings:
        out.append(
            f'<circle cx="{_px(c)}" cy="{_px(c)}" r="{_px(radius * ring)}" '
            f'fill="none" stroke="{GRID_COLOR}" stroke-width="1"/>'
        )
    out.append(
        f'<line x1="{_px(c - radius)}" y1="{_px(c)}" x2="{_px(c + radius)}" y2="{_px(c)}" '
        f'stroke="{GRID_COLOR}" stroke-width="1"/>'
    )
    out.append(
        f'<line x1="{_px(c)}" y1="{_px(c - radius)}" x2="{_px(c)}" y2="{_px(c + radius)}" '
        f'stroke="{GRID_COLOR}" stroke-width="1"/>'
    )
    for cut in cuts:
        coords = []
        for a, v in zip(cut.angles, cut.values):
            x = c + radius * float(v) * math.cos(float(a))
            y = c - radius * float(v) * math.sin(float(a))
            coords.append(f"{_px(x)} {_px(y)}")
        path = "M" + "L".join(coords) + "Z"
        out.append(
            f'<path d="{path}" fill="none" stroke="{cut.color.hex()}" stroke-width="1.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
