"""Static SVG contour plots of pseudospectrum grids.

Only polylines and paths are emitted.  Contour tracing is delegated to
contourpy; this module maps the traced lines into the picture frame.
"""

import numpy as np
from contourpy import contour_generator

DEFAULT_LEVELS = (1e-2, 1e-3, 1e-4)
_COLORS = ("#1b6ca8", "#d1495b", "#2e933c", "#7d4e9f", "#e08e0b")


def _fmt(v):
    return f"{v:.6g}"


class _Frame:
    """Affine map from the complex box to pixel coordinates (y up)."""

    def __init__(self, box, width, margin):
        x0, x1, y0, y1 = box
        self.x0, self.y1 = x0, y1
        self.scale = (width - 2 * margin) / (x1 - x0)
        self.margin = margin
        self.width = width
        self.height = int(round((y1 - y0) * self.scale + 2 * margin))

    def points(self, re, im):
        px = self.margin + (np.asarray(re) - self.x0) * self.scale
        py = self.margin + (self.y1 - np.asarray(im)) * self.scale
        return " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(px, py))


def contour_lines(grid, level):
    """Polylines (arrays of complex points) where sigma_min equals ``level``."""
    gen = contour_generator(grid.x, grid.y, grid.values)
    return [seg[:, 0] + 1j * seg[:, 1] for seg in gen.lines(level) if len(seg) > 1]


def pseudospectrum_svg(grid, levels=DEFAULT_LEVELS, overlay=None, width=600, margin=30, title=None):
    """SVG text with the eps-level contours of ``grid``.

    ``overlay`` is an optional list of curves (arrays of complex points)
    drawn dashed, e.g. the boundary of a closed-form spectrum.
    """
    frame = _Frame(grid.box, width, margin)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{frame.width}" height="{frame.height}" '
        f'viewBox="0 0 {frame.width} {frame.height}">',
        f'<rect x="0" y="0" width="{frame.width}" height="{frame.height}" fill="white"/>',
    ]
    x0, x1, y0, y1 = grid.box
    # axes through the origin when it lies inside the box
    if x0 <= 0.0 <= x1:
        out.append(f'<polyline points="{frame.points([0.0, 0.0], [y0, y1])}" stroke="#bbbbbb" fill="none"/>')
    if y0 <= 0.0 <= y1:
        out.append(f'<polyline points="{frame.points([x0, x1], [0.0, 0.0])}" stroke="#bbbbbb" fill="none"/>')
    for i, level in enumerate(levels):
        color = _COLORS[i % len(_COLORS)]
        out.append(f'<g stroke="{color}" fill="none" stroke-width="1.2"><title>eps = {level:g}</title>')
        for line in contour_lines(grid, level):
            out.append(f'<polyline points="{frame.points(line.real, line.imag)}"/>')
        out.append("</g>")
    for curve in overlay or ():
        pts = np.asarray(curve, dtype=complex)
        keep = (pts.real >= x0) & (pts.real <= x1) & (pts.imag >= y0) & (pts.imag <= y1)
        pts = pts[keep]
        if pts.size > 1:
            coords = frame.points(pts.real, pts.imag).split()
            d = "M " + " L ".join(coords)
            out.append(f'<path d="{d}" stroke="black" stroke-dasharray="4 3" fill="none"/>')
    caption = title or f"sigma_min contours, N = {grid.order}"
    out.append(f'<text x="{margin}" y="{margin - 10}" font-family="sans-serif" font-size="12">{caption}</text>')
    for i, level in enumerate(levels):
        out.append(
            f'<text x="{frame.width - margin - 90}" y="{margin + 14 * i}" font-family="sans-serif" '
            f'font-size="11" fill="{_COLORS[i % len(_COLORS)]}">eps = {level:g}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
