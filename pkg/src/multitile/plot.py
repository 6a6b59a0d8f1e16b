"""Static SVG rendering of a planar element and its lattice translates."""

from __future__ import annotations

from .geom import GroupElement, Polytope, bounding_box
from .lattice import Lattice


def _fmt(x) -> str:
    return f"{float(x):.6f}"


def render_tiling_svg(p: GroupElement | Polytope, l: Lattice, width: int = 600) -> str:
    """SVG with the element filled and its translates over the coefficient
    range [-1, 1]^2 outlined; covers three fundamental cells each way."""
    if isinstance(p, Polytope):
        p = p.as_element()
    if p.dim != 2 or l.dim != 2:
        raise ValueError("plotting is supported in dimension 2 only")
    shifts = [l.from_coords((i, j)) for i in (-1, 0, 1) for j in (-1, 0, 1)]
    lo, hi = bounding_box(p)
    xs = [lo[0] + s[0] for s in shifts] + [hi[0] + s[0] for s in shifts]
    ys = [lo[1] + s[1] for s in shifts] + [hi[1] + s[1] for s in shifts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span_x = float(x1 - x0) or 1.0
    span_y = float(y1 - y0) or 1.0
    scale = width / span_x
    height = int(span_y * scale) + 20
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 20}" '
        f'height="{height}" viewBox="-10 -10 {width + 20} {height}">',
        '<g stroke-linejoin="round">',
    ]

    def pt(v):
        x = (float(v[0]) - float(x0)) * scale
        y = (float(y1) - float(v[1])) * scale
        return f"{x:.3f},{y:.3f}"

    for shift in shifts:
        base = shift == (0, 0) or all(c == 0 for c in shift)
        style = ('fill="#4878a8" fill-opacity="0.55" stroke="#123" stroke-width="1.5"'
                 if base else
                 'fill="none" stroke="#888" stroke-width="0.8" stroke-dasharray="4 3"')
        for m, s in p.terms:
            pts = " ".join(pt(tuple(c + d for c, d in zip(v, shift)))
                           for v in s.vertices)
            lines.append(f'<polygon points="{pts}" {style}><title>coeff {m}</title></polygon>')
    lines.append("</g></svg>")
    return "\n".join(lines)
