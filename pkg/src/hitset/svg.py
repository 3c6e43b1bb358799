"""Static SVG figures of instances and hitting sets.

Objects are strokes coloured by orientation class; rays and lines are
extended past the drawing window and clipped by the viewBox.  Hit points
are filled circles, with 3-hitters drawn larger in a separate colour.
Output depends only on the input, so equal inputs give equal bytes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional
from xml.sax.saxutils import escape

from .geometry import Kind
from .instance import HittingSet, Instance

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")
SIZE = 480  # pixels along the longer side


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(inst: Instance, solution: Optional[HittingSet] = None, title: str = "") -> str:
    objs = inst.objects
    points = list(solution.points) if solution is not None else []
    tags = list(solution.tags) if solution is not None else []
    finite = [p for o in objs for p in o.endpoints()] + points
    # lines have no endpoints; their anchors keep them near the window
    finite += [o.anchor for o in objs if o.kind is Kind.LINE]
    if finite:
        x0, x1 = min(p.x for p in finite), max(p.x for p in finite)
        y0, y1 = min(p.y for p in finite), max(p.y for p in finite)
    else:
        x0 = y0 = Fraction(0)
        x1 = y1 = Fraction(1)
    pad = max(x1 - x0, y1 - y0, Fraction(1)) / 10
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    w, h = x1 - x0, y1 - y0
    scale = SIZE / max(w, h)
    width, height = float(w * scale), float(h * scale)

    def sx(x) -> str:
        return _num(float((x - x0) * scale))

    def sy(y) -> str:
        return _num(float((y1 - y) * scale))

    reach = 2 * (w + h)
    classes = {c: k for k, c in enumerate(sorted({o.orientation for o in objs}))}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect x="0" y="0" width="{_num(width)}" height="{_num(height)}" fill="white"/>')
    out.append('<g class="objects" fill="none" stroke-width="2">')
    for u in inst.unions:
        for o in u.members:
            d = o.direction
            n = max(abs(d.x), abs(d.y))
            if o.kind is Kind.SEGMENT:
                a, b = o.anchor, o.end
            elif o.kind is Kind.RAY:
                a, b = o.anchor, o.at(reach / n)
            else:
                a, b = o.at(-reach / n), o.at(reach / n)
            colour = PALETTE[classes[o.orientation] % len(PALETTE)]
            label = f' data-label="{escape(u.label)}"' if u.label else ""
            out.append(
                f'<line class="{o.kind.value}" x1="{sx(a.x)}" y1="{sy(a.y)}" x2="{sx(b.x)}" y2="{sy(b.y)}" '
                f'stroke="{colour}"{label}/>'
            )
    out.append("</g>")
    out.append('<g class="points" stroke="black" stroke-width="1">')
    for p, t in zip(points, tags):
        if t == "3hit":
            out.append(f'<circle class="hit 3hit" cx="{sx(p.x)}" cy="{sy(p.y)}" r="7" fill="#ffbf00"/>')
        else:
            out.append(f'<circle class="hit" cx="{sx(p.x)}" cy="{sy(p.y)}" r="4" fill="black"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
