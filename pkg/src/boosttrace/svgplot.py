"""Minimal hand-rolled SVG writer for the information plane (no plotting deps).

Marker conventions follow the trajectory figures: full black circle at the
train-error minimum, magenta square at the test-error minimum, hollow green
circle at the margin maximum, red star at the LMC target point.
"""

from __future__ import annotations

import math

__all__ = ["information_plane_svg"]

_MARGIN = 56
_PLOT = 440


def _sx(x: float) -> float:
    return _MARGIN + x * _PLOT


def _sy(y: float) -> float:
    return _MARGIN + (1.0 - y) * _PLOT


def _star(cx: float, cy: float, r: float) -> str:
    pts = []
    for i in range(10):
        rad = r if i % 2 == 0 else 0.4 * r
        ang = -math.pi / 2 + i * math.pi / 5
        pts.append(f"{cx + rad * math.cos(ang):.2f},{cy + rad * math.sin(ang):.2f}")
    return " ".join(pts)


def _point_of(points, round_no):
    for p in points:
        if p.round == round_no:
            return p
    raise ValueError(f"round {round_no} not on the trajectory")


def information_plane_svg(points, characteristic, title: str = "information plane") -> str:
    """Render one trajectory (typically the averaged series) with its four
    characteristic markers."""
    size = 2 * _MARGIN + _PLOT
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_PLOT}" height="{_PLOT}" '
        f'fill="none" stroke="black" stroke-width="1"/>',
        f'<text x="{size / 2:.0f}" y="24" text-anchor="middle" font-size="15">{title}</text>',
        f'<text x="{size / 2:.0f}" y="{size - 12}" text-anchor="middle" font-size="13">'
        "I(F;X)/H(X)</text>",
        f'<text x="16" y="{size / 2:.0f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {size / 2:.0f})">I(F;Y)/H(Y)</text>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        x = _sx(frac)
        y = _sy(frac)
        parts.append(
            f'<line x1="{x:.1f}" y1="{_MARGIN + _PLOT}" x2="{x:.1f}" '
            f'y2="{_MARGIN + _PLOT + 5}" stroke="black"/>'
            f'<text x="{x:.1f}" y="{_MARGIN + _PLOT + 18}" text-anchor="middle" '
            f'font-size="11">{frac:g}</text>'
            f'<line x1="{_MARGIN - 5}" y1="{y:.1f}" x2="{_MARGIN}" y2="{y:.1f}" stroke="black"/>'
            f'<text x="{_MARGIN - 8}" y="{y + 4:.1f}" text-anchor="end" font-size="11">{frac:g}</text>'
        )

    coords = " ".join(f"{_sx(p.i_fx_norm):.2f},{_sy(p.i_fy_norm):.2f}" for p in points)
    parts.append(
        f'<polyline points="{coords}" fill="none" stroke="steelblue" stroke-width="1.5"/>'
    )

    c = characteristic
    p_train = _point_of(points, c.train_min_round)
    p_test = _point_of(points, c.test_min_round)
    p_margin = _point_of(points, c.margin_max_round)
    parts.append(
        f'<circle cx="{_sx(p_train.i_fx_norm):.2f}" cy="{_sy(p_train.i_fy_norm):.2f}" '
        f'r="6" fill="black"><title>train error minimized (round {c.train_min_round})</title></circle>'
    )
    parts.append(
        f'<rect x="{_sx(p_test.i_fx_norm) - 5:.2f}" y="{_sy(p_test.i_fy_norm) - 5:.2f}" '
        f'width="10" height="10" fill="magenta">'
        f"<title>test error minimized (round {c.test_min_round})</title></rect>"
    )
    parts.append(
        f'<circle cx="{_sx(p_margin.i_fx_norm):.2f}" cy="{_sy(p_margin.i_fy_norm):.2f}" '
        f'r="7" fill="none" stroke="green" stroke-width="2">'
        f"<title>average margin maximized (round {c.margin_max_round})</title></circle>"
    )
    tx, ty = c.lmc_target
    parts.append(
        f'<polygon points="{_star(_sx(tx), _sy(ty), 9)}" fill="red">'
        f"<title>LMC target</title></polygon>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
