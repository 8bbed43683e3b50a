"""Hand-rolled SVG rendering of the overhead unfolding view.

matplotlib is deliberately not used here: the render output is contractual
(same scene and flags give byte-identical files), so every coordinate is
written with a fixed "%.6f" format and elements appear in a fixed order.
The y axis is negated on output so the figure reads with y up.
"""

from __future__ import annotations

import numpy as np

from .placement import flip_out, maximize_tip_distance, offset_envelope, unfolded_tip
from .prismatoid import Prismatoid
from .unfold import side_unfolding

_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    'width="%d" height="%d" viewBox="%s %s %s %s">\n'
)
_FOOTER = "</svg>\n"

PIXEL_WIDTH = 720
MARGIN_FRACTION = 0.05

COLOR_BASE = "#303030"
COLOR_RIB = "#b8b8b8"
COLOR_BOUNDARY = "#1f5fd0"
COLOR_OFFSET = "#2a9d3c"
COLOR_FLIPOUT = "#d02f2f"


def _fmt(v: float) -> str:
    return "%.6f" % v


def _closed_path(points: np.ndarray) -> str:
    parts = ["M %s %s" % (_fmt(points[0, 0]), _fmt(-points[0, 1]))]
    for x, y in points[1:]:
        parts.append("L %s %s" % (_fmt(x), _fmt(-y)))
    parts.append("Z")
    return " ".join(parts)


def _path_element(points: np.ndarray, color: str, width: float, dash: str = "") -> str:
    style = 'fill="none" stroke="%s" stroke-width="%s"' % (color, _fmt(width))
    if dash:
        style += ' stroke-dasharray="%s"' % dash
    return '<path d="%s" %s/>\n' % (_closed_path(points), style)


def _segment_element(p0, p1, color: str, width: float) -> str:
    return '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="%s"/>\n' % (
        _fmt(p0[0]),
        _fmt(-p0[1]),
        _fmt(p1[0]),
        _fmt(-p1[1]),
        color,
        _fmt(width),
    )


def render_scene(
    P: Prismatoid,
    samples: int = 1024,
    rib_count: int = 0,
    show_offset: bool = False,
    show_flipout: bool = False,
) -> str:
    """Overhead view of the unfolding as an SVG document string.

    Always draws the base curve and the unfolded boundary; ``rib_count``
    evenly spaced unfolded ribs, the offset envelope, and the flipped-out
    top image at the attachment rib are optional layers.
    """
    if rib_count < 0:
        raise ValueError("rib_count must be nonnegative")
    U = side_unfolding(P, samples, check_simple=False)
    attachment = maximize_tip_distance(P)
    t_hat = attachment.t_hat

    layers: list[np.ndarray] = [U.base_points, U.tips]
    env_pts = flip_pts = None
    if show_offset:
        env_pts = offset_envelope(P, t_hat).position(U.t)
        layers.append(env_pts)
    if show_flipout:
        flip_pts = flip_out(P, t_hat, n_samples=samples).top_image
        layers.append(flip_pts)

    allpts = np.concatenate(layers, axis=0)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    diameter = float(np.hypot(*(hi - lo)))
    if diameter == 0.0:
        diameter = 1.0
    pad = MARGIN_FRACTION * diameter
    view_x = lo[0] - pad
    view_y = -(hi[1] + pad)
    view_w = (hi[0] - lo[0]) + 2.0 * pad
    view_h = (hi[1] - lo[1]) + 2.0 * pad
    pixel_h = max(1, int(round(PIXEL_WIDTH * view_h / view_w)))

    thin = 0.0015 * diameter
    thick = 0.0030 * diameter

    out = [
        _HEADER
        % (PIXEL_WIDTH, pixel_h, _fmt(view_x), _fmt(view_y), _fmt(view_w), _fmt(view_h))
    ]
    if rib_count > 0:
        stride = max(1, len(U) // int(rib_count))
        for i in range(0, len(U), stride):
            out.append(
                _segment_element(U.base_points[i], U.tips[i], COLOR_RIB, thin)
            )
    out.append(_path_element(U.base_points, COLOR_BASE, thick))
    if env_pts is not None:
        dash = "%s %s" % (_fmt(0.02 * diameter), _fmt(0.012 * diameter))
        out.append(_path_element(env_pts, COLOR_OFFSET, thin, dash=dash))
    out.append(_path_element(U.tips, COLOR_BOUNDARY, thick))
    if flip_pts is not None:
        out.append(_path_element(flip_pts, COLOR_FLIPOUT, thick))
        tip = unfolded_tip(P, t_hat)
        out.append(
            '<circle cx="%s" cy="%s" r="%s" fill="%s"/>\n'
            % (_fmt(tip[0]), _fmt(-tip[1]), _fmt(0.006 * diameter), COLOR_FLIPOUT)
        )
    out.append(_FOOTER)
    return "".join(out)
