"""Report document assembly: JSON certification record and CSV sample table.

The JSON document is the machine-readable output of the unfold pipeline.
Its layout is stable: keys are emitted sorted, floats use repr round-trip
formatting, and two runs on the same scene differ only in ``timing_ms``.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from . import __version__
from .curve import TWO_PI
from .scene import Scene, scene_to_dict
from .unfold import SideUnfolding
from .verify import OverlapReport

CSV_COLUMNS = (
    "t",
    "base_x",
    "base_y",
    "top_x",
    "top_y",
    "tip_x",
    "tip_y",
    "tangential_offset",
    "normal_offset",
    "rib_length",
    "planar_distance",
    "space_distance",
    "kind",
)


def report_document(
    scene: Scene,
    report: OverlapReport,
    samples: int,
    timing_ms: float,
) -> dict:
    """Assemble the JSON-ready report for one pipeline run."""
    return {
        "version": __version__,
        "scene": scene_to_dict(scene),
        "samples": int(samples),
        "samples_used": int(report.samples_used),
        "t_hat": float(report.t_hat % TWO_PI),
        "ties": [float(t % TWO_PI) for t in report.ties],
        "R_max": float(report.max_distance),
        "all_safe": bool(report.all_safe),
        "tangency_residual": float(report.tangency_residual),
        "tangency_degenerate": bool(report.tangency_degenerate),
        "envelope_min_clearance": float(report.envelope_min_clearance),
        "envelope_touch_distance": float(report.envelope_touch_distance),
        "checks": {
            "u_simple": bool(report.u_simple),
            "ribs_disjoint": bool(report.ribs_disjoint),
            "envelope_encloses": bool(report.envelope_encloses),
            "hull_ok": bool(report.hull_ok),
            "flipout_crossings": int(report.flipout_count),
        },
        "verdict": report.verdict,
        "timing_ms": float(timing_ms),
    }


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def unfolding_csv(U: SideUnfolding) -> str:
    """Per-rib sample table of the unfolding as CSV text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    kinds = U.rib_kinds()
    for i in range(len(U)):
        row = [
            U.t[i],
            U.base_points[i, 0],
            U.base_points[i, 1],
            U.top_points[i, 0],
            U.top_points[i, 1],
            U.tips[i, 0],
            U.tips[i, 1],
            U.tangential_offsets[i],
            U.normal_offsets[i],
            U.rib_lengths[i],
            U.planar_distances[i],
            U.space_distances[i],
        ]
        writer.writerow([repr(float(v)) for v in row] + [kinds[i]])
    return buf.getvalue()


def polygonal_export(P, k: int) -> str:
    """Polygonal approximation of the two curves in a plain-text format.

    Layout::

        prismatoid-polygon v1
        k <count>
        height <z>
        base
        <x> <y>          (k lines, base vertices at t = 2*pi*j/k)
        top
        <x> <y>          (k lines, top vertices at the corresponding params)

    Vertices are planar; the top polygon lives at the stated height.  The
    top vertex j corresponds to base vertex j (parallel tangents), so rib
    segments of the polygonal prismatoid join row to row.
    """
    if k < 3:
        raise ValueError("polygon vertex count must be at least 3")
    grid = np.linspace(0.0, TWO_PI, int(k), endpoint=False)
    f = P.frames(grid)
    lines = [
        "prismatoid-polygon v1",
        "k %d" % int(k),
        "height %r" % float(P.height),
        "base",
    ]
    for x, y in f["b"]:
        lines.append("%r %r" % (float(x), float(y)))
    lines.append("top")
    for x, y in f["a0"]:
        lines.append("%r %r" % (float(x), float(y)))
    return "\n".join(lines) + "\n"
