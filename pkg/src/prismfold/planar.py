"""Planar predicates on polylines: crossings, containment, clearance, area.

All polylines are (n, 2) float arrays, closed implicitly (an edge joins the
last vertex back to the first).  Intersection predicates work on coordinates
normalized by the configuration diameter and treat orientation values within
EPS of zero as degenerate, so touching configurations do not count as proper
crossings.
"""

from __future__ import annotations

import numpy as np

EPS = 1e-12          # orientation epsilon on diameter-normalized coordinates
_BLOCK = 256         # row-block size for pairwise segment sweeps


def _closed_segments(poly: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pts = np.asarray(poly, dtype=float)
    return pts, np.roll(pts, -1, axis=0)


def _normalization(*polys: np.ndarray) -> tuple[np.ndarray, float]:
    allpts = np.concatenate([np.asarray(p, dtype=float) for p in polys], axis=0)
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    center = 0.5 * (lo + hi)
    scale = 0.5 * float(np.hypot(*(hi - lo)))
    return center, (scale if scale > 0.0 else 1.0)


def bounding_diameter(*polys: np.ndarray) -> float:
    """Diagonal of the joint axis-aligned bounding box."""
    allpts = np.concatenate([np.asarray(p, dtype=float) for p in polys], axis=0)
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    return float(np.hypot(*(hi - lo)))


def _cross(o, a, b):
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (
        a[..., 1] - o[..., 1]
    ) * (b[..., 0] - o[..., 0])


def _segment_pairs_cross(a0, a1, b0, b1):
    """Boolean mask: does segment (a0, a1) properly cross (b0, b1)?

    Inputs are broadcastable stacks of 2-vectors in normalized coordinates.
    Proper means the interiors straddle strictly on both sides; touching
    within EPS does not count.
    """
    d1 = _cross(a0, a1, b0)
    d2 = _cross(a0, a1, b1)
    d3 = _cross(b0, b1, a0)
    d4 = _cross(b0, b1, a1)
    straddle_b = ((d1 > EPS) & (d2 < -EPS)) | ((d1 < -EPS) & (d2 > EPS))
    straddle_a = ((d3 > EPS) & (d4 < -EPS)) | ((d3 < -EPS) & (d4 > EPS))
    return straddle_a & straddle_b


def _box_candidates(s0: np.ndarray, s1: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (i, j), i != j, whose segment bounding boxes overlap.

    Sweep on x: after sorting by the left box edge, the partners of a segment
    whose boxes can overlap in x form a contiguous run, found by searchsorted.
    For the smooth convex-ish curves handled here the run lengths stay O(1),
    so the candidate set is near linear in the segment count.
    """
    lo = np.minimum(s0, s1)
    hi = np.maximum(s0, s1)
    n = len(lo)
    order = np.argsort(lo[:, 0], kind="stable")
    xlo = lo[order, 0]
    stop = np.searchsorted(xlo, hi[order, 0] + EPS, side="right")
    counts = np.maximum(stop - np.arange(1, n + 1), 0)
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=int), np.empty(0, dtype=int)
    rows = np.repeat(np.arange(n), counts)
    starts = np.cumsum(counts) - counts
    cols = np.arange(total) - starts[rows] + rows + 1
    i = order[rows]
    j = order[cols]
    keep = (lo[i, 1] <= hi[j, 1] + EPS) & (lo[j, 1] <= hi[i, 1] + EPS)
    return i[keep], j[keep]


def polyline_self_intersections(poly: np.ndarray) -> list[tuple[int, int]]:
    """Indices (i, j) of nonadjacent segments that properly cross."""
    n = len(poly)
    if n < 4:
        return []
    center, scale = _normalization(poly)
    pts = (np.asarray(poly, dtype=float) - center) / scale
    s0, s1 = _closed_segments(pts)
    i, j = _box_candidates(s0, s1)
    lo = np.minimum(i, j)
    hi = np.maximum(i, j)
    # skip adjacent segments (share a vertex), including the wrap pair
    keep = (hi - lo != 1) & ~((lo == 0) & (hi == n - 1))
    lo, hi = lo[keep], hi[keep]
    hit = _segment_pairs_cross(s0[lo], s1[lo], s0[hi], s1[hi])
    return sorted(zip(lo[hit].tolist(), hi[hit].tolist()))


def polyline_crossings(poly_a: np.ndarray, poly_b: np.ndarray) -> np.ndarray:
    """Intersection points where closed polyline A properly crosses B.

    Returns an (k, 2) array of crossing points (k may be 0).
    """
    center, scale = _normalization(poly_a, poly_b)
    a = (np.asarray(poly_a, dtype=float) - center) / scale
    b = (np.asarray(poly_b, dtype=float) - center) / scale
    a0, a1 = _closed_segments(a)
    b0, b1 = _closed_segments(b)
    na = len(a0)
    s0 = np.concatenate([a0, b0], axis=0)
    s1 = np.concatenate([a1, b1], axis=0)
    i, j = _box_candidates(s0, s1)
    # keep only mixed pairs, oriented as (segment of A, segment of B)
    ai = np.where(i < na, i, j)
    bj = np.where(i < na, j, i)
    keep = (ai < na) & (bj >= na)
    ai, bj = ai[keep], bj[keep] - na
    hit = _segment_pairs_cross(a0[ai], a1[ai], b0[bj], b1[bj])
    if not np.any(hit):
        return np.empty((0, 2))
    pa0, pa1 = a0[ai[hit]], a1[ai[hit]]
    pb0, pb1 = b0[bj[hit]], b1[bj[hit]]
    da = pa1 - pa0
    db = pb1 - pb0
    denom = da[:, 0] * db[:, 1] - da[:, 1] * db[:, 0]
    rel = pb0 - pa0
    u = (rel[:, 0] * db[:, 1] - rel[:, 1] * db[:, 0]) / denom
    return (pa0 + u[:, None] * da) * scale + center


def segments_pairwise_cross(segments: np.ndarray) -> list[tuple[int, int]]:
    """Proper crossings among an (n, 2, 2) family of disjoint segments."""
    segs = np.asarray(segments, dtype=float)
    center, scale = _normalization(segs.reshape(-1, 2))
    s0 = (segs[:, 0, :] - center) / scale
    s1 = (segs[:, 1, :] - center) / scale
    i, j = _box_candidates(s0, s1)
    lo = np.minimum(i, j)
    hi = np.maximum(i, j)
    hit = _segment_pairs_cross(s0[lo], s1[lo], s0[hi], s1[hi])
    return sorted(zip(lo[hit].tolist(), hi[hit].tolist()))


def winding_inside(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Winding-number containment of query points in a closed polyline."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    v0, v1 = _closed_segments(np.asarray(poly, dtype=float))
    winding = np.zeros(len(pts), dtype=int)
    for start in range(0, len(v0), _BLOCK):
        stop = min(start + _BLOCK, len(v0))
        y0 = v0[start:stop, 1][None, :]
        y1 = v1[start:stop, 1][None, :]
        py = pts[:, 1][:, None]
        upward = (y0 <= py) & (y1 > py)
        downward = (y0 > py) & (y1 <= py)
        side = _cross(
            v0[None, start:stop, :], v1[None, start:stop, :], pts[:, None, :]
        )
        winding += np.sum(upward & (side > 0.0), axis=1)
        winding -= np.sum(downward & (side < 0.0), axis=1)
    return winding != 0


def distance_to_polyline(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Euclidean distance from query points to a closed polyline boundary."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    v0, v1 = _closed_segments(np.asarray(poly, dtype=float))
    best = np.full(len(pts), np.inf)
    for start in range(0, len(v0), _BLOCK):
        stop = min(start + _BLOCK, len(v0))
        a = v0[start:stop][None, :, :]
        d = (v1[start:stop] - v0[start:stop])[None, :, :]
        rel = pts[:, None, :] - a
        denom = np.sum(d * d, axis=-1)
        denom = np.where(denom > 0.0, denom, 1.0)
        u = np.clip(np.sum(rel * d, axis=-1) / denom, 0.0, 1.0)
        foot = a + u[..., None] * d
        dist = np.linalg.norm(pts[:, None, :] - foot, axis=-1)
        best = np.minimum(best, dist.min(axis=1))
    return best


def signed_clearance(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Signed distance to the region bounded by ``poly``: >0 inside."""
    inside = winding_inside(points, poly)
    dist = distance_to_polyline(points, poly)
    return np.where(inside, dist, -dist)


def polygon_area(poly: np.ndarray) -> float:
    """Positive shoelace area of a closed polyline."""
    v0, v1 = _closed_segments(np.asarray(poly, dtype=float))
    return float(abs(0.5 * np.sum(v0[:, 0] * v1[:, 1] - v1[:, 0] * v0[:, 1])))
