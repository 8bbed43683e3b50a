"""Certification of an unfolding: simplicity, disjointness, enclosure, hull.

``full_report`` runs the whole pipeline (sample, unfold, maximize, flip out,
check) and doubles the sampling resolution up to 16x when a check fails, so
discretization artifacts on valid prismatoids are retried at higher N before
any failure is reported.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .errors import SelfIntersectionError
from .planar import (
    bounding_diameter,
    distance_to_polyline,
    polygon_area,
    polyline_crossings,
    polyline_self_intersections,
    segments_pairwise_cross,
    signed_clearance,
    winding_inside,
)
from .placement import (
    FlipOutPlacement,
    OffsetEnvelope,
    flip_out,
    hull_membership,
    maximize_tip_distance,
    mutual_tangency_residual,
    offset_envelope,
    unfolded_tip,
)
from .prismatoid import Prismatoid
from .unfold import SideUnfolding, side_unfolding

VERDICT_OK = "nonoverlapping"
VERDICT_OVERLAP = "overlap_detected"
VERDICT_RESOLUTION = "resolution_insufficient"

ENCLOSE_TOL = -1e-7          # minimum allowed signed clearance
TOUCH_TOL = 1e-6             # envelope must touch the boundary this closely
HULL_TOL = 1e-8
TANGENCY_TOL = 1e-6
EXCLUSION_REL = 1e-6         # tangency exclusion disk, fraction of diameter
REFINE_STEPS = 5             # N, 2N, 4N, 8N, 16N
GROSS_REL = 1e-3             # violations beyond this fraction of diameter
                             # are treated as real overlaps, not resolution


def ribs_pairwise_disjoint(U: SideUnfolding) -> bool:
    """No two unfolded ribs (base foot to tip) properly cross."""
    return not segments_pairwise_cross(U.rib_segments())


def encloses(outer: np.ndarray, inner: np.ndarray, tol: float = ENCLOSE_TOL):
    """Does the closed polyline ``outer`` contain every vertex of ``inner``?

    Returns (ok, min_clearance) where clearance is the signed distance of
    each inner vertex to the region bounded by outer (positive inside).
    Either polyline being non-simple is an input error.
    """
    for name, poly in (("outer", outer), ("inner", inner)):
        if polyline_self_intersections(poly):
            raise ValueError("encloses: %s polyline is not simple" % name)
    clear = signed_clearance(inner, outer)
    min_clearance = float(np.min(clear))
    return min_clearance >= tol, min_clearance


def flipout_crossings(
    U: SideUnfolding,
    placement: FlipOutPlacement,
    exclusion_radius: float | None = None,
) -> int:
    """Proper crossings between the placed top image and the boundary.

    Crossing points inside the exclusion disk around the tangency tip are
    discarded (touching there is expected); any crossing outside it means
    the placement genuinely overlaps the unfolding.
    """
    points = polyline_crossings(placement.top_image, U.tips)
    if len(points) == 0:
        return 0
    if exclusion_radius is None:
        exclusion_radius = EXCLUSION_REL * bounding_diameter(U.tips)
    tip = unfolded_tip(U.prismatoid, placement.t_hat)
    keep = np.linalg.norm(points - tip, axis=-1) > exclusion_radius
    return int(np.count_nonzero(keep))


def region_area(poly: np.ndarray) -> float:
    """Shoelace area of a simple closed polyline; errors if non-simple."""
    if polyline_self_intersections(poly):
        raise ValueError("region_area: polyline is not simple")
    return polygon_area(poly)


@dataclasses.dataclass(frozen=True)
class OverlapReport:
    """Outcome of every certification check plus the attachment data."""

    verdict: str
    u_simple: bool
    ribs_disjoint: bool
    envelope_encloses: bool
    envelope_min_clearance: float
    envelope_touch_distance: float
    hull_ok: bool
    tangency_residual: float
    tangency_degenerate: bool
    flipout_count: int
    t_hat: float
    max_distance: float
    ties: list[float]
    all_safe: bool
    samples_used: int


def _envelope_check(
    P: Prismatoid, U: SideUnfolding, env: OffsetEnvelope, t_hat: float
):
    """Enclosure and touch distances, with t_hat injected into both grids."""
    t_grid = np.append(U.t, t_hat % (2.0 * np.pi))
    order = np.argsort(t_grid)
    t_grid = t_grid[order]
    outer = env.position(t_grid)
    inner = np.vstack([U.tips, unfolded_tip(P, t_hat)[None, :]])
    clear = signed_clearance(inner, outer)
    min_clearance = float(np.min(clear))
    touch = float(np.min(distance_to_polyline(inner, outer)))
    return min_clearance, touch


def _run_checks(P: Prismatoid, n: int) -> OverlapReport:
    attachment = maximize_tip_distance(P)
    t_hat = attachment.t_hat

    try:
        U = side_unfolding(P, n, check_simple=True)
        u_simple = True
    except SelfIntersectionError:
        U = side_unfolding(P, n, check_simple=False)
        u_simple = False

    disjoint = ribs_pairwise_disjoint(U)
    tangency = mutual_tangency_residual(P, t_hat)
    env = offset_envelope(P, t_hat)
    min_clearance, touch = _envelope_check(P, U, env, t_hat)
    enclosed = min_clearance >= ENCLOSE_TOL and touch < TOUCH_TOL
    hull_ok = hull_membership(U, t_hat, tol=HULL_TOL)
    placement = flip_out(P, t_hat, n_samples=n, require_tangency=False)
    crossings = flipout_crossings(U, placement)

    tangency_ok = tangency.degenerate or tangency.residual < TANGENCY_TOL
    all_ok = u_simple and disjoint and enclosed and hull_ok and crossings == 0 and tangency_ok
    return OverlapReport(
        verdict=VERDICT_OK if all_ok else VERDICT_RESOLUTION,
        u_simple=u_simple,
        ribs_disjoint=disjoint,
        envelope_encloses=enclosed,
        envelope_min_clearance=min_clearance,
        envelope_touch_distance=touch,
        hull_ok=hull_ok,
        tangency_residual=tangency.residual,
        tangency_degenerate=tangency.degenerate,
        flipout_count=crossings,
        t_hat=t_hat,
        max_distance=attachment.max_distance,
        ties=attachment.ties,
        all_safe=attachment.all_safe,
        samples_used=n,
    )


def _is_gross(P: Prismatoid, report: OverlapReport) -> bool:
    """Failures far beyond tolerance indicate a true overlap, not resolution."""
    diam = bounding_diameter(side_unfolding(P, 256, check_simple=False).tips)
    if report.envelope_min_clearance < -GROSS_REL * diam:
        return True
    if report.flipout_count > 0 and not report.tangency_degenerate:
        if report.tangency_residual > 1e-2:
            return True
    return False


def full_report(P: Prismatoid, n: int = 1024) -> OverlapReport:
    """Run every check, doubling the resolution until the verdict is clean.

    Valid prismatoids are expected to come back ``nonoverlapping``; a check
    that keeps failing after 16x refinement yields ``overlap_detected`` when
    the violation is gross and ``resolution_insufficient`` otherwise.
    """
    report = None
    for k in range(REFINE_STEPS):
        report = _run_checks(P, n * (2**k))
        if report.verdict == VERDICT_OK:
            return report
    if _is_gross(P, report):
        return dataclasses.replace(report, verdict=VERDICT_OVERLAP)
    return report
