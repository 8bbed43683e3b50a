"""Choosing where the top shape attaches and certifying that placement.

The attachment rib maximizes the space distance between the unfolded tip and
the top point it came from.  At that rib the unfolded boundary is mutually
tangent to the image of the top curve, the offset envelope of the projected
top encloses the unfolded boundary and touches it there, and the tip lies on
the boundary's convex hull.  The flip-out placement reflects the top shape
across the base tangent direction and drops its contact point onto the tip.
"""

from __future__ import annotations

import dataclasses
import math
from typing import NamedTuple

import numpy as np

from .curve import Curve, TWO_PI
from .errors import TangencyError
from .prismatoid import Prismatoid
from .unfold import SideUnfolding, rib_tip_distance

DEFAULT_SCAN = 8192
REFINE_TOL = 1e-12           # golden-section bracket target, radians
TIE_REL = 1e-9               # candidates within this of the max are ties
ALL_SAFE_REL = 1e-9          # flat spectrum threshold for the all-safe case
TANGENCY_FD_STEP = TWO_PI * 1e-6
TANGENCY_MAX_RESIDUAL = 1e-6
DEGENERATE_SPEED = 1e-12

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclasses.dataclass(frozen=True)
class AttachmentResult:
    """Global maximum of the tip distance over one period."""

    t_hat: float                 # canonical argmax (smallest tie)
    max_distance: float          # space tip distance at t_hat
    ties: list[float]            # all t achieving >= (1 - 1e-9) * max
    all_safe: bool               # spectrum numerically flat: any rib works


class TangencyCheck(NamedTuple):
    residual: float
    degenerate: bool


def _golden_max(f, lo: float, hi: float, tol: float = REFINE_TOL) -> float:
    """Golden-section maximizer on [lo, hi] to bracket width tol."""
    a, b = lo, hi
    h = b - a
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = f(d)
    return 0.5 * (a + b)


def maximize_tip_distance(P: Prismatoid, scan: int = DEFAULT_SCAN) -> AttachmentResult:
    """Locate the global maximum of the space tip distance.

    Dense uniform scan followed by golden-section refinement of every local
    basin; ties within relative 1e-9 of the maximum are all recorded.  When
    the whole spectrum is flat to 1e-9 the configuration is "all safe" and
    t_hat = 0 by convention.
    """
    grid = np.linspace(0.0, TWO_PI, int(scan), endpoint=False)
    space, _ = rib_tip_distance(P, grid)
    r_max = float(np.max(space))
    r_min = float(np.min(space))
    if r_max - r_min < ALL_SAFE_REL * max(1.0, r_max):
        value = float(rib_tip_distance(P, 0.0)[0])
        return AttachmentResult(t_hat=0.0, max_distance=value, ties=[0.0], all_safe=True)

    prev_val = np.roll(space, 1)
    next_val = np.roll(space, -1)
    local_max = np.where((space >= prev_val) & (space >= next_val))[0]
    # collapse plateau runs to a single representative
    keep: list[int] = []
    prev_idx = None
    for idx in local_max:
        if prev_idx is not None and idx - prev_idx == 1:
            prev_idx = idx
            continue
        keep.append(int(idx))
        prev_idx = idx

    step = TWO_PI / scan

    def objective(t):
        return rib_tip_distance(P, float(t))[0]

    candidates = []
    for idx in keep:
        t0 = grid[idx]
        t_ref = _golden_max(objective, t0 - step, t0 + step)
        candidates.append((t_ref % TWO_PI, objective(t_ref)))

    best_val = max(v for _, v in candidates)
    ties = sorted(t for t, v in candidates if v >= best_val * (1.0 - TIE_REL))
    # drop near-duplicate parameters (same basin refined twice)
    deduped: list[float] = []
    for t in ties:
        if not deduped or min(
            abs(t - deduped[-1]), TWO_PI - abs(t - deduped[-1])
        ) > 1e-7:
            deduped.append(float(t))
    if len(deduped) > 1 and TWO_PI - abs(deduped[-1] - deduped[0]) <= 1e-7:
        deduped.pop()
    t_hat = deduped[0]
    return AttachmentResult(
        t_hat=t_hat,
        max_distance=float(objective(t_hat)),
        ties=deduped,
        all_safe=False,
    )


def unfolded_tip(P: Prismatoid, t):
    """Unfolded tip point at parameter t, vectorized."""
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    f = P.frames(tt)
    swing = np.hypot(f["p"], P.height)
    tips = f["b"] + f["s"][:, None] * f["tb"] + swing[:, None] * f["n"]
    return tips[0] if np.asarray(t).ndim == 0 else tips


def tip_velocity(P: Prismatoid, t: float, step: float = TANGENCY_FD_STEP) -> np.ndarray:
    """Centered finite-difference derivative of the unfolded tip at t."""
    pts = unfolded_tip(P, np.array([t + step, t - step]))
    return (pts[0] - pts[1]) / (2.0 * step)


def mutual_tangency_residual(P: Prismatoid, t: float) -> TangencyCheck:
    """Cross product of the unit top tangent and unit tip velocity at t.

    Zero means the top curve and the unfolded boundary are mutually tangent
    at the rib.  A degenerate (numerically stationary) tip velocity returns
    residual 0 with the degenerate flag set.
    """
    vel = tip_velocity(P, float(t))
    vnorm = float(np.hypot(vel[0], vel[1]))
    if vnorm < DEGENERATE_SPEED:
        return TangencyCheck(residual=0.0, degenerate=True)
    t_top = P.correspond(float(t))
    tan = P.top.unit_tangent(t_top)
    residual = abs(tan[0] * vel[1] - tan[1] * vel[0]) / vnorm
    return TangencyCheck(residual=float(residual), degenerate=False)


class OffsetEnvelope:
    """Offset of the projected top curve by the maximal planar tip distance.

    Parametrized by the *base* parameter t: o(t) = a0(t) + M * n(t), where n
    is the shared outward normal of the corresponding points.  Encloses the
    unfolded boundary and touches it at the attachment tip.
    """

    def __init__(self, P: Prismatoid, t_hat: float):
        self.prismatoid = P
        self.t_hat = float(t_hat)
        _, planar = rib_tip_distance(P, float(t_hat))
        self.distance = float(planar)

    def position(self, t):
        tt = np.atleast_1d(np.asarray(t, dtype=float))
        f = self.prismatoid.frames(tt)
        pts = f["a0"] + self.distance * f["n"]
        return pts[0] if np.asarray(t).ndim == 0 else pts


def offset_envelope(P: Prismatoid, t_hat: float) -> OffsetEnvelope:
    """Envelope evaluator for the attachment at t_hat."""
    return OffsetEnvelope(P, t_hat)


def hull_membership(U: SideUnfolding, t_hat: float, tol: float = 1e-8) -> bool:
    """Does the line through the tip at t_hat along its velocity support U?

    True when every sampled boundary vertex lies within ``tol`` of one closed
    side of that line, certifying the tip is on the boundary's convex hull.
    """
    P = U.prismatoid
    anchor = unfolded_tip(P, float(t_hat))
    vel = tip_velocity(P, float(t_hat))
    vnorm = np.hypot(vel[0], vel[1])
    if vnorm < DEGENERATE_SPEED:
        return True
    direction = vel / vnorm
    rel = U.tips - anchor
    side = direction[0] * rel[:, 1] - direction[1] * rel[:, 0]
    return bool(np.all(side >= -tol) or np.all(side <= tol))


@dataclasses.dataclass(frozen=True)
class FlipOutPlacement:
    """Orientation-reversing placement of the top shape onto the tip."""

    t_hat: float
    linear: np.ndarray           # 2x2 reflection matrix, det = -1
    offset: np.ndarray           # translation so contact point -> tip
    top_image: np.ndarray        # (n, 2) polyline of the placed top shape

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.linear.T + self.offset


def flip_out(
    P: Prismatoid,
    t_hat: float,
    n_samples: int = 1024,
    require_tangency: bool = True,
) -> FlipOutPlacement:
    """Reflect the top shape out of the unfolding across the rib at t_hat.

    The placement reflects the plane across the base tangent direction and
    translates the projected top point onto the unfolded tip: at a mutual
    tangency rib this is the tangent-matched flip-out (in the flat case it
    is exactly the crease reflection).  With ``require_tangency`` the rib
    must satisfy the mutual-tangency residual bound; disabling it places the
    shape at a non-tangent rib, which is the deliberate misplacement used as
    a negative control.
    """
    t_hat = float(t_hat)
    if require_tangency:
        check = mutual_tangency_residual(P, t_hat)
        if not check.degenerate and check.residual > TANGENCY_MAX_RESIDUAL:
            raise TangencyError(
                "rib at t=%.12g is not a mutual-tangency attachment "
                "(residual %.3g > %.1g)"
                % (t_hat, check.residual, TANGENCY_MAX_RESIDUAL)
            )
    rib = P.rib(t_hat)
    tx, ty = rib.tangent
    # reflection across the tangent direction: tb -> tb, n -> -n
    linear = np.array(
        [
            [tx * tx - ty * ty, 2.0 * tx * ty],
            [2.0 * tx * ty, ty * ty - tx * tx],
        ]
    )
    tip = unfolded_tip(P, t_hat)
    offset = tip - linear @ rib.top_point
    grid = np.linspace(0.0, TWO_PI, int(n_samples), endpoint=False)
    top_pts = P.top.position(grid)
    image = top_pts @ linear.T + offset
    return FlipOutPlacement(t_hat=t_hat, linear=linear, offset=offset, top_image=image)
