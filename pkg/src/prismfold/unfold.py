"""Volcano unfolding of the prismatoid side surface into the base plane.

Each rib is rotated about the base tangent line at its foot until it lies
flat, landing on the outward side.  In the rib frame the unfolded tip is

    tip(t) = b + s * tb + sqrt(p^2 + z^2) * n

which covers reflected, nonreflected and bi-tangent ribs in one expression:
at z = 0 it reduces to the crease reflection b + s*tb - p*n when p < 0 and
to the projected top point a0 when p >= 0.  The tip distances

    planar = |tip - a0| = sqrt(p^2 + z^2) - p
    space  = |tip - a|  = sqrt(planar^2 + z^2)

measure how far the tip lands from the top point it came from.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .curve import TWO_PI
from .errors import SelfIntersectionError
from .planar import polyline_self_intersections
from .prismatoid import Prismatoid, RibSample, classify_offset


@dataclasses.dataclass(frozen=True)
class UnfoldedRib:
    """Result of flattening one rib."""

    t: float
    tip: np.ndarray             # unfolded tip point in the base plane
    flat_tip: np.ndarray        # tip of the height-zero (projected) unfolding
    space_distance: float       # |tip - top point| in 3-space
    planar_distance: float      # |tip - projected top point|


def unfold_rib_flat(rib: RibSample) -> np.ndarray:
    """Tip of the flat (height-zero) unfolding of a rib.

    Reflected ribs reflect the projected top point across the base tangent
    line; nonreflected ribs keep it in place; both agree at bi-tangents.
    """
    p = rib.normal_offset
    return rib.base_point + rib.tangential_offset * rib.tangent + abs(p) * rib.normal


def unfold_rib(rib: RibSample, height: float) -> UnfoldedRib:
    """Flatten one rib of a prismatoid with the given height."""
    z = float(height)
    p = rib.normal_offset
    swing = np.hypot(p, z)
    tip = rib.base_point + rib.tangential_offset * rib.tangent + swing * rib.normal
    planar = swing - p
    return UnfoldedRib(
        t=rib.t,
        tip=tip,
        flat_tip=unfold_rib_flat(rib),
        space_distance=float(np.hypot(planar, z)),
        planar_distance=float(planar),
    )


@dataclasses.dataclass
class SideUnfolding:
    """The unfolded side surface, sampled at n parameters over one period.

    ``tips`` traces the outer boundary polyline U (closed implicitly).
    """

    prismatoid: Prismatoid
    t: np.ndarray
    tips: np.ndarray                 # (n, 2)
    flat_tips: np.ndarray            # (n, 2)
    base_points: np.ndarray          # (n, 2)
    tangents: np.ndarray             # (n, 2)
    normals: np.ndarray              # (n, 2)
    top_points: np.ndarray           # (n, 2)
    top_params: np.ndarray
    tangential_offsets: np.ndarray
    normal_offsets: np.ndarray
    rib_lengths: np.ndarray
    space_distances: np.ndarray
    planar_distances: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    def sample(self, i: int) -> UnfoldedRib:
        return UnfoldedRib(
            t=float(self.t[i]),
            tip=self.tips[i],
            flat_tip=self.flat_tips[i],
            space_distance=float(self.space_distances[i]),
            planar_distance=float(self.planar_distances[i]),
        )

    def rib_kinds(self) -> list[str]:
        return [classify_offset(float(p)) for p in self.normal_offsets]

    def rib_segments(self) -> np.ndarray:
        """(n, 2, 2) segments from each base foot to its unfolded tip."""
        return np.stack([self.base_points, self.tips], axis=1)


def side_unfolding(P: Prismatoid, n: int = 1024, check_simple: bool = True) -> SideUnfolding:
    """Unfold the whole side surface at n uniform parameters.

    With ``check_simple`` the tip polyline is tested for self-intersection
    and a failure raises :class:`SelfIntersectionError` carrying the
    parameter pairs of the offending segments (a resolution problem for
    valid prismatoids).
    """
    grid = np.linspace(0.0, TWO_PI, int(n), endpoint=False)
    f = P.frames(grid)
    z = P.height
    p = f["p"]
    swing = np.hypot(p, z)
    tips = f["b"] + f["s"][:, None] * f["tb"] + swing[:, None] * f["n"]
    flat_tips = f["b"] + f["s"][:, None] * f["tb"] + np.abs(p)[:, None] * f["n"]
    planar = swing - p
    unfolding = SideUnfolding(
        prismatoid=P,
        t=grid,
        tips=tips,
        flat_tips=flat_tips,
        base_points=f["b"],
        tangents=f["tb"],
        normals=f["n"],
        top_points=f["a0"],
        top_params=f["t_top"],
        tangential_offsets=f["s"],
        normal_offsets=p,
        rib_lengths=f["rib_length"],
        space_distances=np.hypot(planar, z),
        planar_distances=planar,
    )
    if check_simple:
        pairs = polyline_self_intersections(tips)
        if pairs:
            t_pairs = [(float(grid[i]), float(grid[j])) for i, j in pairs]
            raise SelfIntersectionError(
                "unfolded boundary crosses itself at %d segment pairs "
                "(insufficient sampling resolution for a valid prismatoid)"
                % len(pairs),
                t_pairs,
            )
    return unfolding


def rib_tip_distance(P: Prismatoid, t):
    """Tip distances (space, planar) of the unfolded rib at ``t``, vectorized."""
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    p = P.frames(tt)["p"]
    planar = np.hypot(p, P.height) - p
    space = np.hypot(planar, P.height)
    if np.asarray(t).ndim == 0:
        return float(space[0]), float(planar[0])
    return space, planar
