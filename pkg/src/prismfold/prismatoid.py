"""Smooth prismatoids: two convex curves in parallel planes plus their ribs.

The base curve lives in the z = 0 plane and is reparametrized to unit speed
at construction.  The top curve lives in the plane z = height and keeps its
own parametrization; corresponding points are matched by equal tangent
direction (both curves counterclockwise), which is a monotone bijection for
strictly convex curves.

A rib joins the base point b(t) to the top point above a0(t).  All derived
quantities are expressed in the rib frame at t: the unit tangent tb, the
outward normal n, the tangential offset s = (a0 - b) . tb and the signed
normal offset p = (a0 - b) . n.  Ribs with p < 0 are "reflected" (the top
point sits inboard of the base tangent line), ribs with p > 0 are
"nonreflected", and p = 0 marks a bi-tangent.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .curve import Curve, TWO_PI, arc_length_reparam

KIND_REFLECTED = "reflected"
KIND_NONREFLECTED = "nonreflected"
KIND_BITANGENT = "bitangent"

BITANGENT_TOL = 1e-9       # |p| below this counts as a bi-tangent
BITANGENT_SCAN = 8192      # sign-change scan resolution for p(t)
BITANGENT_REFINE = 1e-10   # bisection interval target on bi-tangent roots
MIN_RIB_SAMPLES = 16


def classify_offset(p: float) -> str:
    """Rib kind from the signed normal offset."""
    if p < -BITANGENT_TOL:
        return KIND_REFLECTED
    if p > BITANGENT_TOL:
        return KIND_NONREFLECTED
    return KIND_BITANGENT


@dataclasses.dataclass(frozen=True)
class RibSample:
    """One hull rib: the base-plane frame and the projected top point."""

    t: float
    base_point: np.ndarray        # b(t), in the z = 0 plane
    tangent: np.ndarray           # unit tangent tb of the base at t
    normal: np.ndarray            # outward unit normal n = rot(tb, -90deg)
    top_point: np.ndarray         # a0(t): top point projected to z = 0
    top_param: float              # parameter of the top curve at the rib
    tangential_offset: float      # s = (a0 - b) . tb
    normal_offset: float          # p = (a0 - b) . n, signed
    rib_length: float             # sqrt(s^2 + p^2 + height^2)
    kind: str


class Prismatoid:
    """Convex hull of a base curve at z = 0 and a top curve at z = height."""

    def __init__(self, base: Curve, top: Curve, height: float):
        height = float(height)
        if not (height >= 0.0 and math.isfinite(height)):
            raise ValueError("height must be finite and >= 0")
        self.base, self.base_arc_table = arc_length_reparam(base)
        self.base_input = base
        self.top = top
        self.height = height

    # -- correspondence -----------------------------------------------------

    def correspond(self, t):
        """Top-curve parameter whose tangent direction matches the base at t."""
        return self.top.invert_tangent_angle(self.base.tangent_angle(t))

    # -- rib frames -----------------------------------------------------------

    def frames(self, t):
        """Vectorized rib frame quantities at parameters ``t``.

        Returns a dict of arrays: b, tb, n, t_top, a0, s, p, rib_length.
        The arc-length inversion runs once; positions, tangents and the
        tangent angle are then read off the source curve directly.
        """
        tt = np.atleast_1d(np.asarray(t, dtype=float))
        t_src = np.atleast_1d(self.base.source_param(tt))
        b = self.base.source.position(t_src)
        d1 = self.base.source.derivative(t_src, 1)
        tb = d1 / np.linalg.norm(d1, axis=-1, keepdims=True)
        n = np.stack([tb[:, 1], -tb[:, 0]], axis=-1)
        phi = self.base.source.tangent_angle(t_src)
        t_top = np.atleast_1d(self.top.invert_tangent_angle(phi))
        a0 = self.top.position(t_top)
        rel = a0 - b
        s = np.sum(rel * tb, axis=-1)
        p = np.sum(rel * n, axis=-1)
        rib_length = np.sqrt(s * s + p * p + self.height * self.height)
        return {
            "t": tt, "b": b, "tb": tb, "n": n, "t_top": t_top,
            "a0": a0, "s": s, "p": p, "rib_length": rib_length,
        }

    def rib(self, t: float) -> RibSample:
        """Single rib sample at parameter t."""
        f = self.frames(float(t))
        return RibSample(
            t=float(f["t"][0]),
            base_point=f["b"][0],
            tangent=f["tb"][0],
            normal=f["n"][0],
            top_point=f["a0"][0],
            top_param=float(f["t_top"][0]),
            tangential_offset=float(f["s"][0]),
            normal_offset=float(f["p"][0]),
            rib_length=float(f["rib_length"][0]),
            kind=classify_offset(float(f["p"][0])),
        )

    def sample_ribs(self, n: int) -> list[RibSample]:
        """Ribs at n uniform parameters over one period."""
        if n < MIN_RIB_SAMPLES:
            raise ValueError("need at least %d rib samples, got %d" % (MIN_RIB_SAMPLES, n))
        grid = np.linspace(0.0, TWO_PI, n, endpoint=False)
        f = self.frames(grid)
        return [
            RibSample(
                t=float(f["t"][i]),
                base_point=f["b"][i],
                tangent=f["tb"][i],
                normal=f["n"][i],
                top_point=f["a0"][i],
                top_param=float(f["t_top"][i]),
                tangential_offset=float(f["s"][i]),
                normal_offset=float(f["p"][i]),
                rib_length=float(f["rib_length"][i]),
                kind=classify_offset(float(f["p"][i])),
            )
            for i in range(n)
        ]

    def normal_offset(self, t):
        """Signed normal offset p(t), vectorized."""
        tt = np.atleast_1d(np.asarray(t, dtype=float))
        out = self.frames(tt)["p"]
        return float(out[0]) if np.asarray(t).ndim == 0 else out

    # -- bi-tangents ------------------------------------------------------------

    def bitangents(self, scan: int = BITANGENT_SCAN) -> np.ndarray:
        """Parameters where p(t) = 0, i.e. the two curves share a tangent line.

        Roots are located by a sign-change scan and refined by bisection.
        Coincident curves (p identically ~0) yield no isolated sign changes
        and return an empty array.
        """
        grid = np.linspace(0.0, TWO_PI, scan, endpoint=False)
        p = self.frames(grid)["p"]
        p_next = np.roll(p, -1)
        # a genuine transition must leave the bi-tangent noise band on at
        # least one side; coincident curves (p ~ 0 everywhere) yield none
        crossing = np.where(
            (p * p_next < 0.0)
            & ((np.abs(p) > BITANGENT_TOL) | (np.abs(p_next) > BITANGENT_TOL))
        )[0]
        roots = []
        for i in crossing:
            lo, hi = grid[i], grid[i] + TWO_PI / scan
            p_lo = p[i]
            while hi - lo > BITANGENT_REFINE:
                mid = 0.5 * (lo + hi)
                p_mid = float(self.normal_offset(mid))
                if p_mid == 0.0:
                    lo = hi = mid
                    break
                if (p_lo < 0.0) == (p_mid < 0.0):
                    lo, p_lo = mid, p_mid
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi) % TWO_PI)
        return np.array(sorted(roots))
