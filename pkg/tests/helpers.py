"""Shared oracles and generators for the test suite.

The rotation oracle flattens a lifted rib by explicit axis-angle rotation:
it scans the rotation angle for roots of the rotated z-component and
bisects, then picks the landing on the outward-normal side.  Nothing here
reuses the closed-form unfolding inside the package, so agreement between
the two is meaningful.
"""

from __future__ import annotations

import numpy as np

from prismfold import (
    CurveSpec,
    Prismatoid,
    Scene,
    build_prismatoid,
    curve_from_spec,
    fourier_spec_from_support,
)

TWO_PI = 2.0 * np.pi


def flatten_rib_by_rotation(base_point, tangent, normal, top_point, height):
    """Rotate the lifted top point about the base tangent line into z = 0.

    The rotation angle is found numerically: scan the rotated z-component
    over a dense angle grid, then bisect each sign-change bracket.  Of the
    flattening rotations, the one landing on the outward-normal side of the
    tangent line is returned (as a planar point).
    """
    b3 = np.array([base_point[0], base_point[1], 0.0])
    axis = np.array([tangent[0], tangent[1], 0.0])
    axis = axis / np.linalg.norm(axis)
    a3 = np.array([top_point[0], top_point[1], float(height)])
    v = a3 - b3
    v_par = (v @ axis) * axis
    v_perp = v - v_par
    if np.linalg.norm(v_perp) < 1e-15:
        return np.asarray(top_point, dtype=float)
    axis_cross = np.cross(axis, v_perp)

    def rotated(thetas):
        # Rodrigues formula; axis . v_perp = 0 kills the third term
        th = np.atleast_1d(np.asarray(thetas, dtype=float))
        part = (
            v_perp[None, :] * np.cos(th)[:, None]
            + axis_cross[None, :] * np.sin(th)[:, None]
        )
        return b3 + v_par + part

    thetas = np.linspace(0.0, TWO_PI, 721)
    zs = rotated(thetas)[:, 2]
    exact = thetas[:-1][zs[:-1] == 0.0]
    bracket = np.where((zs[:-1] * zs[1:]) < 0.0)[0]
    lo, hi = thetas[bracket], thetas[bracket + 1]
    z_lo = zs[bracket]
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        z_mid = rotated(mid)[:, 2]
        take_lo = (z_lo < 0.0) == (z_mid < 0.0)
        lo = np.where(take_lo, mid, lo)
        z_lo = np.where(take_lo, z_mid, z_lo)
        hi = np.where(take_lo, hi, mid)
    candidates = np.concatenate([exact, 0.5 * (lo + hi)])
    assert len(candidates) > 0
    images = rotated(candidates)
    sides = (images[:, :2] - np.asarray(base_point, dtype=float)) @ np.asarray(
        normal, dtype=float
    )
    best = images[np.argmax(sides)]
    assert abs(best[2]) < 1e-10
    return best[:2]


def random_convex_spec(rng: np.random.Generator, scale: float = 1.0) -> CurveSpec:
    """Random strictly convex shape from a support-function design."""
    order = int(rng.integers(2, 5))
    budget = 0.35 * scale
    weights = rng.random(order - 1)
    weights = weights / weights.sum()
    harmonics = {}
    for i, k in enumerate(range(2, order + 1)):
        amplitude = budget * float(weights[i]) / (k * k - 1)
        harmonics[k] = (amplitude, float(rng.uniform(0.0, TWO_PI)))
    return fourier_spec_from_support(
        scale,
        harmonics,
        rotation=float(rng.uniform(0.0, TWO_PI)),
        translation=(float(rng.uniform(-0.3, 0.3)), float(rng.uniform(-0.3, 0.3))),
    )


def random_prismatoid(rng: np.random.Generator) -> Prismatoid:
    base = curve_from_spec(random_convex_spec(rng, scale=1.0))
    top = curve_from_spec(random_convex_spec(rng, scale=float(rng.uniform(0.4, 0.8))))
    height = float(rng.uniform(0.0, 2.0))
    return Prismatoid(base, top, height)


def preset_prismatoid(name: str, height: float | None = None) -> Prismatoid:
    return build_prismatoid(Scene(preset=name, height=height))


def circle_spec(radius: float, center=(0.0, 0.0)) -> CurveSpec:
    return CurveSpec(
        family="circle", params={"radius": radius}, translation=tuple(center)
    )


def ellipse_spec(a: float, b: float, rotation: float = 0.0, center=(0.0, 0.0)) -> CurveSpec:
    return CurveSpec(
        family="ellipse",
        params={"a": a, "b": b},
        rotation=rotation,
        translation=tuple(center),
    )
