"""Smooth closed convex planar curves.

Curves are maps from the periodic parameter t in [0, 2*pi) to the plane,
counterclockwise, with analytic first and second derivatives.  Four families
are supported (circle, ellipse, superellipse, fourier) plus two derived
evaluators: the unit-speed reparametrization and outward offsets.

Every curve exposes the differential-geometric primitives the unfolding
pipeline needs: unit tangent, outward normal (tangent rotated by -90 degrees,
so it points away from the enclosed region on a counterclockwise curve),
signed curvature, the continuous tangent-angle lift, and its inverse.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import PchipInterpolator

from .errors import InvalidCurveError, QuadratureError

TWO_PI = 2.0 * math.pi

CONVEXITY_SAMPLES = 1024     # validation grid for the convexity gate
CONVEXITY_TOL = 1e-9         # relative noise floor for sampled curvature
CLOSURE_TOL = 1e-12
ANGLE_TABLE_SIZE = 4096      # samples for the tangent-angle branch table
ANGLE_BISECT_ITERS = 52      # one period / 2^52 ~ 1.4e-15 rad
ARC_PANELS = 512             # initial Gauss-Legendre panel count
ARC_PANELS_MAX = 8192
ARC_GAUSS_ORDER = 16
ARC_CONVERGE_REL = 1e-13

_FAMILIES = ("circle", "ellipse", "superellipse", "fourier")


def _as_points(t):
    """Normalize scalar-or-array parameter input; report scalarness."""
    arr = np.asarray(t, dtype=float)
    return np.atleast_1d(arr), arr.ndim == 0


@dataclasses.dataclass(frozen=True)
class CurveSpec:
    """Declarative description of a shape: family, parameters, and pose."""

    family: str
    params: dict
    rotation: float = 0.0
    translation: tuple[float, float] = (0.0, 0.0)

    def to_dict(self) -> dict:
        out = {"family": self.family, "params": dict(self.params)}
        if self.rotation != 0.0:
            out["rotation"] = self.rotation
        if tuple(self.translation) != (0.0, 0.0):
            out["translation"] = list(self.translation)
        return out


@dataclasses.dataclass(frozen=True)
class ArcLengthTable:
    """Cumulative arc length S(t) sampled at Gauss-Legendre panel edges."""

    knots_t: np.ndarray
    knots_s: np.ndarray
    total_length: float


# ---------------------------------------------------------------------------
# family evaluators (raw shapes, before rotation/translation)
# ---------------------------------------------------------------------------


def _circle_raw(params, t, order):
    r = params["radius"]
    c, s = np.cos(t), np.sin(t)
    if order == 0:
        return np.stack([r * c, r * s], axis=-1)
    if order == 1:
        return np.stack([-r * s, r * c], axis=-1)
    return np.stack([-r * c, -r * s], axis=-1)


def _ellipse_raw(params, t, order):
    a, b = params["a"], params["b"]
    c, s = np.cos(t), np.sin(t)
    if order == 0:
        return np.stack([a * c, b * s], axis=-1)
    if order == 1:
        return np.stack([-a * s, b * c], axis=-1)
    return np.stack([-a * c, -b * s], axis=-1)


def _superellipse_raw(params, t, order):
    # Radial form r(t)*(cos t, sin t) with r = g^(-1/m),
    # g = (cos t / a)^m + (sin t / b)^m.  For even integer m the base of every
    # power is a plain polynomial expression, so r is smooth everywhere.
    a, b, m = params["a"], params["b"], params["exponent"]
    c, s = np.cos(t), np.sin(t)
    ca, sb = c / a, s / b
    g = ca**m + sb**m
    r = g ** (-1.0 / m)
    if order == 0:
        return np.stack([r * c, r * s], axis=-1)
    gp = (m / a) * ca ** (m - 1) * (-s) + (m / b) * sb ** (m - 1) * c
    rp = (-1.0 / m) * g ** (-1.0 / m - 1.0) * gp
    if order == 1:
        return np.stack([rp * c - r * s, rp * s + r * c], axis=-1)
    gpp = (m / a) * ((m - 1) * ca ** (m - 2) * (s * s) / a - ca ** (m - 1) * c) + (
        m / b
    ) * ((m - 1) * sb ** (m - 2) * (c * c) / b - sb ** (m - 1) * s)
    rpp = (1.0 / m) * (1.0 / m + 1.0) * g ** (-1.0 / m - 2.0) * gp * gp - (
        1.0 / m
    ) * g ** (-1.0 / m - 1.0) * gpp
    d2x = rpp * c - 2.0 * rp * s - r * c
    d2y = rpp * s + 2.0 * rp * c - r * s
    return np.stack([d2x, d2y], axis=-1)


def _fourier_raw(params, t, order):
    xc, xs, yc, ys = (params[k] for k in ("_xc", "_xs", "_yc", "_ys"))
    k = np.arange(len(xc), dtype=float)
    kt = np.multiply.outer(t, k)
    cos_kt, sin_kt = np.cos(kt), np.sin(kt)
    if order == 0:
        x = cos_kt @ xc + sin_kt @ xs
        y = cos_kt @ yc + sin_kt @ ys
    elif order == 1:
        x = cos_kt @ (k * xs) - sin_kt @ (k * xc)
        y = cos_kt @ (k * ys) - sin_kt @ (k * yc)
    else:
        k2 = k * k
        x = -(cos_kt @ (k2 * xc)) - sin_kt @ (k2 * xs)
        y = -(cos_kt @ (k2 * yc)) - sin_kt @ (k2 * ys)
    return np.stack([x, y], axis=-1)


_RAW_EVAL = {
    "circle": _circle_raw,
    "ellipse": _ellipse_raw,
    "superellipse": _superellipse_raw,
    "fourier": _fourier_raw,
}


def _validate_params(spec: CurveSpec) -> dict:
    """Check family parameters and return the internal parameter dict."""
    p = spec.params
    if spec.family == "circle":
        r = float(p.get("radius", 0.0))
        if not (r > 0.0 and math.isfinite(r)):
            raise InvalidCurveError("circle radius must be positive and finite")
        return {"radius": r}
    if spec.family == "ellipse":
        a, b = float(p.get("a", 0.0)), float(p.get("b", 0.0))
        if not (a > 0.0 and b > 0.0 and math.isfinite(a) and math.isfinite(b)):
            raise InvalidCurveError("ellipse semi-axes must be positive and finite")
        return {"a": a, "b": b}
    if spec.family == "superellipse":
        a, b = float(p.get("a", 0.0)), float(p.get("b", 0.0))
        m = p.get("exponent", 0)
        if not (a > 0.0 and b > 0.0 and math.isfinite(a) and math.isfinite(b)):
            raise InvalidCurveError("superellipse semi-axes must be positive")
        if not (isinstance(m, (int, np.integer)) and m >= 2 and m % 2 == 0):
            raise InvalidCurveError(
                "superellipse exponent must be an even integer >= 2, got %r" % (m,)
            )
        return {"a": a, "b": b, "exponent": int(m)}
    if spec.family == "fourier":
        coefs = {}
        length = 0
        for key in ("x_cos", "x_sin", "y_cos", "y_sin"):
            vals = np.asarray(p.get(key, ()), dtype=float).ravel()
            if vals.size and not np.all(np.isfinite(vals)):
                raise InvalidCurveError("fourier coefficients must be finite")
            coefs[key] = vals
            length = max(length, vals.size)
        if length == 0:
            raise InvalidCurveError("fourier spec needs at least one coefficient")
        padded = {
            "_" + key[0] + key[2]: np.pad(coefs[key], (0, length - coefs[key].size))
            for key in ("x_cos", "x_sin", "y_cos", "y_sin")
        }
        return padded
    raise InvalidCurveError(
        "unknown curve family %r (expected one of %s)" % (spec.family, list(_FAMILIES))
    )


# ---------------------------------------------------------------------------
# curve classes
# ---------------------------------------------------------------------------


class Curve:
    """A closed 2*pi-periodic plane curve, evaluable to second derivatives.

    Subclasses implement ``position`` and ``derivative``; everything else
    (tangent frame, curvature, tangent-angle lift and inversion, offsets,
    arc-length machinery) is shared.
    """

    # -- primitive evaluation ------------------------------------------------

    def position(self, t):
        raise NotImplementedError

    def derivative(self, t, order: int = 1):
        raise NotImplementedError

    # -- tangent frame -------------------------------------------------------

    def speed(self, t):
        d = self.derivative(t, 1)
        return np.linalg.norm(d, axis=-1)

    def unit_tangent(self, t):
        d = self.derivative(t, 1)
        return d / np.linalg.norm(d, axis=-1, keepdims=True)

    def outward_normal(self, t):
        """Unit tangent rotated by -90 degrees; outward for a CCW curve."""
        tb = self.unit_tangent(t)
        return np.stack([tb[..., 1], -tb[..., 0]], axis=-1)

    def curvature(self, t):
        d1 = self.derivative(t, 1)
        d2 = self.derivative(t, 2)
        num = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
        sp = np.linalg.norm(d1, axis=-1)
        return num / sp**3

    # -- tangent-angle lift ----------------------------------------------------

    def _angle_table(self):
        cached = getattr(self, "_angle_table_cache", None)
        if cached is None:
            grid = np.linspace(0.0, TWO_PI, ANGLE_TABLE_SIZE + 1)
            d = self.derivative(grid, 1)
            raw = np.unwrap(np.arctan2(d[:, 1], d[:, 0]))
            steps = np.diff(raw)
            if np.any(np.abs(steps) > 0.5 * math.pi):
                raise InvalidCurveError(
                    "tangent direction turns too fast for the angle table"
                )
            cached = (grid, raw)
            self._angle_table_cache = cached
        return cached

    def tangent_angle(self, t):
        """Continuous monotone lift of the tangent direction angle.

        Satisfies tangent_angle(t + 2*pi) = tangent_angle(t) + 2*pi and at
        every t equals atan2 of the tangent up to an exact multiple of 2*pi.
        """
        grid, table = self._angle_table()
        tt, scalar = _as_points(t)
        wraps = np.floor(tt / TWO_PI)
        t_red = tt - wraps * TWO_PI
        d = self.derivative(t_red, 1)
        raw = np.arctan2(d[..., 1], d[..., 0])
        approx = np.interp(t_red, grid, table)
        branch = np.round((approx - raw) / TWO_PI)
        out = raw + TWO_PI * (branch + wraps)
        return float(out[0]) if scalar else out

    def invert_tangent_angle(self, phi):
        """Parameter t in [0, 2*pi) whose tangent angle equals phi mod 2*pi."""
        phi_arr, scalar = _as_points(phi)
        theta0 = self.tangent_angle(0.0)
        target = theta0 + np.mod(phi_arr - theta0, TWO_PI)
        lo = np.zeros_like(phi_arr)
        hi = np.full_like(phi_arr, TWO_PI)
        for _ in range(ANGLE_BISECT_ITERS):
            mid = 0.5 * (lo + hi)
            high_side = self.tangent_angle(mid) > target
            hi = np.where(high_side, mid, hi)
            lo = np.where(high_side, lo, mid)
        out = np.mod(0.5 * (lo + hi), TWO_PI)
        return float(out[0]) if scalar else out

    # -- derived curves --------------------------------------------------------

    def offset(self, distance: float) -> "OffsetCurve":
        if distance < 0.0:
            raise ValueError("offset distance must be nonnegative")
        return OffsetCurve(self, float(distance))

    def with_unit_speed(self) -> "UnitSpeedCurve":
        reparam, _ = arc_length_reparam(self)
        return reparam

    # -- arc length ------------------------------------------------------------

    def arc_length_table(self) -> ArcLengthTable:
        cached = getattr(self, "_arc_table_cache", None)
        if cached is None:
            cached = _build_arc_table(self)
            self._arc_table_cache = cached
        return cached


class ShapeCurve(Curve):
    """Curve built from a :class:`CurveSpec`, validated at construction."""

    def __init__(self, spec: CurveSpec):
        self.spec = spec
        self._params = _validate_params(spec)
        self._eval = _RAW_EVAL[spec.family]
        rot = float(spec.rotation)
        c, s = math.cos(rot), math.sin(rot)
        self._rot = np.array([[c, -s], [s, c]])
        self._shift = np.asarray(spec.translation, dtype=float)
        if self._shift.shape != (2,) or not np.all(np.isfinite(self._shift)):
            raise InvalidCurveError("translation must be a finite 2-vector")
        self._validate_geometry()

    def position(self, t):
        tt, scalar = _as_points(t)
        pts = self._eval(self._params, tt, 0) @ self._rot.T + self._shift
        return pts[0] if scalar else pts

    def derivative(self, t, order: int = 1):
        if order not in (1, 2):
            raise ValueError("derivative order must be 1 or 2")
        tt, scalar = _as_points(t)
        vec = self._eval(self._params, tt, order) @ self._rot.T
        return vec[0] if scalar else vec

    def _validate_geometry(self):
        grid = np.linspace(0.0, TWO_PI, CONVEXITY_SAMPLES, endpoint=False)
        pos = self.position(grid)
        d1 = self.derivative(grid, 1)
        d2 = self.derivative(grid, 2)
        if not (
            np.all(np.isfinite(pos))
            and np.all(np.isfinite(d1))
            and np.all(np.isfinite(d2))
        ):
            raise InvalidCurveError("curve evaluation produced non-finite values")
        gap = np.linalg.norm(self.position(TWO_PI) - self.position(0.0))
        if gap > CLOSURE_TOL:
            raise InvalidCurveError("curve is not closed: |c(2pi) - c(0)| = %g" % gap)
        kappa = self.curvature(grid)
        # Isolated zero-curvature points are legitimate (a superellipse with
        # exponent > 2 is flat at its four axis points), and roundoff can push
        # the sampled value a hair below zero there.  Only a dip that clears
        # the noise floor of the curve's own curvature scale marks genuine
        # concavity.
        floor = -CONVEXITY_TOL * float(np.max(np.abs(kappa)))
        if not (np.all(kappa >= floor) and np.max(kappa) > 0.0):
            worst = float(np.min(kappa))
            raise InvalidCurveError(
                "curvature must be nonnegative on a counterclockwise "
                "convex curve (min sampled curvature %g)" % worst
            )


class UnitSpeedCurve(Curve):
    """Arc-length reparametrization of a source curve, period kept at 2*pi.

    The new parameter tau satisfies S(t(tau)) = L * tau / (2*pi), so the
    speed is the constant L / (2*pi).
    """

    def __init__(self, source: Curve, table: ArcLengthTable):
        self.source = source
        self.table = table
        self.total_length = table.total_length
        self._speed_const = table.total_length / TWO_PI
        # Already-uniform sources (circles, regular shapes) invert trivially.
        drift = np.abs(table.knots_s - self._speed_const * table.knots_t)
        self._identity = bool(np.max(drift) <= 1e-12 * max(1.0, table.total_length))
        # Monotone cubic initial guess for t(S); Newton polishes per query.
        self._inverse_guess = PchipInterpolator(table.knots_s, table.knots_t)

    def source_param(self, tau):
        """Source parameter t with S(t) = L * tau / (2*pi), elementwise."""
        if self._identity:
            arr = np.asarray(tau, dtype=float)
            return float(arr) if arr.ndim == 0 else arr.copy()
        return self._source_param(tau)

    def _source_param(self, tau):
        tt, scalar = _as_points(tau)
        wraps = np.floor(tt / TWO_PI)
        tau_red = tt - wraps * TWO_PI
        target = self._speed_const * tau_red
        t = np.clip(self._inverse_guess(target), 0.0, TWO_PI)
        for _ in range(3):
            resid = _arc_length_eval(self.source, self.table, t) - target
            t = np.clip(t - resid / np.linalg.norm(
                self.source.derivative(t, 1), axis=-1), 0.0, TWO_PI)
        resid = _arc_length_eval(self.source, self.table, t) - target
        bad = np.abs(resid) > 1e-10 * max(1.0, self.total_length)
        if np.any(bad):
            # Bisection fallback for queries Newton failed to settle.
            lo = np.zeros(int(np.count_nonzero(bad)))
            hi = np.full_like(lo, TWO_PI)
            goal = target[bad]
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                high_side = _arc_length_eval(self.source, self.table, mid) > goal
                hi = np.where(high_side, mid, hi)
                lo = np.where(high_side, lo, mid)
            t[bad] = 0.5 * (lo + hi)
        out = t + wraps * TWO_PI
        return float(out[0]) if scalar else out

    def position(self, tau):
        t = self.source_param(tau)
        return self.source.position(t)

    def derivative(self, tau, order: int = 1):
        if order not in (1, 2):
            raise ValueError("derivative order must be 1 or 2")
        t = self.source_param(tau)
        d1 = self.source.derivative(t, 1)
        sp = np.linalg.norm(d1, axis=-1)
        dt = self._speed_const / sp
        if order == 1:
            return d1 * np.expand_dims(dt, -1)
        d2 = self.source.derivative(t, 2)
        sp_rate = np.sum(d1 * d2, axis=-1) / sp
        ddt = -self._speed_const * sp_rate * dt / sp**2
        return d2 * np.expand_dims(dt * dt, -1) + d1 * np.expand_dims(ddt, -1)


class OffsetCurve(Curve):
    """Outward offset o(t) = c(t) + k * n(t) of a convex source curve."""

    def __init__(self, source: Curve, distance: float):
        self.source = source
        self.distance = distance

    def position(self, t):
        return self.source.position(t) + self.distance * self.source.outward_normal(t)

    def derivative(self, t, order: int = 1):
        if order == 1:
            # n'(t) = curvature * speed * T, so o' = (1 + k*kappa) * c'.
            factor = 1.0 + self.distance * self.source.curvature(t)
            return self.source.derivative(t, 1) * np.expand_dims(factor, -1)
        if order == 2:
            h = 1e-6 * TWO_PI
            return (self.derivative(t + h, 1) - self.derivative(t - h, 1)) / (2.0 * h)
        raise ValueError("derivative order must be 1 or 2")


def curve_from_spec(spec: CurveSpec) -> ShapeCurve:
    """Build and validate a curve from its declarative description."""
    return ShapeCurve(spec)


# ---------------------------------------------------------------------------
# arc-length quadrature
# ---------------------------------------------------------------------------


def _gauss_cache(order=ARC_GAUSS_ORDER):
    nodes, weights = leggauss(order)
    return nodes, weights


_GL_NODES, _GL_WEIGHTS = _gauss_cache()


def _panel_lengths(curve: Curve, edges: np.ndarray) -> np.ndarray:
    """Gauss-Legendre arc length of each panel [edges[i], edges[i+1]]."""
    lo = edges[:-1]
    half = 0.5 * np.diff(edges)
    # nodes: (panels, order)
    t_nodes = lo[:, None] + half[:, None] * (_GL_NODES[None, :] + 1.0)
    sp = np.linalg.norm(curve.derivative(t_nodes.ravel(), 1), axis=-1)
    sp = sp.reshape(t_nodes.shape)
    return half * (sp @ _GL_WEIGHTS)


def _build_arc_table(curve: Curve) -> ArcLengthTable:
    panels = ARC_PANELS
    prev_total = None
    while panels <= ARC_PANELS_MAX:
        edges = np.linspace(0.0, TWO_PI, panels + 1)
        lengths = _panel_lengths(curve, edges)
        total = float(np.sum(lengths))
        if prev_total is not None and abs(total - prev_total) <= ARC_CONVERGE_REL * total:
            knots_s = np.concatenate([[0.0], np.cumsum(lengths)])
            knots_s[-1] = total
            return ArcLengthTable(edges, knots_s, total)
        prev_total = total
        panels *= 2
    raise QuadratureError(
        "arc-length quadrature did not converge below %g at %d panels"
        % (ARC_CONVERGE_REL, ARC_PANELS_MAX)
    )


def _arc_length_eval(curve: Curve, table: ArcLengthTable, t) -> np.ndarray:
    """Cumulative arc length S(t) for t in [0, 2*pi], vectorized."""
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    n_panels = len(table.knots_t) - 1
    width = TWO_PI / n_panels
    idx = np.clip((tt / width).astype(int), 0, n_panels - 1)
    lo = table.knots_t[idx]
    base = table.knots_s[idx]
    half = 0.5 * (tt - lo)
    t_nodes = lo[:, None] + half[:, None] * (_GL_NODES[None, :] + 1.0)
    sp = np.linalg.norm(curve.derivative(t_nodes.ravel(), 1), axis=-1)
    sp = sp.reshape(t_nodes.shape)
    return base + half * (sp @ _GL_WEIGHTS)


def arc_length_reparam(curve: Curve):
    """Unit-speed reparametrization of ``curve`` plus its arc-length table."""
    table = curve.arc_length_table()
    return UnitSpeedCurve(curve, table), table
