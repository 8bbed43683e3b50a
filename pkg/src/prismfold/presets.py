"""Shipped example configurations and a convex-shape design helper.

The gallery presets are scene JSON files under ``prismfold/presets/``; they
were generated once from support-function designs via
:func:`fourier_spec_from_support` and committed as data, so they double as
bit-exact examples of the scene schema.

Support-function designs make convexity easy to guarantee: a shape with
support function h(phi) = c0 + sum_k A_k cos(k phi - d_k) has curvature
radius h + h'' = c0 + sum_k (1 - k^2) A_k cos(k phi - d_k), which stays
positive whenever sum_k (k^2 - 1) A_k < c0.
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .curve import CurveSpec

_PRESET_FILES = {
    "cone": "cone.json",
    "truncated_cone": "truncated_cone.json",
    "nested_circles": "nested_circles.json",
    "crossing": "crossing.json",
    "ellipse_in_rounded_square": "ellipse_in_rounded_square.json",
    "mouse": "mouse.json",
    "rounded_parallelogram": "rounded_parallelogram.json",
    "ellipse_in_ellipse": "ellipse_in_ellipse.json",
    "ellipse_top_3d": "ellipse_top_3d.json",
}

#: The five gallery configurations exercised by the acceptance checks.
GALLERY_PRESETS = (
    "ellipse_in_rounded_square",
    "mouse",
    "rounded_parallelogram",
    "ellipse_in_ellipse",
    "ellipse_top_3d",
)


def preset_names() -> list[str]:
    return sorted(_PRESET_FILES)


def preset_path(name: str):
    """Importlib resource path of a preset's scene file."""
    if name not in _PRESET_FILES:
        raise KeyError(
            "unknown preset %r (available: %s)" % (name, ", ".join(preset_names()))
        )
    return resources.files(__package__).joinpath("presets").joinpath(_PRESET_FILES[name])


def load_preset(name: str):
    """Parsed scene of a shipped preset."""
    from .scene import parse_scene_dict

    doc = json.loads(preset_path(name).read_text(encoding="utf-8"))
    return parse_scene_dict(doc)


def fourier_spec_from_support(
    c0: float,
    harmonics: dict[int, tuple[float, float]],
    rotation: float = 0.0,
    translation: tuple[float, float] = (0.0, 0.0),
) -> CurveSpec:
    """Fourier curve spec for the shape with the given support function.

    ``harmonics`` maps each harmonic index k >= 2 to (amplitude, phase) of
    an A * cos(k phi - d) term.  The boundary of such a shape is

        x(phi) = h(phi) cos(phi) - h'(phi) sin(phi)
        y(phi) = h(phi) sin(phi) + h'(phi) cos(phi)

    a trigonometric polynomial of degree max(k) + 1 whose coefficients are
    extracted exactly by a discrete Fourier transform.  Raises ValueError
    when the curvature-radius budget sum (k^2 - 1) A_k >= c0 is violated.
    """
    budget = sum((k * k - 1.0) * abs(a) for k, (a, _) in harmonics.items())
    if budget >= c0:
        raise ValueError(
            "support harmonics too strong for convexity: "
            "sum (k^2-1)|A_k| = %g >= c0 = %g" % (budget, c0)
        )
    if any(k < 2 for k in harmonics):
        raise ValueError("support harmonics start at k = 2 (k = 1 is a translation)")
    order = max(harmonics) + 1 if harmonics else 1
    m = 8 * (order + 1)
    phi = np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)
    h = np.full_like(phi, float(c0))
    hp = np.zeros_like(phi)
    for k, (amp, delta) in harmonics.items():
        h += amp * np.cos(k * phi - delta)
        hp += -k * amp * np.sin(k * phi - delta)
    x = h * np.cos(phi) - hp * np.sin(phi)
    y = h * np.sin(phi) + hp * np.cos(phi)

    def line_coeffs(signal: np.ndarray) -> tuple[list[float], list[float]]:
        spectrum = np.fft.rfft(signal) / m
        cos_c = [float(spectrum[0].real)]
        sin_c = [0.0]
        for k in range(1, order + 1):
            cos_c.append(2.0 * float(spectrum[k].real))
            sin_c.append(-2.0 * float(spectrum[k].imag))
        tail = np.abs(spectrum[order + 1 :]).max() if len(spectrum) > order + 1 else 0.0
        if tail > 1e-12 * max(1.0, abs(c0)):
            raise AssertionError("support conversion left spectral residue %g" % tail)
        return [_clean(v) for v in cos_c], [_clean(v) for v in sin_c]

    xc, xs = line_coeffs(x)
    yc, ys = line_coeffs(y)
    return CurveSpec(
        family="fourier",
        params={"x_cos": xc, "x_sin": xs, "y_cos": yc, "y_sin": ys},
        rotation=rotation,
        translation=translation,
    )


def _clean(v: float, tol: float = 1e-13) -> float:
    return 0.0 if abs(v) < tol else v
