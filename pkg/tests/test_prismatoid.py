"""Rib correspondence, classification, and bi-tangent detection."""

import numpy as np
import pytest

from prismfold import Prismatoid, curve_from_spec
from prismfold.curve import TWO_PI
from prismfold.prismatoid import KIND_NONREFLECTED, KIND_REFLECTED

from helpers import (
    circle_spec,
    ellipse_spec,
    preset_prismatoid,
    random_prismatoid,
)

# bi-tangent roots of the crossing preset (ellipse (2, 0.8) over the unit
# circle), frozen from an 8192-point sign scan plus bisection
CROSSING_BITANGENTS = (1.23732315, 1.90426950, 4.37891581, 5.04586215)


def concentric(r_base: float, r_top: float, height: float) -> Prismatoid:
    return Prismatoid(
        curve_from_spec(circle_spec(r_base)),
        curve_from_spec(circle_spec(r_top)),
        height,
    )


def wrap_gap(a, b):
    d = np.abs(np.asarray(a) - np.asarray(b)) % TWO_PI
    return np.minimum(d, TWO_PI - d)


def test_correspond_concentric_circles_is_identity():
    P = concentric(1.0, 0.5, 0.0)
    t = np.linspace(0.0, TWO_PI, 64, endpoint=False)
    assert np.max(wrap_gap(P.correspond(t), t)) < 1e-9


def test_correspond_translated_circle_is_identity():
    P = Prismatoid(
        curve_from_spec(circle_spec(1.0)),
        curve_from_spec(circle_spec(1.0, center=(0.2, 0.0))),
        0.0,
    )
    t = np.linspace(0.0, TWO_PI, 64, endpoint=False)
    assert np.max(wrap_gap(P.correspond(t), t)) < 1e-9


def test_correspond_ellipse_base_circle_top_closed_form():
    P = Prismatoid(
        curve_from_spec(ellipse_spec(2.0, 1.0)),
        curve_from_spec(circle_spec(1.0)),
        0.0,
    )
    t = np.linspace(0.0, TWO_PI, 64, endpoint=False)
    # on a circle the tangent angle is t + pi/2, so inversion subtracts pi/2
    expected = (P.base.tangent_angle(t) - np.pi / 2) % TWO_PI
    assert np.max(wrap_gap(P.correspond(t), expected)) < 1e-9


def test_correspondence_is_monotone_bijection():
    rng = np.random.default_rng(5)
    P = random_prismatoid(rng)
    t = np.linspace(0.0, TWO_PI, 512, endpoint=False)
    t_top = np.unwrap(np.asarray(P.correspond(t)))
    steps = np.diff(t_top)
    assert np.all(steps > 0.0)
    # degree-one circle map: one base revolution covers the top exactly once
    span = t_top[-1] - t_top[0]
    assert 0.0 < TWO_PI - span < 2.0 * steps.max()


def test_parallel_tangents_at_sampled_ribs():
    for P in (preset_prismatoid("mouse"), preset_prismatoid("crossing", height=0.5)):
        for rib in P.sample_ribs(128):
            top_tan = P.top.unit_tangent(rib.top_param)
            residual = abs(
                top_tan[0] * rib.tangent[1] - top_tan[1] * rib.tangent[0]
            )
            assert residual < 1e-8


def test_sample_ribs_concentric_flat():
    P = concentric(1.0, 0.5, 0.0)
    ribs = P.sample_ribs(16)
    for rib in ribs:
        assert abs(rib.normal_offset + 0.5) < 1e-9
        assert abs(rib.tangential_offset) < 1e-9
        assert rib.kind == KIND_REFLECTED
        assert abs(rib.rib_length - 0.5) < 1e-9


def test_sample_ribs_concentric_z1_length():
    P = concentric(1.0, 0.5, 1.0)
    for rib in P.sample_ribs(16):
        assert abs(rib.rib_length - np.sqrt(1.25)) < 1e-9


def test_sample_ribs_nested_top_encloses_base():
    P = concentric(1.0, 2.0, 0.0)
    for rib in P.sample_ribs(16):
        assert abs(rib.normal_offset - 1.0) < 1e-9
        assert rib.kind == KIND_NONREFLECTED


def test_sample_ribs_minimum_count():
    P = concentric(1.0, 0.5, 0.0)
    with pytest.raises(ValueError):
        P.sample_ribs(8)


def test_rib_length_is_3d_distance():
    rng = np.random.default_rng(13)
    P = random_prismatoid(rng)
    for t in rng.uniform(0.0, TWO_PI, 32):
        rib = P.rib(float(t))
        direct = np.sqrt(
            np.sum((rib.top_point - rib.base_point) ** 2) + P.height**2
        )
        assert abs(rib.rib_length - direct) < 1e-12
        frame = np.hypot(
            np.hypot(rib.tangential_offset, rib.normal_offset), P.height
        )
        assert abs(rib.rib_length - frame) < 1e-12


def test_crossing_preset_has_both_kinds_and_four_bitangents():
    P = preset_prismatoid("crossing")
    kinds = {rib.kind for rib in P.sample_ribs(256)}
    assert KIND_REFLECTED in kinds and KIND_NONREFLECTED in kinds
    roots = P.bitangents()
    assert len(roots) == len(CROSSING_BITANGENTS)
    assert np.max(np.abs(roots - np.asarray(CROSSING_BITANGENTS))) < 1e-6


def test_bitangent_roots_are_tangential():
    P = preset_prismatoid("crossing")
    roots = P.bitangents()
    for t in roots:
        rib = P.rib(float(t))
        assert abs(rib.normal_offset) < 1e-9
        rel = rib.top_point - rib.base_point
        cross = abs(rel[0] * rib.tangent[1] - rel[1] * rib.tangent[0])
        assert cross < 1e-8 * max(1e-9, float(np.linalg.norm(rel)))


def test_bitangent_kinds_alternate():
    P = preset_prismatoid("crossing")
    roots = list(P.bitangents())
    assert len(roots) % 2 == 0
    mids = [
        0.5 * (roots[i] + roots[(i + 1) % len(roots)])
        + (np.pi if i + 1 == len(roots) else 0.0)
        for i in range(len(roots))
    ]
    signs = [np.sign(P.normal_offset(float(m % TWO_PI))) for m in mids]
    for i in range(len(signs)):
        assert signs[i] == -signs[(i + 1) % len(signs)]


def test_bitangents_empty_when_nested():
    assert len(concentric(1.0, 0.5, 0.0).bitangents()) == 0
    assert len(concentric(1.0, 2.0, 0.0).bitangents()) == 0


def test_coincident_curves_degenerate_but_accepted():
    P = concentric(1.0, 1.0, 0.0)
    assert len(P.bitangents()) == 0
    for rib in P.sample_ribs(16):
        assert rib.rib_length < 1e-12


def test_height_must_be_nonnegative():
    with pytest.raises(ValueError):
        concentric(1.0, 0.5, -0.1)
