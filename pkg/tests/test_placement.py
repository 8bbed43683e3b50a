"""Attachment selection, tangency, envelope, hull, and flip-out placement."""

import math

import numpy as np
import pytest

from prismfold import (
    Scene,
    build_prismatoid,
    flip_out,
    maximize_tip_distance,
    offset_envelope,
    side_unfolding,
)
from prismfold.curve import TWO_PI
from prismfold.errors import TangencyError
from prismfold.placement import (
    hull_membership,
    mutual_tangency_residual,
    unfolded_tip,
)
from prismfold.unfold import rib_tip_distance

from helpers import circle_spec, ellipse_spec, preset_prismatoid

SLANT = math.sqrt(1.25)


def concentric_flat():
    scene = Scene(base=circle_spec(1.0), top=circle_spec(0.5), height=0.0)
    return build_prismatoid(scene)


def tilted_ellipse_in_circle():
    # minor axis of the top at angle 2pi/3, so the argmax is known exactly
    scene = Scene(
        base=circle_spec(1.0),
        top=ellipse_spec(0.6, 0.3, rotation=np.pi / 6.0),
        height=0.0,
    )
    return build_prismatoid(scene)


def test_concentric_flat_is_all_safe():
    att = maximize_tip_distance(concentric_flat())
    assert att.all_safe
    assert att.t_hat == 0.0
    assert att.ties == [0.0]
    assert abs(att.max_distance - 1.0) < 1e-9


def test_nested_base_flat_is_all_safe_with_zero_distance():
    scene = Scene(base=ellipse_spec(0.6, 0.3), top=circle_spec(1.2), height=0.0)
    att = maximize_tip_distance(build_prismatoid(scene))
    assert att.all_safe
    assert att.max_distance < 1e-12


def test_tilted_ellipse_ties_and_maximum():
    # the two ribs aligned with the top's minor axis tie for the maximum,
    # which equals twice the support gap: 2 * (1 - 0.3) = 1.4
    att = maximize_tip_distance(tilted_ellipse_in_circle())
    assert not att.all_safe
    assert len(att.ties) == 2
    assert abs(att.t_hat - 2.0 * np.pi / 3.0) < 1e-6
    assert abs((att.ties[1] - att.ties[0]) - np.pi) < 1e-6
    assert abs(att.max_distance - 1.4) < 1e-9


def test_ties_dominate_the_spectrum():
    P = tilted_ellipse_in_circle()
    att = maximize_tip_distance(P)
    assert att.t_hat == att.ties[0]
    for t in att.ties:
        value = rib_tip_distance(P, t)[0]
        assert value >= att.max_distance * (1.0 - 1e-9)
    grid = np.linspace(0.0, TWO_PI, 4096, endpoint=False)
    assert np.max(rib_tip_distance(P, grid)[0]) <= att.max_distance + 1e-9


def test_argmax_is_stable_under_lifting():
    reference = maximize_tip_distance(preset_prismatoid("mouse", height=0.0)).t_hat
    for z in (0.25, 1.0, 4.0):
        lifted = maximize_tip_distance(preset_prismatoid("mouse", height=z)).t_hat
        assert abs(lifted - reference) < 1e-6


def test_mutual_tangency_holds_at_argmax():
    for name in ("mouse", "ellipse_in_rounded_square"):
        P = preset_prismatoid(name, height=1.0)
        att = maximize_tip_distance(P)
        check = mutual_tangency_residual(P, att.t_hat)
        assert not check.degenerate
        assert check.residual < 1e-6


def test_tangency_residual_discriminates_off_argmax():
    P = preset_prismatoid("mouse", height=1.0)
    t_hat = maximize_tip_distance(P).t_hat
    for shift in (0.5, 1.0, 1.5, 2.0):
        assert mutual_tangency_residual(P, t_hat + shift).residual > 1e-3


def test_envelope_of_concentric_flat_is_a_circle():
    P = concentric_flat()
    env = offset_envelope(P, 0.0)
    assert abs(env.distance - 1.0) < 1e-12
    pts = env.position(np.linspace(0.0, TWO_PI, 64, endpoint=False))
    assert np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - 1.5)) < 1e-12


def test_envelope_coincides_with_truncated_cone_boundary():
    scene = Scene(base=circle_spec(1.0), top=circle_spec(0.5), height=1.0)
    P = build_prismatoid(scene)
    U = side_unfolding(P, 256)
    env = offset_envelope(P, 0.0)
    assert abs(env.distance - (SLANT + 0.5)) < 1e-12
    assert np.max(np.abs(env.position(U.t) - U.tips)) < 1e-9


@pytest.mark.parametrize("name", ["mouse", "rounded_parallelogram"])
def test_envelope_encloses_and_touches_boundary(name):
    P = preset_prismatoid(name, height=1.0)
    att = maximize_tip_distance(P)
    U = side_unfolding(P, 1024)
    env = offset_envelope(P, att.t_hat)
    t_grid = np.sort(np.append(U.t, att.t_hat % TWO_PI))
    outer = env.position(t_grid)
    inner = np.vstack([U.tips, unfolded_tip(P, att.t_hat)[None, :]])
    from prismfold.planar import distance_to_polyline, signed_clearance

    clearance = signed_clearance(inner, outer)
    assert float(np.min(clearance)) >= -1e-7
    assert float(np.min(distance_to_polyline(inner, outer))) < 1e-6


def test_hull_membership_discriminates():
    P = preset_prismatoid("mouse", height=1.0)
    att = maximize_tip_distance(P)
    U = side_unfolding(P, 1024)
    assert hull_membership(U, att.t_hat)
    t_bad = float(U.t[np.argmin(U.space_distances)])
    assert not hull_membership(U, t_bad)


def test_flip_out_nested_circles_lands_outside():
    P = concentric_flat()
    placement = flip_out(P, 0.0)
    assert np.allclose(placement.apply(np.array([0.0, 0.0])), [2.0, 0.0], atol=1e-12)
    center_dist = np.linalg.norm(placement.top_image - [2.0, 0.0], axis=1)
    assert np.max(np.abs(center_dist - 0.5)) < 1e-9
    # placed copy stays outside the unfolded boundary circle of radius 1.5
    assert np.min(np.hypot(*placement.top_image.T)) > 1.5 - 1e-9


def test_flip_out_linear_part_is_a_reflection():
    P = preset_prismatoid("mouse", height=1.0)
    t_hat = maximize_tip_distance(P).t_hat
    placement = flip_out(P, t_hat)
    L = placement.linear
    assert np.allclose(L @ L.T, np.eye(2), atol=1e-12)
    assert abs(np.linalg.det(L) + 1.0) < 1e-12
    rib = P.rib(t_hat)
    assert np.allclose(L @ rib.tangent, rib.tangent, atol=1e-12)
    assert np.allclose(L @ rib.normal, -rib.normal, atol=1e-12)


def test_flip_out_carries_contact_point_to_tip():
    P = preset_prismatoid("ellipse_in_ellipse", height=1.0)
    t_hat = maximize_tip_distance(P).t_hat
    placement = flip_out(P, t_hat)
    rib = P.rib(t_hat)
    tip = unfolded_tip(P, t_hat)
    assert np.allclose(placement.apply(rib.top_point), tip, atol=1e-12)


def test_flip_out_tangent_direction_matches_boundary():
    P = preset_prismatoid("mouse", height=1.0)
    t_hat = maximize_tip_distance(P).t_hat
    placement = flip_out(P, t_hat)
    t_top = P.correspond(t_hat)
    tan_img = placement.linear @ P.top.unit_tangent(t_top)
    eps = 1e-6
    vel = (unfolded_tip(P, t_hat + eps) - unfolded_tip(P, t_hat - eps)) / (2 * eps)
    vel = vel / np.linalg.norm(vel)
    cross = tan_img[0] * vel[1] - tan_img[1] * vel[0]
    assert abs(cross) < 1e-7


def test_flip_out_refuses_non_tangent_rib():
    P = preset_prismatoid("mouse", height=1.0)
    t_hat = maximize_tip_distance(P).t_hat
    with pytest.raises(TangencyError):
        flip_out(P, t_hat + 1.0)
    # the override used for negative controls places it anyway
    placement = flip_out(P, t_hat + 1.0, require_tangency=False)
    assert placement.top_image.shape == (1024, 2)
