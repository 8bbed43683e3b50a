"""Volcano unfoldings of smooth prismatoids.

A prismatoid here is the convex hull of two smooth, strictly convex planar
curves in parallel planes.  This package computes the rib correspondence
between the two curves, unfolds the side surface into the base plane,
chooses the attachment rib for the top curve, and certifies that the
resulting layout does not overlap.
"""

from importlib import metadata

try:
    __version__ = metadata.version("prismfold")
except metadata.PackageNotFoundError:  # running from a source tree
    __version__ = "0+unknown"

from .curve import (
    ArcLengthTable,
    Curve,
    CurveSpec,
    OffsetCurve,
    ShapeCurve,
    UnitSpeedCurve,
    arc_length_reparam,
    curve_from_spec,
)
from .errors import (
    InvalidCurveError,
    PrismfoldError,
    QuadratureError,
    SceneError,
    SelfIntersectionError,
    TangencyError,
)
from .placement import (
    AttachmentResult,
    FlipOutPlacement,
    OffsetEnvelope,
    flip_out,
    hull_membership,
    maximize_tip_distance,
    mutual_tangency_residual,
    offset_envelope,
    unfolded_tip,
)
from .presets import GALLERY_PRESETS, fourier_spec_from_support, load_preset, preset_names
from .prismatoid import Prismatoid, RibSample
from .render import render_scene
from .report import polygonal_export, report_document, render_json, unfolding_csv
from .scene import Scene, build_prismatoid, parse_scene, scene_samples, scene_to_json
from .unfold import (
    SideUnfolding,
    UnfoldedRib,
    rib_tip_distance,
    side_unfolding,
    unfold_rib,
    unfold_rib_flat,
)
from .verify import (
    OverlapReport,
    encloses,
    flipout_crossings,
    full_report,
    region_area,
    ribs_pairwise_disjoint,
)

__all__ = [
    "__version__",
    "ArcLengthTable",
    "AttachmentResult",
    "Curve",
    "CurveSpec",
    "FlipOutPlacement",
    "GALLERY_PRESETS",
    "InvalidCurveError",
    "OffsetCurve",
    "OffsetEnvelope",
    "OverlapReport",
    "Prismatoid",
    "PrismfoldError",
    "QuadratureError",
    "RibSample",
    "Scene",
    "SceneError",
    "SelfIntersectionError",
    "ShapeCurve",
    "SideUnfolding",
    "TangencyError",
    "UnfoldedRib",
    "UnitSpeedCurve",
    "arc_length_reparam",
    "build_prismatoid",
    "curve_from_spec",
    "encloses",
    "flip_out",
    "flipout_crossings",
    "fourier_spec_from_support",
    "full_report",
    "hull_membership",
    "load_preset",
    "maximize_tip_distance",
    "mutual_tangency_residual",
    "offset_envelope",
    "parse_scene",
    "polygonal_export",
    "preset_names",
    "region_area",
    "render_json",
    "render_scene",
    "report_document",
    "rib_tip_distance",
    "ribs_pairwise_disjoint",
    "scene_samples",
    "scene_to_json",
    "side_unfolding",
    "unfold_rib",
    "unfold_rib_flat",
    "unfolded_tip",
    "unfolding_csv",
]
