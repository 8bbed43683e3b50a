"""Scene documents: the JSON input format of the command-line tools.

A scene either names a shipped preset or spells out both curves and the
height between their planes:

    {"preset": "truncated_cone"}
    {"preset": "mouse", "height": 1.0, "samples": 2048}
    {
      "base": {"family": "circle", "params": {"radius": 1.0}},
      "top": {"family": "ellipse", "params": {"a": 0.6, "b": 0.3},
              "rotation": 0.5236, "translation": [0.1, 0.0]},
      "height": 1.0,
      "samples": 1024
    }

"height" and "samples" are optional overrides when a preset is named, and
"height" is required when curves are given explicitly.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os

from .curve import CurveSpec, curve_from_spec
from .errors import InvalidCurveError, SceneError
from .prismatoid import Prismatoid

DEFAULT_SAMPLES = 1024
MIN_SAMPLES = 64
MAX_SAMPLES = 1_000_000

_SCENE_KEYS = {"preset", "base", "top", "height", "samples"}
_CURVE_KEYS = {"family", "params", "rotation", "translation"}


@dataclasses.dataclass(frozen=True)
class Scene:
    """Parsed scene document."""

    preset: str | None = None
    base: CurveSpec | None = None
    top: CurveSpec | None = None
    height: float | None = None
    samples: int | None = None


def _parse_curve(obj, where: str) -> CurveSpec:
    if not isinstance(obj, dict):
        raise SceneError("%s must be an object" % where)
    unknown = set(obj) - _CURVE_KEYS
    if unknown:
        raise SceneError("%s has unknown keys %s" % (where, sorted(unknown)))
    family = obj.get("family")
    if not isinstance(family, str):
        raise SceneError("%s.family must be a string" % where)
    params = obj.get("params")
    if not isinstance(params, dict):
        raise SceneError("%s.params must be an object" % where)
    rotation = obj.get("rotation", 0.0)
    if not isinstance(rotation, (int, float)) or isinstance(rotation, bool):
        raise SceneError("%s.rotation must be a number" % where)
    translation = obj.get("translation", (0.0, 0.0))
    if (
        not isinstance(translation, (list, tuple))
        or len(translation) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in translation)
    ):
        raise SceneError("%s.translation must be a pair of numbers" % where)
    return CurveSpec(
        family=family,
        params=params,
        rotation=float(rotation),
        translation=(float(translation[0]), float(translation[1])),
    )


def parse_scene_dict(doc: dict) -> Scene:
    if not isinstance(doc, dict):
        raise SceneError("scene document must be a JSON object")
    unknown = set(doc) - _SCENE_KEYS
    if unknown:
        raise SceneError("scene has unknown keys %s" % sorted(unknown))
    preset = doc.get("preset")
    has_curves = "base" in doc or "top" in doc
    if preset is not None:
        if not isinstance(preset, str):
            raise SceneError("scene.preset must be a string")
        if has_curves:
            raise SceneError("scene must give exactly one of preset or base+top")
    else:
        if not ("base" in doc and "top" in doc):
            raise SceneError("scene must give exactly one of preset or base+top")
    base = _parse_curve(doc["base"], "scene.base") if "base" in doc else None
    top = _parse_curve(doc["top"], "scene.top") if "top" in doc else None
    height = doc.get("height")
    if height is not None:
        if not isinstance(height, (int, float)) or isinstance(height, bool):
            raise SceneError("scene.height must be a number")
        height = float(height)
        if not (height >= 0.0 and math.isfinite(height)):
            raise SceneError("scene.height must be finite and >= 0")
    elif preset is None:
        raise SceneError("scene.height is required with explicit curves")
    samples = doc.get("samples")
    if samples is not None:
        if not isinstance(samples, int) or isinstance(samples, bool):
            raise SceneError("scene.samples must be an integer")
        if not (MIN_SAMPLES <= samples <= MAX_SAMPLES):
            raise SceneError(
                "scene.samples must be in [%d, %d]" % (MIN_SAMPLES, MAX_SAMPLES)
            )
    return Scene(preset=preset, base=base, top=top, height=height, samples=samples)


def parse_scene(source: str) -> Scene:
    """Parse a scene from a JSON string, a file path, or a preset name."""
    text = source
    stripped = source.lstrip()
    if not stripped.startswith("{"):
        if os.path.exists(source):
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        else:
            from .presets import preset_names

            if source in preset_names():
                return Scene(preset=source)
            raise SceneError(
                "scene source %r is neither a file, a JSON object, nor a "
                "preset name" % source
            )
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError("scene is not valid JSON: %s" % exc) from exc
    return parse_scene_dict(doc)


def scene_to_dict(scene: Scene) -> dict:
    doc: dict = {}
    if scene.preset is not None:
        doc["preset"] = scene.preset
    if scene.base is not None:
        doc["base"] = scene.base.to_dict()
    if scene.top is not None:
        doc["top"] = scene.top.to_dict()
    if scene.height is not None:
        doc["height"] = scene.height
    if scene.samples is not None:
        doc["samples"] = scene.samples
    return doc


def scene_to_json(scene: Scene) -> str:
    """Serialize a scene; parse_scene round-trips this exactly."""
    return json.dumps(scene_to_dict(scene), indent=2, sort_keys=True) + "\n"


def resolve_scene(scene: Scene) -> Scene:
    """Expand a preset reference into explicit curves, applying overrides."""
    if scene.preset is None:
        return scene
    from .presets import load_preset

    resolved = load_preset(scene.preset)
    height = scene.height if scene.height is not None else resolved.height
    samples = scene.samples if scene.samples is not None else resolved.samples
    return Scene(
        preset=None,
        base=resolved.base,
        top=resolved.top,
        height=height,
        samples=samples,
    )


def build_prismatoid(scene: Scene) -> Prismatoid:
    """Construct the prismatoid a scene describes."""
    resolved = resolve_scene(scene)
    try:
        base = curve_from_spec(resolved.base)
        top = curve_from_spec(resolved.top)
    except InvalidCurveError as exc:
        raise SceneError("invalid curve in scene: %s" % exc) from exc
    height = resolved.height if resolved.height is not None else 0.0
    return Prismatoid(base, top, height)


def scene_samples(scene: Scene) -> int:
    resolved = resolve_scene(scene)
    return resolved.samples if resolved.samples is not None else DEFAULT_SAMPLES
