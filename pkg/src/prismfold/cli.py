"""Command-line interface: unfold, render, and export-poly subcommands.

Exit codes: 0 when the unfolding certifies nonoverlapping (and for
successful render/export runs), 1 for input or I/O errors, 2 when the
verdict is overlap_detected, 3 when it is resolution_insufficient.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .errors import PrismfoldError
from .figures import save_report_figures
from .placement import maximize_tip_distance
from .render import render_scene
from .report import (
    polygonal_export,
    render_json,
    report_document,
    unfolding_csv,
)
from .scene import (
    MAX_SAMPLES,
    MIN_SAMPLES,
    build_prismatoid,
    parse_scene,
    scene_samples,
)
from .unfold import side_unfolding
from .verify import VERDICT_OK, VERDICT_OVERLAP, full_report

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_OVERLAP = 2
EXIT_RESOLUTION = 3

_VERDICT_CODES = {VERDICT_OK: EXIT_OK, VERDICT_OVERLAP: EXIT_OVERLAP}


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, "%s: error: %s\n" % (self.prog, message))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="prismfold",
        description="Compute, certify and render volcano unfoldings of "
        "smooth prismatoids.",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_unfold = sub.add_parser(
        "unfold",
        help="run the full pipeline and write a certification report",
    )
    p_unfold.add_argument(
        "scene", help="scene file path, preset name, or inline JSON"
    )
    p_unfold.add_argument(
        "--out", default=None, help="report JSON path (default: stdout)"
    )
    p_unfold.add_argument(
        "--samples", type=int, default=None, help="boundary samples per period"
    )
    p_unfold.add_argument(
        "--csv", default=None, help="also write the per-rib sample table here"
    )
    p_unfold.add_argument(
        "--figures",
        default=None,
        metavar="DIR",
        help="also render overview and profile figures into this directory",
    )
    p_unfold.set_defaults(func=cmd_unfold)

    p_render = sub.add_parser(
        "render", help="write a deterministic SVG of the unfolding"
    )
    p_render.add_argument("scene", help="scene file path, preset name, or inline JSON")
    p_render.add_argument("--out", required=True, help="output SVG path")
    p_render.add_argument(
        "--samples", type=int, default=None, help="boundary samples per period"
    )
    p_render.add_argument(
        "--ribs", type=int, default=0, help="number of unfolded ribs to draw"
    )
    p_render.add_argument(
        "--offset", action="store_true", help="draw the offset envelope"
    )
    p_render.add_argument(
        "--flipout", action="store_true", help="draw the flipped-out top image"
    )
    p_render.set_defaults(func=cmd_render)

    p_export = sub.add_parser(
        "export-poly",
        help="export matched polygonal approximations of both curves",
    )
    p_export.add_argument("scene", help="scene file path, preset name, or inline JSON")
    p_export.add_argument("--out", required=True, help="output text path")
    p_export.add_argument(
        "--k", type=int, required=True, help="polygon vertex count (>= 3)"
    )
    p_export.set_defaults(func=cmd_export_poly)
    return parser


def _load(args):
    """Scene and sample count from the parsed arguments."""
    scene = parse_scene(args.scene)
    samples = getattr(args, "samples", None)
    if samples is None:
        samples = scene_samples(scene)
    elif not (MIN_SAMPLES <= samples <= MAX_SAMPLES):
        raise PrismfoldError(
            "--samples must be in [%d, %d]" % (MIN_SAMPLES, MAX_SAMPLES)
        )
    return scene, samples


def cmd_unfold(args) -> int:
    scene, samples = _load(args)
    prismatoid = build_prismatoid(scene)
    start = time.perf_counter()
    report = full_report(prismatoid, samples)
    timing_ms = (time.perf_counter() - start) * 1000.0
    doc = report_document(scene, report, samples=samples, timing_ms=timing_ms)
    text = render_json(doc)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as handle:
            handle.write(text)
    if args.csv is not None or args.figures is not None:
        unfolding = side_unfolding(
            prismatoid, report.samples_used, check_simple=False
        )
        if args.csv is not None:
            with open(args.csv, "w") as handle:
                handle.write(unfolding_csv(unfolding))
        if args.figures is not None:
            attachment = maximize_tip_distance(prismatoid)
            save_report_figures(prismatoid, unfolding, attachment, args.figures)
    return _VERDICT_CODES.get(report.verdict, EXIT_RESOLUTION)


def cmd_render(args) -> int:
    scene, samples = _load(args)
    if args.ribs < 0:
        raise PrismfoldError("--ribs must be nonnegative")
    prismatoid = build_prismatoid(scene)
    svg = render_scene(
        prismatoid,
        samples=samples,
        rib_count=args.ribs,
        show_offset=args.offset,
        show_flipout=args.flipout,
    )
    with open(args.out, "w") as handle:
        handle.write(svg)
    return EXIT_OK


def cmd_export_poly(args) -> int:
    scene, _ = _load(args)
    if args.k < 3:
        raise PrismfoldError("--k must be at least 3")
    prismatoid = build_prismatoid(scene)
    text = polygonal_export(prismatoid, args.k)
    with open(args.out, "w") as handle:
        handle.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PrismfoldError, OSError, ValueError) as exc:
        sys.stderr.write("prismfold: error: %s\n" % exc)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
