"""Report figures rendered with matplotlib (Agg backend).

Two figures accompany the JSON report when requested: an overhead view of
the unfolding and the tip-distance profile that drives the attachment
choice.  These are diagnostic raster images; the byte-stable vector output
lives in the render module.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .placement import AttachmentResult, flip_out, offset_envelope, unfolded_tip
from .prismatoid import Prismatoid
from .unfold import SideUnfolding

UNFOLDING_FIGURE = "unfolding.png"
PROFILE_FIGURE = "tip_distance.png"
DPI = 150
RIBS_SHOWN = 48


def _closed(pts: np.ndarray) -> np.ndarray:
    return np.vstack([pts, pts[:1]])


def save_unfolding_figure(
    P: Prismatoid, U: SideUnfolding, attachment: AttachmentResult, path: str
) -> None:
    """Overhead view: base, ribs, unfolded boundary, envelope, flip-out."""
    fig, ax = plt.subplots(figsize=(7.0, 7.0))
    stride = max(1, len(U) // RIBS_SHOWN)
    for i in range(0, len(U), stride):
        ax.plot(
            [U.base_points[i, 0], U.tips[i, 0]],
            [U.base_points[i, 1], U.tips[i, 1]],
            color="0.8",
            lw=0.6,
            zorder=1,
        )
    base = _closed(U.base_points)
    tips = _closed(U.tips)
    ax.plot(base[:, 0], base[:, 1], color="0.2", lw=1.4, label="base", zorder=3)
    ax.plot(tips[:, 0], tips[:, 1], color="tab:blue", lw=1.4, label="unfolded boundary", zorder=3)

    env = _closed(offset_envelope(P, attachment.t_hat).position(U.t))
    ax.plot(env[:, 0], env[:, 1], color="tab:green", lw=0.9, ls="--", label="offset envelope", zorder=2)

    placement = flip_out(P, attachment.t_hat, n_samples=len(U), require_tangency=False)
    image = _closed(placement.top_image)
    ax.plot(image[:, 0], image[:, 1], color="tab:red", lw=1.2, label="flipped-out top", zorder=4)
    tip = unfolded_tip(P, attachment.t_hat)
    ax.plot([tip[0]], [tip[1]], "o", color="tab:red", ms=4, zorder=5)

    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title("volcano unfolding, attachment at t = %.6f" % attachment.t_hat)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def save_profile_figure(U: SideUnfolding, attachment: AttachmentResult, path: str) -> None:
    """Tip distance over the parameter, with the attachment marked."""
    fig, ax = plt.subplots(figsize=(7.0, 3.2))
    ax.plot(U.t, U.space_distances, color="tab:blue", lw=1.2, label="space distance")
    ax.plot(U.t, U.planar_distances, color="tab:cyan", lw=0.9, label="planar distance")
    for t in attachment.ties:
        ax.axvline(t, color="tab:red", lw=0.8, ls=":")
    ax.axvline(attachment.t_hat, color="tab:red", lw=1.2, label="attachment")
    ax.set_xlim(0.0, float(U.t[-1]) + float(U.t[1] - U.t[0]))
    ax.set_xlabel("base parameter t")
    ax.set_ylabel("tip distance")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def save_report_figures(
    P: Prismatoid,
    U: SideUnfolding,
    attachment: AttachmentResult,
    directory: str,
) -> list[str]:
    """Write both report figures into ``directory``; returns the paths."""
    os.makedirs(directory, exist_ok=True)
    paths = [
        os.path.join(directory, UNFOLDING_FIGURE),
        os.path.join(directory, PROFILE_FIGURE),
    ]
    save_unfolding_figure(P, U, attachment, paths[0])
    save_profile_figure(U, attachment, paths[1])
    return paths
