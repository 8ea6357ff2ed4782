"""Figure rendering for Bloch-sphere paths.

A path is drawn as a single polyline under an orthographic projection,
stroke-colored by time so the direction of travel is visible, with the
sphere silhouette for orientation.  No 3-D rendering machinery involved.
"""

from __future__ import annotations

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.collections import LineCollection
from matplotlib.figure import Figure


def orthographic_project(coords, azimuth_deg: float = 35.0,
                         elevation_deg: float = 20.0) -> np.ndarray:
    """Project unit-sphere points to the viewing plane of a tilted camera."""
    coords = np.asarray(coords, dtype=float)
    az = np.radians(azimuth_deg)
    el = np.radians(elevation_deg)
    x, y, z = coords[:, 0], coords[:, 1], coords[:, 2]
    u = -np.sin(az) * x + np.cos(az) * y
    v = -np.sin(el) * (np.cos(az) * x + np.sin(az) * y) + np.cos(el) * z
    return np.column_stack([u, v])


def bloch_figure(path_obj, azimuth_deg: float = 35.0, elevation_deg: float = 20.0,
                 cmap: str = "coolwarm", title: str | None = None) -> Figure:
    """Render a Bloch path to a matplotlib figure.

    The trajectory is one polyline whose stroke color sweeps the colormap
    with time, ending on the warm side at the final time.  Start and end
    points get markers.
    """
    pts = orthographic_project(path_obj.coords, azimuth_deg, elevation_deg)
    times = path_obj.times

    fig = Figure(figsize=(5.0, 5.0))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)

    theta = np.linspace(0, 2 * np.pi, 256)
    ax.plot(np.cos(theta), np.sin(theta), color="0.75", lw=0.8, zorder=1)

    if len(pts) > 1:
        segments = np.stack([pts[:-1], pts[1:]], axis=1)
        seg_t = 0.5 * (times[:-1] + times[1:])
        lc = LineCollection(segments, cmap=cmap, zorder=2)
        lc.set_array(seg_t)
        lc.set_linewidth(1.6)
        ax.add_collection(lc)
        cbar = fig.colorbar(lc, ax=ax, fraction=0.046, pad=0.04)
        cbar.set_label("t")
    ax.plot(*pts[0], marker="o", ms=5, color="k", zorder=3)
    ax.plot(*pts[-1], marker="*", ms=9, color="crimson", zorder=3)

    ax.set_xlim(-1.15, 1.15)
    ax.set_ylim(-1.15, 1.15)
    ax.set_aspect("equal")
    ax.set_xlabel("projected u")
    ax.set_ylabel("projected v")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_bloch_figure(path_obj, filename, **kwargs):
    """Write the path figure to a file; format follows the extension."""
    fig = bloch_figure(path_obj, **kwargs)
    save_args = {}
    if str(filename).endswith(".svg"):
        # strip the timestamp so repeated runs are byte-comparable
        save_args["metadata"] = {"Date": None}
    fig.savefig(filename, **save_args)
    return filename
