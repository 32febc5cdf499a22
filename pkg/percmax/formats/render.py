"""SVG heatmap of infection times."""

import io
from pathlib import Path
from typing import Union

import matplotlib
import numpy as np
from matplotlib import colormaps
from matplotlib.colors import BoundaryNorm
from matplotlib.patches import Rectangle

from percmax.models import InfectionReport
from percmax.utils.exceptions import InvalidInputError

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

DPI = 72
MAX_LEVELS = 16
# Room for the title and the colour bar, in pixels.
MARGIN = 48
LEGEND_HEIGHT = 56


def _levels(top: int) -> np.ndarray:
    """Bin edges of the discrete ramp over 0..top."""
    count = min(top + 1, MAX_LEVELS)
    return np.linspace(-0.5, top + 0.5, count + 1)


def render_svg(report: InfectionReport, scale: int = 12) -> str:
    """
    SVG heatmap: one square per cell, colour by infection time, NEVER hatched.

    The origin cell (1, 1) is drawn at the bottom left. The colour bar is a
    discrete viridis ramp labelled with the largest finite time.

    Args:
        report: Report of a 2-dimensional run
        scale: Pixels per cell

    Returns:
        SVG document text

    Raises:
        InvalidInputError: If the report is not 2-dimensional
    """
    if len(report.dims) != 2:
        raise InvalidInputError(f"Only 2-dimensional grids can be rendered, got {report.dims}")
    width, height = report.dims
    times = np.asarray(report.times).reshape(height, width)
    top = max(int(times.max()), 0)
    edges = _levels(top)
    cmap = colormaps["viridis"].resampled(len(edges) - 1)
    norm = BoundaryNorm(edges, cmap.N)
    grid = np.ma.masked_less(times, 0)
    total = getattr(report.total_time, "value", report.total_time)

    size = ((width * scale + 2 * MARGIN) / DPI, (height * scale + MARGIN + LEGEND_HEIGHT) / DPI)
    with plt.rc_context({"svg.fonttype": "none", "svg.hashsalt": "percmax"}):
        fig, ax = plt.subplots(figsize=size, dpi=DPI)
        try:
            if np.ma.getmaskarray(grid).any():
                ax.add_patch(
                    Rectangle(
                        (-0.5, -0.5), width, height,
                        facecolor="white", edgecolor="#888888", hatch="///", linewidth=0, zorder=0,
                    )
                )
            image = ax.imshow(grid, cmap=cmap, norm=norm, origin="lower", interpolation="nearest", zorder=1)
            ax.set_xticks([])
            ax.set_yticks([])
            ax.set_title(f"{width}x{height}, total {total}", fontsize=9)
            bar = fig.colorbar(image, ax=ax, orientation="horizontal", fraction=0.06, pad=0.04)
            bar.set_label(f"infection time, max {top}", fontsize=8)
            buffer = io.StringIO()
            fig.savefig(buffer, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return buffer.getvalue()


def write_svg(report: InfectionReport, path: Union[str, Path], scale: int = 12) -> None:
    try:
        Path(path).write_text(render_svg(report, scale), encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"Cannot write {path}: {str(e)}") from e
