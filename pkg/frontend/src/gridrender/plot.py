"""Contour rendering of parsed grids.

Log-magnitude grids want a colormap that is monotone in the value, so
sinks (zeros) read as dark wells; viridis satisfies that. The unit
circle is always overlaid for reference since the grids come from
polynomials whose interesting zeros sit on it.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import GridFile

N_LEVELS = 41


def render(grid: GridFile, out_path: str, highlight_level: float | None = None,
           dpi: int = 150) -> None:
    vmin = float(np.min(grid.values))
    vmax = float(np.max(grid.values))
    if vmin == vmax:
        vmin, vmax = vmin - 0.5, vmax + 0.5
    levels = np.linspace(vmin, vmax, N_LEVELS)

    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    filled = ax.contourf(grid.xs, grid.ys, grid.values, levels=levels,
                         cmap="viridis", extend="neither")
    fig.colorbar(filled, ax=ax, label="log10 |f|")

    if highlight_level is not None:
        if not vmin <= highlight_level <= vmax:
            raise ValueError(
                f"highlight level {highlight_level} outside value range "
                f"[{vmin:.3g}, {vmax:.3g}]")
        ax.contour(grid.xs, grid.ys, grid.values,
                   levels=[highlight_level], colors="black", linewidths=2.2)

    theta = np.linspace(0.0, 2.0 * np.pi, 512)
    ax.plot(np.cos(theta), np.sin(theta), color="white", linewidth=0.9,
            linestyle="--", alpha=0.8)

    ax.set_xlim(float(grid.xs[0]), float(grid.xs[-1]))
    ax.set_ylim(float(grid.ys[0]), float(grid.ys[-1]))
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
