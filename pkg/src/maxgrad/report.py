"""Figure rendering for the report command.

Everything here is presentation: the numbers always land in delimited
files first, and these helpers draw the same data to PNG for a quick
look.  matplotlib is an optional dependency (``pip install
maxgrad[figures]``) and is imported lazily so the data path never
touches it.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InputError

__all__ = [
    "basis_figure",
    "decomposition_figure",
    "field_figure",
    "flow_figure",
    "ramp_figure",
]


def _pyplot():
    try:
        import matplotlib
    except ImportError as exc:
        raise InputError(
            "figure rendering needs matplotlib; install the package "
            "with the [figures] extra") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def flow_figure(trajectory, path: str) -> None:
    """Norm and energy decay along a flow trajectory, log scale."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    positive = trajectory.norms > 0
    ax.semilogy(trajectory.times[positive], trajectory.norms[positive],
                label="norm", lw=1.5)
    pos_e = trajectory.energies > 0
    ax.semilogy(trajectory.times[pos_e], trajectory.energies[pos_e],
                label="energy", lw=1.5, ls="--")
    if trajectory.extinction_time is not None:
        ax.axvline(trajectory.extinction_time, color="gray", lw=0.8)
    ax.set_xlabel("t")
    ax.legend(frameon=False)
    ax.set_title("energy descent flow")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def field_figure(values: np.ndarray, path: str,
                 grid_shape: tuple[int, int] | None = None) -> None:
    """A vertex field: heatmap when the graph is a grid, stems otherwise."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.4, 4.4))
    if grid_shape is not None:
        w, h = grid_shape
        im = ax.imshow(np.asarray(values).reshape(h, w), origin="lower",
                       cmap="viridis")
        fig.colorbar(im, ax=ax, shrink=0.85)
    else:
        ax.stem(np.arange(len(values)), values)
        ax.set_xlabel("vertex")
    ax.set_title("vertex field")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def ramp_figure(ramp, path: str) -> None:
    """Ramp height against time, with the startup square root overlaid."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(ramp.times, ramp.values, lw=1.5, label="g(t)")
    asym = [math.sqrt(2.0 * t / ramp.small_time_coeff) for t in ramp.times]
    ax.plot(ramp.times, np.minimum(asym, 1.2), lw=1.0, ls=":",
            label="sqrt(2t/c3)")
    ax.axvline(ramp.t_star, color="gray", lw=0.8)
    ax.set_ylim(0.0, 1.1)
    ax.set_xlabel("t")
    ax.set_ylabel("g")
    ax.legend(frameon=False)
    ax.set_title("cone-opening ramp")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _plot_piecewise(ax, f, **kwargs):
    xs = [float(b) for b in f.breakpoints]
    ys = [float(v) for v in f.values]
    ax.plot(xs, ys, **kwargs)


def basis_figure(f, path: str, title: str = "sawtooth") -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 3.2))
    _plot_piecewise(ax, f, lw=1.5)
    ax.axhline(0.0, color="gray", lw=0.6)
    ax.set_xlabel("x")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def decomposition_figure(f, check, path: str) -> None:
    """A non-extreme function with its two-sided witness split."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    _plot_piecewise(ax, f, lw=2.0, label="f")
    if check.v_plus is not None:
        _plot_piecewise(ax, check.v_plus, lw=1.0, ls="--", label="v+")
        _plot_piecewise(ax, check.v_minus, lw=1.0, ls="--", label="v-")
        ax.axvline(float(check.split_point), color="gray", lw=0.8)
    ax.axhline(0.0, color="gray", lw=0.6)
    ax.set_xlabel("x")
    ax.legend(frameon=False)
    ax.set_title("extreme" if check.is_extreme else "midpoint split")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
