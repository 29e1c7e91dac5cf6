"""Figure rendering for profiles, sweeps, and inverse estimates.

Used by the command line's ``--plot`` flag to drop a PNG/PDF next to the
CSV/JSON output. Figures are drawn in the base-origin frame with the
downward deflection plotted downward (inverted y axis).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .deflection import DeflectionProfile, SweepRow
from .inverse import LoadEstimate

__all__ = ["profile_figure", "sweep_figure", "inverse_figure", "save_figure"]

_SWEEP_AXIS_LABELS = {
    "load": "tip load (N)",
    "length": "beam length (m)",
    "pressure": "internal pressure (Pa)",
}
_SWEEP_CRITICAL_LABELS = {"load": "Q_max", "length": "L_max", "pressure": "P_min"}


def profile_figure(profile: DeflectionProfile, title: str | None = None):
    """Deflected centerline against distance from the base."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(profile.x_from_base_m, profile.y_m, color="steelblue", lw=1.8,
            label="chord (buckled)" if profile.collapsed else "deflection")
    if profile.wrinkle_onset_x_m is not None:
        onset_base = profile.length_m - profile.wrinkle_onset_x_m
        ax.axvline(onset_base, color="firebrick", lw=1.0, ls="--", label="wrinkle onset")
    ax.invert_yaxis()
    ax.set_xlabel("distance from base (m)")
    ax.set_ylabel("downward deflection (m)")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def sweep_figure(rows: list[SweepRow], variable: str, title: str | None = None):
    """Tip deflection across the swept variable, collapse boundary marked."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ok = [(r.value, r.tip_deflection_m) for r in rows if not r.collapsed]
    if ok:
        values, deflections = zip(*ok)
        ax.plot(values, deflections, color="steelblue", lw=1.8, label="tip deflection")
    collapsed_values = [r.value for r in rows if r.collapsed]
    if collapsed_values:
        ax.plot(collapsed_values, np.zeros(len(collapsed_values)), "x",
                color="gray", ms=5, label="collapsed")
    critical = rows[0].critical_value if rows else None
    if critical is not None and np.isfinite(critical):
        ax.axvline(critical, color="firebrick", lw=1.0, ls="--",
                   label=_SWEEP_CRITICAL_LABELS.get(variable, "critical"))
    ax.set_xlabel(_SWEEP_AXIS_LABELS.get(variable, variable))
    ax.set_ylabel("tip deflection (m)")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def inverse_figure(estimate: LoadEstimate, tip_displacement_m: float,
                   title: str | None = None):
    """Estimated centerline with the observed tip displacement marked."""
    profile = estimate.profile
    fig, ax = plt.subplots(figsize=(7, 4))
    label = "chord (buckled)" if estimate.buckled else f"estimate, Q={estimate.load_n:.4g} N"
    ax.plot(profile.x_from_base_m, profile.y_m, color="steelblue", lw=1.8, label=label)
    ax.plot([profile.length_m], [tip_displacement_m], "o", color="firebrick",
            ms=6, label="observed tip")
    ax.invert_yaxis()
    ax.set_xlabel("distance from base (m)")
    ax.set_ylabel("downward deflection (m)")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_figure(fig, path: str | Path) -> None:
    """Write the figure to ``path`` (format from the suffix) and close it."""
    fig.savefig(Path(path), dpi=150, bbox_inches="tight")
    plt.close(fig)
