"""Tip-load recovery from an observed tip displacement.

The forward map Q -> tip deflection is strictly increasing and continuous
up to the collapse load, so the applied load behind an observed
displacement is found by bisecting the forward solver. Displacements
beyond the model's maximum are classified as buckled and described by the
post-buckling chord between tip and base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import BeamSpec, LoadCase, buckling_report
from .deflection import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    DeflectionProfile,
    solve_profile,
    tip_deflection,
)

__all__ = [
    "DisplacementObservation",
    "LoadEstimate",
    "ProfileErrorMetrics",
    "estimate_load",
    "straight_line_profile",
    "profile_error_metrics",
]

# The bisection bracket stops just short of the collapse load; the model's
# maximum displacement is the forward solve at this fraction of Q_max.
_BRACKET_MARGIN = 1e-9
_MAX_BISECTIONS = 60
# Displacement match tolerance. Relative-dominated: the forward map is
# convex through the origin, so a relative displacement error bounds the
# relative load error from above.
_DISPLACEMENT_RTOL = 1e-7
_DISPLACEMENT_ATOL = 1e-12


@dataclass(frozen=True)
class DisplacementObservation:
    """Observed in-plane tip displacement of a known beam."""

    tip_displacement_m: float
    beam: BeamSpec

    def __post_init__(self) -> None:
        if not math.isfinite(self.tip_displacement_m) or self.tip_displacement_m < 0.0:
            raise ValueError(
                f"tip_displacement_m must be non-negative, got {self.tip_displacement_m!r}"
            )


@dataclass(frozen=True)
class LoadEstimate:
    """Result of inverting a tip displacement into an applied load.

    For feasible displacements ``load_n`` reproduces the observation to
    within ``residual_m``. Buckled observations report the collapse load
    Q_max with the straight-line chord profile; ``residual_m`` then holds
    the displacement in excess of the model's maximum.
    """

    load_n: float
    buckled: bool
    profile: DeflectionProfile
    residual_m: float


def straight_line_profile(
    beam: BeamSpec, tip_displacement_m: float, n_samples: int = 201
) -> DeflectionProfile:
    """Post-buckling chord: y falls linearly from the tip value to 0 at the root."""
    if tip_displacement_m < 0.0:
        raise ValueError(f"tip_displacement_m must be non-negative, got {tip_displacement_m!r}")
    if n_samples < 2:
        raise ValueError(f"n_samples must be at least 2, got {n_samples!r}")
    length = beam.length_m
    x = np.linspace(0.0, length, n_samples)
    y = tip_displacement_m * (1.0 - x / length)
    slope_value = -tip_displacement_m / length
    return DeflectionProfile(
        x_from_tip_m=x,
        y_m=y,
        slope=np.full_like(x, slope_value),
        tip_deflection_m=tip_displacement_m,
        tip_slope_rad=math.atan(slope_value),
        wrinkle_onset_x_m=None,
        collapsed=True,
        length_m=length,
    )


def estimate_load(
    obs: DisplacementObservation,
    n_samples: int = 201,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> LoadEstimate:
    """Recover the tip load that produces the observed displacement.

    Bisects Q over (0, Q_max) against the forward solver, stopping once
    the reproduced displacement is within 1e-7 relative of the observation
    (sixty iterations at most). Observations beyond the displacement at
    the collapse load come back with ``buckled=True`` and the straight-line
    chord profile at the reported load Q_max.
    """
    beam = obs.beam
    target = obs.tip_displacement_m
    if target == 0.0:
        return LoadEstimate(
            load_n=0.0,
            buckled=False,
            profile=solve_profile(beam, LoadCase.from_load(beam, 0.0), n_samples),
            residual_m=0.0,
        )

    q_max = buckling_report(beam, LoadCase.from_load(beam, 0.0)).q_max_n
    q_hi = q_max * (1.0 - _BRACKET_MARGIN)
    y_max = tip_deflection(beam, LoadCase.from_load(beam, q_hi), rtol=rtol, atol=atol)
    if target > y_max:
        return LoadEstimate(
            load_n=q_max,
            buckled=True,
            profile=straight_line_profile(beam, target, n_samples),
            residual_m=target - y_max,
        )

    tol = max(_DISPLACEMENT_ATOL, _DISPLACEMENT_RTOL * target)
    q_lo, q = 0.0, q_hi
    y = y_max
    for _ in range(_MAX_BISECTIONS):
        if abs(y - target) <= tol:
            break
        if y > target:
            q_hi = q
        else:
            q_lo = q
        q = 0.5 * (q_lo + q_hi)
        y = tip_deflection(beam, LoadCase.from_load(beam, q), rtol=rtol, atol=atol)

    profile = solve_profile(beam, LoadCase.from_load(beam, q), n_samples, rtol=rtol, atol=atol)
    return LoadEstimate(load_n=q, buckled=False, profile=profile, residual_m=abs(y - target))


class ProfileErrorMetrics(NamedTuple):
    """Agreement between a modeled profile and measured stations."""

    mean_abs_error_m: float
    relative_tip_error: float | None
    tip_slope_error_rad: float


def profile_error_metrics(
    model: DeflectionProfile, measured: list[tuple[float, float]]
) -> ProfileErrorMetrics:
    """Displacement and slope errors of a model against measured markers.

    ``measured`` holds (x from tip, y downward) stations within [0, L].
    The model is interpolated linearly between its samples. The relative
    tip error compares displacements at the tip station (x = 0) and is
    None when no tip station was measured; the tip slope is estimated
    from the two distal-most markers by finite difference.

    Raises
    ------
    ValueError
        For fewer than two stations or stations outside the beam.
    """
    if len(measured) < 2:
        raise ValueError(f"need at least 2 measured stations, got {len(measured)}")
    pts = sorted((float(x), float(y)) for x, y in measured)
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if xs[0] < -1e-12 or xs[-1] > model.length_m + 1e-12:
        raise ValueError("measured stations must lie within [0, length_m]")

    model_y = np.interp(xs, model.x_from_tip_m, model.y_m)
    mean_abs = float(np.mean(np.abs(model_y - ys)))

    relative_tip: float | None = None
    if xs[0] <= 1e-12:
        y_meas_tip = ys[0]
        y_model_tip = model.y_m[0]
        if y_meas_tip == 0.0:
            relative_tip = 0.0 if y_model_tip == 0.0 else math.inf
        else:
            relative_tip = abs(y_model_tip - y_meas_tip) / abs(y_meas_tip)

    dx = xs[1] - xs[0]
    if dx <= 0.0:
        raise ValueError("measured stations must have distinct x positions near the tip")
    measured_slope = (ys[1] - ys[0]) / dx
    slope_err = abs(math.atan(measured_slope) - model.tip_slope_rad)
    return ProfileErrorMetrics(mean_abs, relative_tip, slope_err)
