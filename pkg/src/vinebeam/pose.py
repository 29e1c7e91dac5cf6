"""Planar tip pose from beam deflection and differential tip growth.

The tip frame's rotation is the beam's tip slope angle; its translation is
the caller-supplied tip position in the contact/base frame (how the nearest
contact point is chosen is up to the caller). Axes follow the deflection
solver's frame with y positive downward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import COLLAPSE_XI, BeamSpec, LoadCase, nondim_scale
from .deflection import DEFAULT_ATOL, DEFAULT_RTOL, solve_nondim
from .errors import CollapseError, GrazingContactError

__all__ = ["TipPose", "ContactScene", "tip_pose", "tip_growth_rate"]


@dataclass(frozen=True)
class TipPose:
    """Planar pose of the tip frame relative to the contact/base frame.

    ``transform`` is the 3x3 homogeneous matrix mapping tip-frame
    coordinates into the base frame; its rotation block is orthonormal
    with determinant +1.
    """

    translation: np.ndarray
    rotation_rad: float
    transform: np.ndarray

    @classmethod
    def from_parts(cls, translation, rotation_rad: float) -> "TipPose":
        t = np.asarray(translation, dtype=float).reshape(2)
        c, s = math.cos(rotation_rad), math.sin(rotation_rad)
        transform = np.array(
            [
                [c, -s, t[0]],
                [s, c, t[1]],
                [0.0, 0.0, 1.0],
            ]
        )
        return cls(translation=t, rotation_rad=rotation_rad, transform=transform)


@dataclass(frozen=True)
class ContactScene:
    """Tip, nearest contact point, obstacle direction, and growth rate.

    ``t_hat`` must be a unit vector parallel to the obstacle surface;
    ``u`` is the eversion growth rate in m/s.
    """

    p: np.ndarray
    c_n: np.ndarray
    t_hat: np.ndarray
    u: float

    def __post_init__(self) -> None:
        for name in ("p", "c_n", "t_hat"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float).reshape(2))
        norm = float(np.linalg.norm(self.t_hat))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"t_hat must be a unit vector, got norm {norm!r}")


def tip_pose(
    beam: BeamSpec,
    load: LoadCase,
    base_frame_tip_position,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> TipPose:
    """Tip frame pose for a loaded beam.

    The translation is the supplied tip position; the rotation is the tip
    slope angle, obtained by rescaling the nondimensional tip slope
    eta2(xi=0) with p^2*R^3 / (Q*E'*t) and taking the arctangent. A zero
    load gives a pure translation.

    Raises
    ------
    CollapseError
        If the root coordinate is at or past pi.
    """
    if load.xi_root >= COLLAPSE_XI:
        raise CollapseError(f"no static tip pose at or past collapse (xi={load.xi_root!r})")
    if load.load_n == 0.0:
        return TipPose.from_parts(base_frame_tip_position, 0.0)
    scale = nondim_scale(beam, load)
    eta2_tip = solve_nondim(load.xi_root, rtol=rtol, atol=atol).tip.eta2
    slope = eta2_tip * scale.xi_per_x / scale.eta_per_y
    return TipPose.from_parts(base_frame_tip_position, math.atan(slope))


def tip_growth_rate(scene: ContactScene) -> float:
    """Tip speed along the obstacle surface direction, in m/s.

    rate = u * ||p - c_n|| / (t_hat . (p - c_n))

    Doubling the eversion rate doubles the result, and the result is
    unchanged by rigid translation of the whole scene.

    Raises
    ------
    GrazingContactError
        When the projection of (p - c_n) on t_hat is at most
        1e-9 * ||p - c_n||; the tip path is then (near) perpendicular to
        the surface and the relation is singular.
    """
    offset = scene.p - scene.c_n
    distance = float(np.linalg.norm(offset))
    along = float(np.dot(scene.t_hat, offset))
    if along <= 1e-9 * distance:
        raise GrazingContactError(
            f"tip path is perpendicular to the surface (projection {along!r} "
            f"vs distance {distance!r})"
        )
    return scene.u * distance / along
