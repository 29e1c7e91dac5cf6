"""Deflection solver for inflated cantilever beams.

Integrates the piecewise nondimensional curvature system backward from the
root (where displacement and slope are zero) to the tip, then rescales to
dimensional profiles. The tip-origin frame has x measured from the free
end toward the root and y positive downward.

Nondimensional system in eta1 = eta, eta2 = d eta/d xi:

    d^2 eta / d xi^2 = xi / pi                              xi <= pi/2
    d^2 eta / d xi^2 = 2*xi / (2*pi - 2*theta0 + sin(theta0))   xi >  pi/2

The slack-arc denominator uses sin(theta0), which keeps the tip deflection
finite as the root approaches the hinge condition; the wrinkle-angle and
stress section constants in :mod:`vinebeam.core` use sin(2*theta0). The
backward solve substitutes s = xi_root - xi so integration runs forward
in s from zero initial conditions, split at the wrinkle onset so each leg
has a smooth right-hand side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    COLLAPSE_XI,
    WRINKLE_ONSET_XI,
    BeamSpec,
    LoadCase,
    _g,
    _g_prime,
    _wrinkle_angle_scalar,
    buckling_report,
    nondim_scale,
)
from .errors import CollapseError
from .ode import OdeSolution, integrate_rk45

__all__ = [
    "DEFAULT_RTOL",
    "DEFAULT_ATOL",
    "NondimState",
    "NondimSolution",
    "DeflectionProfile",
    "SweepRow",
    "solve_nondim",
    "solve_profile",
    "tip_deflection",
    "closed_form_unwrinkled",
    "sweep",
]

DEFAULT_RTOL = 1e-8
DEFAULT_ATOL = 1e-10


def _curvature(xi: float) -> float:
    """Nondimensional curvature d^2 eta / d xi^2 at load coordinate xi."""
    if xi <= WRINKLE_ONSET_XI:
        return xi / math.pi
    theta0 = _wrinkle_angle_scalar(xi)
    return 2.0 * xi / (2.0 * math.pi - 2.0 * theta0 + math.sin(theta0))


@dataclass(frozen=True)
class NondimState:
    """Point state of the nondimensional system."""

    xi: float
    eta1: float
    eta2: float


@dataclass(frozen=True)
class NondimSolution:
    """Backward-solved nondimensional deflection for one root coordinate.

    The wrinkled region is integrated in the wrinkle angle (tau =
    theta_root - theta0, so xi = g(theta_root - tau)); the taut region in
    the backward coordinate s = xi_root - xi. ``eta1`` is non-negative and
    ``eta2`` non-positive everywhere; both vanish at the root.
    """

    xi_root: float
    theta_root: float
    _wrinkled: OdeSolution | None
    _taut: OdeSolution

    def eval_xi(self, xi: np.ndarray) -> np.ndarray:
        """States at load coordinates xi in [0, xi_root]; shape (n, 2)."""
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        if xi.min() < -1e-12 or xi.max() > self.xi_root * (1.0 + 1e-12) + 1e-12:
            raise ValueError("load coordinate outside [0, xi_root]")
        out = np.empty((xi.size, 2))
        in_wrinkled = (xi > WRINKLE_ONSET_XI) & (self._wrinkled is not None)
        if in_wrinkled.any():
            theta = np.array([_wrinkle_angle_scalar(v) for v in xi[in_wrinkled]])
            tau = np.clip(self.theta_root - theta, 0.0, self._wrinkled.t_end)
            out[in_wrinkled] = self._wrinkled(tau)
        taut = ~in_wrinkled
        if taut.any():
            s = np.clip(self.xi_root - xi[taut], self._taut.ts[0], self._taut.t_end)
            out[taut] = self._taut(s)
        return out

    def state_at(self, xi: float) -> NondimState:
        eta1, eta2 = self.eval_xi(np.array([xi]))[0]
        return NondimState(xi=float(xi), eta1=float(eta1), eta2=float(eta2))

    @property
    def tip(self) -> NondimState:
        """State at the free end, xi = 0."""
        y = self._taut.y_end
        return NondimState(xi=0.0, eta1=float(y[0]), eta2=float(y[1]))


def solve_nondim(
    xi_root: float, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL
) -> NondimSolution:
    """Solve the nondimensional system for a root coordinate in (0, pi).

    The wrinkled leg runs in the wrinkle angle, where the system is
    analytic at both the onset and the near-collapse root (d xi/d theta0
    vanishes at exactly the rate that cancels the curvature blow-up), so
    the integrator keeps full order; the right-hand side there needs no
    angle inversion at all. The remaining taut leg has a polynomial
    right-hand side.

    Raises
    ------
    CollapseError
        If xi_root >= pi.
    """
    if xi_root >= COLLAPSE_XI:
        raise CollapseError(f"xi_root={xi_root!r} is at or past the collapse condition pi")
    if xi_root <= 0.0:
        raise ValueError(f"xi_root must be positive, got {xi_root!r}")

    def rhs_taut(s, y):
        return (-y[1], -(xi_root - s) / math.pi)

    if xi_root <= WRINKLE_ONSET_XI:
        taut = integrate_rk45(rhs_taut, 0.0, xi_root, (0.0, 0.0), rtol, atol)
        return NondimSolution(xi_root=xi_root, theta_root=0.0, _wrinkled=None, _taut=taut)

    theta_root = _wrinkle_angle_scalar(xi_root)

    def rhs_wrinkled(tau, y):
        theta = theta_root - tau
        slope = _g_prime(theta)
        curvature = 2.0 * _g(theta) / (2.0 * math.pi - 2.0 * theta + math.sin(theta))
        return (-slope * y[1], -slope * curvature)

    wrinkled = integrate_rk45(rhs_wrinkled, 0.0, theta_root, (0.0, 0.0), rtol, atol)
    s_onset = xi_root - WRINKLE_ONSET_XI
    taut = integrate_rk45(rhs_taut, s_onset, xi_root, wrinkled.y_end, rtol, atol)
    return NondimSolution(
        xi_root=xi_root, theta_root=theta_root, _wrinkled=wrinkled, _taut=taut
    )


@dataclass(frozen=True)
class DeflectionProfile:
    """Sampled deflection in the tip-origin frame plus tip summary.

    ``x_from_tip_m`` is strictly increasing from 0 (tip) to the beam
    length (root); ``y_m`` is the downward displacement and ``slope`` the
    derivative dy/dx at each station. ``wrinkle_onset_x_m`` is the
    distance from the tip where wrinkling starts, or None when the beam
    is taut everywhere. ``collapsed`` marks post-buckling chord profiles.
    """

    x_from_tip_m: np.ndarray
    y_m: np.ndarray
    slope: np.ndarray
    tip_deflection_m: float
    tip_slope_rad: float
    wrinkle_onset_x_m: float | None
    collapsed: bool
    length_m: float

    @property
    def x_from_base_m(self) -> np.ndarray:
        """Base-origin view of the stations, x' = L - x."""
        return self.length_m - self.x_from_tip_m

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        """Rows of (x from tip, y downward, dy/dx)."""
        return list(zip(self.x_from_tip_m.tolist(), self.y_m.tolist(), self.slope.tolist()))


def _zero_profile(beam: BeamSpec, n_samples: int) -> DeflectionProfile:
    x = np.linspace(0.0, beam.length_m, n_samples)
    zeros = np.zeros_like(x)
    return DeflectionProfile(
        x_from_tip_m=x,
        y_m=zeros,
        slope=zeros.copy(),
        tip_deflection_m=0.0,
        tip_slope_rad=0.0,
        wrinkle_onset_x_m=None,
        collapsed=False,
        length_m=beam.length_m,
    )


def _onset_position_m(beam: BeamSpec, load: LoadCase) -> float | None:
    """Distance from the tip where wrinkling starts, None if past the root."""
    if load.load_n == 0.0:
        return None
    onset = math.pi * beam.pressure_pa * beam.radius_m**3 / (2.0 * load.load_n)
    return onset if onset < beam.length_m else None


def solve_profile(
    beam: BeamSpec,
    load: LoadCase,
    n_samples: int = 201,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> DeflectionProfile:
    """Deflection profile sampled at ``n_samples`` uniform stations.

    Integrates the nondimensional system backward from the root and
    rescales; a zero load returns the flat profile without integrating.

    Raises
    ------
    CollapseError
        If the root coordinate is at or past pi.
    ValueError
        If n_samples < 2.
    """
    if n_samples < 2:
        raise ValueError(f"n_samples must be at least 2, got {n_samples!r}")
    if load.xi_root >= COLLAPSE_XI:
        report = buckling_report(beam, load)
        raise CollapseError(
            f"load {load.load_n!r} N is at or past collapse for this beam "
            f"(Q_max={report.q_max_n:.6g} N, L_max={report.l_max_m:.6g} m, "
            f"P_min={report.p_min_pa:.6g} Pa)"
        )
    if load.load_n == 0.0:
        return _zero_profile(beam, n_samples)

    scale = nondim_scale(beam, load)
    solution = solve_nondim(load.xi_root, rtol=rtol, atol=atol)

    x = np.linspace(0.0, beam.length_m, n_samples)
    states = solution.eval_xi(np.clip(x * scale.xi_per_x, 0.0, load.xi_root))
    y = states[:, 0] / scale.eta_per_y
    slope = states[:, 1] * scale.xi_per_x / scale.eta_per_y

    tip = solution.tip
    tip_y = tip.eta1 / scale.eta_per_y
    tip_slope = tip.eta2 * scale.xi_per_x / scale.eta_per_y
    return DeflectionProfile(
        x_from_tip_m=x,
        y_m=y,
        slope=slope,
        tip_deflection_m=tip_y,
        tip_slope_rad=math.atan(tip_slope),
        wrinkle_onset_x_m=_onset_position_m(beam, load),
        collapsed=False,
        length_m=beam.length_m,
    )


def tip_deflection(
    beam: BeamSpec,
    load: LoadCase,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> float:
    """Downward tip displacement y(0) in meters."""
    if load.load_n == 0.0:
        return 0.0
    if load.xi_root >= COLLAPSE_XI:
        raise CollapseError(
            f"load {load.load_n!r} N is at or past collapse for this beam "
            f"(Q_max={buckling_report(beam, load).q_max_n:.6g} N)"
        )
    scale = nondim_scale(beam, load)
    return solve_nondim(load.xi_root, rtol=rtol, atol=atol).tip.eta1 / scale.eta_per_y


def closed_form_unwrinkled(
    beam: BeamSpec, load: LoadCase, n_samples: int = 201
) -> DeflectionProfile:
    """Exact cubic profile for a beam that is taut along its whole length.

    y(x) = Q * (x^3 - 3*L^2*x + 2*L^3) / (6*E'*pi*R^3*t), valid only while
    the root stays below the wrinkle onset (xi_root <= pi/2).

    Raises
    ------
    ValueError
        If the root is wrinkled (xi_root > pi/2) or n_samples < 2.
    """
    if load.xi_root > WRINKLE_ONSET_XI:
        raise ValueError(
            f"closed form requires a taut beam (xi_root <= pi/2), got {load.xi_root!r}"
        )
    if n_samples < 2:
        raise ValueError(f"n_samples must be at least 2, got {n_samples!r}")
    if load.load_n == 0.0:
        return _zero_profile(beam, n_samples)

    length = beam.length_m
    rigidity = beam.effective_modulus_pa * math.pi * beam.radius_m**3 * beam.thickness_m
    x = np.linspace(0.0, length, n_samples)
    # x^3 - 3 L^2 x + 2 L^3 factored as (x - L)^2 (x + 2L): exact zero at the root
    y = load.load_n * (x - length) ** 2 * (x + 2.0 * length) / (6.0 * rigidity)
    slope = load.load_n * (x - length) * (x + length) / (2.0 * rigidity)
    return DeflectionProfile(
        x_from_tip_m=x,
        y_m=y,
        slope=slope,
        tip_deflection_m=float(y[0]),
        tip_slope_rad=math.atan(float(slope[0])),
        wrinkle_onset_x_m=_onset_position_m(beam, load),
        collapsed=False,
        length_m=length,
    )


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a parameter sweep.

    ``tip_deflection_m`` is None for grid points past the collapse
    boundary, where the static model is undefined.
    """

    value: float
    tip_deflection_m: float | None
    collapsed: bool
    critical_value: float


_SWEEP_VARIABLES = ("load", "length", "pressure")


def sweep(
    beam: BeamSpec,
    variable: str,
    lo: float,
    hi: float,
    n: int,
    load_n: float | None = None,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> list[SweepRow]:
    """Tip deflection over a uniform grid of one independent variable.

    ``variable`` is one of 'load', 'length', or 'pressure'. For length and
    pressure sweeps ``load_n`` supplies the fixed tip load. The critical
    value column carries the collapse boundary for the swept variable
    (Q_max, L_max, or P_min); rows at or past it are flagged collapsed
    with no deflection value.

    Raises
    ------
    ValueError
        For an unknown variable, a non-positive or reversed range, n < 2,
        or a missing fixed load.
    """
    if variable not in _SWEEP_VARIABLES:
        raise ValueError(f"variable must be one of {_SWEEP_VARIABLES}, got {variable!r}")
    if n < 2:
        raise ValueError(f"sweep needs n >= 2 grid points, got {n!r}")
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValueError(f"invalid sweep range [{lo!r}, {hi!r}]")
    if variable != "load" and load_n is None:
        raise ValueError(f"a fixed load_n is required for a {variable} sweep")
    if variable == "load":
        if lo < 0.0:
            raise ValueError(f"loads must be non-negative, got lo={lo!r}")
    elif lo <= 0.0:
        raise ValueError(f"{variable} values must be positive, got lo={lo!r}")

    p, r3 = beam.pressure_pa, beam.radius_m**3
    if variable == "load":
        critical = math.pi * p * r3 / beam.length_m
    elif variable == "length":
        critical = math.pi * p * r3 / load_n if load_n > 0.0 else math.inf
    else:
        critical = load_n * beam.length_m / (math.pi * r3)

    rows = []
    for value in np.linspace(lo, hi, n):
        value = float(value)
        if variable == "load":
            case_beam, case_load = beam, LoadCase.from_load(beam, value)
        elif variable == "length":
            case_beam = BeamSpec(
                beam.radius_m, beam.thickness_m, value, p, beam.modulus_pa, beam.modulus_factor
            )
            case_load = LoadCase.from_load(case_beam, load_n)
        else:
            case_beam = BeamSpec(
                beam.radius_m, beam.thickness_m, beam.length_m, value,
                beam.modulus_pa, beam.modulus_factor,
            )
            case_load = LoadCase.from_load(case_beam, load_n)

        if case_load.xi_root >= COLLAPSE_XI:
            rows.append(SweepRow(value, None, True, critical))
        else:
            deflection = tip_deflection(case_beam, case_load, rtol=rtol, atol=atol)
            rows.append(SweepRow(value, deflection, False, critical))
    return rows
