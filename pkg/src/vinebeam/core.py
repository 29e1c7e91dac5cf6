"""Domain types and closed-form relations for inflated cantilever beams.

Covers beam/load descriptions, the wrinkle-angle relation and its numerical
inverse, nondimensional scaling, transverse-buckling criticals, and the
membrane stress formulas. Units are strict SI throughout: meters, pascals,
newtons, radians. All functions are pure and all types immutable, so values
are safe to share between threads.

Conventions (see the tip-origin frame used by the deflection solver):
the axial coordinate x is measured from the free (loaded) end toward the
root, the load coordinate is xi = Q*x / (p*R^3), wrinkling starts once
xi exceeds pi/2, and the hinge (collapse) condition is xi = pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CollapseError, DegenerateLoadError

__all__ = [
    "WRINKLE_ONSET_XI",
    "COLLAPSE_XI",
    "NEAR_COLLAPSE_EPS",
    "WRINKLE_RESIDUAL_TOL",
    "BeamSpec",
    "LoadCase",
    "WrinkleAngle",
    "NondimScale",
    "BucklingReport",
    "wrinkle_load_of_angle",
    "wrinkle_angle_of_load",
    "max_stress",
    "longitudinal_stress",
    "nondim_scale",
    "buckling_report",
]

#: Root load coordinate at which the cross-section starts to wrinkle.
WRINKLE_ONSET_XI = math.pi / 2.0

#: Root load coordinate at which the beam collapses into a hinge.
COLLAPSE_XI = math.pi

#: Guard band below the collapse coordinate; the wrinkle-angle inverse is
#: evaluated at min(xi, pi - NEAR_COLLAPSE_EPS) because the section
#: constants vanish at theta0 = pi.
NEAR_COLLAPSE_EPS = 1e-6

#: Residual tolerance |g(theta0) - xi| guaranteed by the inverse.
WRINKLE_RESIDUAL_TOL = 1e-10


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BeamSpec:
    """Geometry, material, and inflation state of one beam.

    Attributes
    ----------
    radius_m : float
        Tube radius R (m).
    thickness_m : float
        Wall thickness t (m). Thin-wall theory: t < R/10 is enforced.
    length_m : float
        Cantilever length L (m).
    pressure_pa : float
        Internal gauge pressure p (Pa).
    modulus_pa : float
        Young's modulus E of the wall material (Pa), as measured in a
        longitudinal tensile test.
    modulus_factor : float
        Dimensionless factor in (0, 1] applied multiplicatively to E.
        Woven composite walls are softer under transverse bending load
        than in a longitudinal pull; 0.25 is typical for silicone-coated
        nylon, 1.0 for homogeneous films such as LDPE.
    """

    radius_m: float
    thickness_m: float
    length_m: float
    pressure_pa: float
    modulus_pa: float
    modulus_factor: float = 1.0

    def __post_init__(self) -> None:
        for name in ("radius_m", "thickness_m", "length_m", "pressure_pa", "modulus_pa"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be strictly positive, got {value!r}")
        if self.thickness_m >= self.radius_m / 10.0:
            raise ValueError(
                f"thin-wall model requires thickness_m < radius_m/10 "
                f"({self.thickness_m!r} >= {self.radius_m / 10.0!r})"
            )
        if not (0.0 < self.modulus_factor <= 1.0):
            raise ValueError(f"modulus_factor must lie in (0, 1], got {self.modulus_factor!r}")

    @property
    def effective_modulus_pa(self) -> float:
        """Modulus seen by every bending equation: E' = E * modulus_factor."""
        return self.modulus_pa * self.modulus_factor


@dataclass(frozen=True)
class LoadCase:
    """Applied tip load and its nondimensional root coordinate.

    ``xi_root`` is Q*L / (p*R^3), computed by :meth:`from_load` so the two
    fields are always consistent with the beam they were built from.
    """

    load_n: float
    xi_root: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.load_n) or self.load_n < 0.0:
            raise ValueError(f"load_n must be non-negative, got {self.load_n!r}")
        if not math.isfinite(self.xi_root) or self.xi_root < 0.0:
            raise ValueError(f"xi_root must be non-negative, got {self.xi_root!r}")

    @classmethod
    def from_load(cls, beam: BeamSpec, load_n: float) -> "LoadCase":
        """Build the case for ``load_n`` newtons applied at the tip of ``beam``."""
        xi_root = load_n * beam.length_m / (beam.pressure_pa * beam.radius_m**3)
        return cls(load_n=load_n, xi_root=xi_root)


@dataclass(frozen=True)
class WrinkleAngle:
    """Angular half-extent of the slack membrane region, theta0 in [0, pi).

    theta0 = 0 means the cross-section is fully taut; theta0 -> pi means the
    slack region wraps the circumference and the beam hinges.
    """

    theta0_rad: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta0_rad < math.pi):
            raise ValueError(f"theta0_rad must lie in [0, pi), got {self.theta0_rad!r}")


@dataclass(frozen=True)
class NondimScale:
    """Multipliers taking dimensional (x, y) to nondimensional (xi, eta).

    xi = xi_per_x * x with xi_per_x = Q / (p*R^3)
    eta = eta_per_y * y with eta_per_y = Q^2*E'*t / (p^3*R^6)
    """

    xi_per_x: float
    eta_per_y: float


@dataclass(frozen=True)
class BucklingReport:
    """Critical collapse values and root state for one (beam, load) pair.

    q_max_n, l_max_m, p_min_pa are the load, length, and pressure at which
    the root reaches the hinge condition, holding the other two quantities
    fixed. ``l_max_m`` is infinite at zero load. ``sigma_max_pa`` is the
    peak axial membrane stress at the root; for collapsed inputs it is
    evaluated at the near-collapse guard angle rather than raising.
    """

    q_max_n: float
    l_max_m: float
    p_min_pa: float
    collapsed: bool
    theta0_root_rad: float
    sigma_max_pa: float


# ---------------------------------------------------------------------------
# Wrinkle-angle relation g(theta0) and its inverse f(xi)
# ---------------------------------------------------------------------------

# Near theta0 = pi both the numerator 2*pi - 2*theta0 + sin(2*theta0) and the
# denominator 4*(sin(theta0) + (pi - theta0)*cos(theta0)) vanish like
# (pi - theta0)^3, so the direct formula loses all precision there. Both are
# evaluated from their series in delta = pi - theta0 once delta < 0.05;
# truncation after the delta^6 correction is below 1e-15 relative.
_SERIES_DELTA = 0.05


def _g(theta: float) -> float:
    """Load coordinate xi at which the wrinkle angle equals ``theta``."""
    if theta == 0.0:
        return 0.5 * math.pi
    delta = math.pi - theta
    if delta < _SERIES_DELTA:
        d2 = delta * delta
        num = 1.0 + d2 * (-1.0 / 5.0 + d2 * (2.0 / 105.0 - d2 / 945.0))
        den = 1.0 + d2 * (-1.0 / 10.0 + d2 * (1.0 / 280.0 - d2 / 15120.0))
        return math.pi * num / den
    num = 2.0 * math.pi - 2.0 * theta + math.sin(2.0 * theta)
    den = 4.0 * (math.sin(theta) + (math.pi - theta) * math.cos(theta))
    return math.pi * num / den


def _g_prime(theta: float) -> float:
    """d g / d theta; Newton slope and wrinkled-leg Jacobian factor.

    The quotient-rule form loses ~delta^-4 digits to cancellation near
    theta = pi, so below delta = 0.1 it is replaced by the factored series
    (pi/5)*sin(delta)*(1 - delta^2/7 + delta^4/105) / den(delta)^2, which
    keeps the relative error under 4e-10 across the switch.
    """
    delta = math.pi - theta
    if delta < 0.1:
        d2 = delta * delta
        num = 1.0 + d2 * (-1.0 / 7.0 + d2 / 105.0)
        den = 1.0 + d2 * (-1.0 / 10.0 + d2 * (1.0 / 280.0 - d2 / 15120.0))
        return math.pi / 5.0 * math.sin(delta) * num / (den * den)
    num = 2.0 * math.pi - 2.0 * theta + math.sin(2.0 * theta)
    den = math.sin(theta) + (math.pi - theta) * math.cos(theta)
    dnum = -4.0 * math.sin(theta) ** 2
    dden = -(math.pi - theta) * math.sin(theta)
    return math.pi * (dnum * den - num * dden) / (4.0 * den * den)


def wrinkle_load_of_angle(theta0: WrinkleAngle | float) -> float:
    """Load coordinate xi = g(theta0) at which a given wrinkle angle occurs.

    g is continuous and strictly increasing on [0, pi), with g(0) = pi/2
    (wrinkle onset) and g -> pi (collapse) as theta0 -> pi.

    Raises
    ------
    ValueError
        If theta0 lies outside [0, pi).
    """
    theta = theta0.theta0_rad if isinstance(theta0, WrinkleAngle) else float(theta0)
    if not (0.0 <= theta < math.pi):
        raise ValueError(f"wrinkle angle must lie in [0, pi), got {theta!r}")
    return _g(theta)


# Monotone lookup table used only to bracket and seed the Newton iteration;
# every returned angle is polished to the residual tolerance, so the table
# never limits accuracy. Built lazily once per process.
_TABLE_NODES = 4096
_table_theta: np.ndarray | None = None
_table_xi: np.ndarray | None = None


def _wrinkle_table() -> tuple[np.ndarray, np.ndarray]:
    global _table_theta, _table_xi
    if _table_theta is None:
        theta = np.linspace(0.0, math.pi - 1e-3, _TABLE_NODES)
        xi = np.array([_g(t) for t in theta])
        _table_theta, _table_xi = theta, xi
    return _table_theta, _table_xi


def _wrinkle_angle_scalar(xi: float) -> float:
    """Inverse of g as a bare float; assumes pi/2 < xi < pi."""
    xi_eval = min(xi, COLLAPSE_XI - NEAR_COLLAPSE_EPS)
    theta_tab, xi_tab = _wrinkle_table()
    i = int(np.searchsorted(xi_tab, xi_eval))
    if i <= 0:
        return 0.0
    if i >= len(xi_tab):
        lo, hi = theta_tab[-1], math.pi - 1e-9
        theta = lo
    else:
        lo, hi = theta_tab[i - 1], theta_tab[i]
        span = xi_tab[i] - xi_tab[i - 1]
        theta = lo + (hi - lo) * (xi_eval - xi_tab[i - 1]) / span

    # Safeguarded Newton: keep a sign-changing bracket [lo, hi] and bisect
    # whenever the Newton step leaves it.
    for _ in range(100):
        residual = _g(theta) - xi_eval
        if abs(residual) <= 1e-12:
            return theta
        if residual > 0.0:
            hi = theta
        else:
            lo = theta
        slope = _g_prime(theta)
        if slope > 0.0:
            candidate = theta - residual / slope
        else:
            candidate = 0.5 * (lo + hi)
        theta = candidate if lo < candidate < hi else 0.5 * (lo + hi)
    if abs(_g(theta) - xi_eval) > WRINKLE_RESIDUAL_TOL:
        raise RuntimeError(f"wrinkle-angle inversion failed to converge at xi={xi!r}")
    return theta


def wrinkle_angle_of_load(xi: float) -> WrinkleAngle:
    """Wrinkle angle theta0 = f(xi) for a load coordinate xi in [0, pi).

    Returns theta0 = 0 for xi <= pi/2 (no wrinkling). Otherwise solves
    g(theta0) = xi by a bracketed bisection/Newton hybrid to a residual of
    at most :data:`WRINKLE_RESIDUAL_TOL`. Values of xi within
    :data:`NEAR_COLLAPSE_EPS` of pi are clamped down to the guard boundary,
    where the relation is still well conditioned.

    Raises
    ------
    CollapseError
        If xi >= pi: the beam is past the hinge condition.
    ValueError
        If xi < 0.
    """
    xi = float(xi)
    if xi < 0.0 or not math.isfinite(xi):
        raise ValueError(f"load coordinate must be finite and non-negative, got {xi!r}")
    if xi >= COLLAPSE_XI:
        raise CollapseError(
            f"load coordinate xi={xi!r} is at or past the collapse condition xi=pi"
        )
    if xi <= WRINKLE_ONSET_XI:
        return WrinkleAngle(0.0)
    return WrinkleAngle(_wrinkle_angle_scalar(xi))


# ---------------------------------------------------------------------------
# Stresses, scales, and buckling criticals
# ---------------------------------------------------------------------------

def _root_stress(beam: BeamSpec, load_n: float, theta0: float) -> float:
    """Peak axial membrane stress at the root for a given wrinkle angle."""
    section = 2.0 * (1.0 + math.cos(theta0)) / (
        2.0 * math.pi - 2.0 * theta0 + math.sin(2.0 * theta0)
    )
    return load_n * beam.length_m / (beam.thickness_m * beam.radius_m**2) * section


def max_stress(beam: BeamSpec, load: LoadCase) -> float:
    """Maximum axial membrane stress at the root (Pa).

    sigma_m = (Q*L / (t*R^2)) * 2*(1 + cos(theta0)) / (2*pi - 2*theta0 + sin(2*theta0))

    with theta0 the root wrinkle angle. In the wrinkled regime this equals
    the pressure-carrying form p*pi*R*(1 + cos(theta0)) /
    (2*t*(sin(theta0) + (pi - theta0)*cos(theta0))) by the axial force
    balance; at exact wrinkle onset it reduces to p*R/t.

    Raises
    ------
    CollapseError
        If the root is at or past the hinge condition (xi >= pi).
    """
    if load.xi_root >= COLLAPSE_XI:
        raise CollapseError(
            f"no static root stress: xi={load.xi_root!r} is at or past collapse"
        )
    if load.load_n == 0.0:
        return 0.0
    theta0 = wrinkle_angle_of_load(load.xi_root).theta0_rad
    return _root_stress(beam, load.load_n, theta0)


def longitudinal_stress(beam: BeamSpec) -> float:
    """Longitudinal pressure-vessel stress p*R / (2*t) in Pa."""
    return beam.pressure_pa * beam.radius_m / (2.0 * beam.thickness_m)


def nondim_scale(beam: BeamSpec, load: LoadCase) -> NondimScale:
    """Scale factors mapping (x, y) in meters to nondimensional (xi, eta).

    Uses the effective modulus E' = E * modulus_factor.

    Raises
    ------
    DegenerateLoadError
        If the load is zero; the scales divide by Q.
    """
    if load.load_n == 0.0:
        raise DegenerateLoadError("nondimensional scales are undefined at zero load")
    q = load.load_n
    p = beam.pressure_pa
    r3 = beam.radius_m**3
    xi_per_x = q / (p * r3)
    eta_per_y = q * q * beam.effective_modulus_pa * beam.thickness_m / (p**3 * r3 * r3)
    return NondimScale(xi_per_x=xi_per_x, eta_per_y=eta_per_y)


def buckling_report(beam: BeamSpec, load: LoadCase) -> BucklingReport:
    """Collapse criticals and root state for one loading.

    Q_max = pi*p*R^3 / L, L_max = pi*p*R^3 / Q (infinite at Q = 0), and
    P_min = Q*L / (pi*R^3); the beam is collapsed when xi_root >= pi.
    The root wrinkle angle and stress are evaluated at
    min(xi_root, pi - NEAR_COLLAPSE_EPS) so the report stays total even
    for collapsed inputs.
    """
    p, r3, length = beam.pressure_pa, beam.radius_m**3, beam.length_m
    q = load.load_n
    q_max = math.pi * p * r3 / length
    l_max = math.pi * p * r3 / q if q > 0.0 else math.inf
    p_min = q * length / (math.pi * r3)
    collapsed = load.xi_root >= COLLAPSE_XI
    theta0 = wrinkle_angle_of_load(min(load.xi_root, COLLAPSE_XI - NEAR_COLLAPSE_EPS))
    sigma = _root_stress(beam, q, theta0.theta0_rad) if q > 0.0 else 0.0
    return BucklingReport(
        q_max_n=q_max,
        l_max_m=l_max,
        p_min_pa=p_min,
        collapsed=collapsed,
        theta0_root_rad=theta0.theta0_rad,
        sigma_max_pa=sigma,
    )
