"""Young's-modulus fitting over the operating stress window.

Tensile-test data arrives as engineering stress vs engineering strain; the
modulus is the ordinary least-squares slope of stress against strain,
restricted to the stress window the beam actually sees in service. The
window runs from the pressure-vessel longitudinal stress up to the peak
bending stress at the loaded root.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import BeamSpec, LoadCase, longitudinal_stress, max_stress

__all__ = [
    "StressStrainSeries",
    "ModulusFit",
    "fit_modulus",
    "operating_window",
    "load_stress_strain_csv",
]


@dataclass(frozen=True)
class StressStrainSeries:
    """Ordered tensile-test record of (strain, stress in Pa) pairs.

    Strains must be non-negative and strictly increasing, with at least
    three points.
    """

    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        pts = tuple((float(e), float(s)) for e, s in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 3:
            raise ValueError(f"need at least 3 stress-strain points, got {len(pts)}")
        strains = [e for e, _ in pts]
        if strains[0] < 0.0:
            raise ValueError(f"strains must be non-negative, got {strains[0]!r}")
        if any(b <= a for a, b in zip(strains, strains[1:])):
            raise ValueError("strains must be strictly increasing")

    @property
    def strain(self) -> np.ndarray:
        return np.array([e for e, _ in self.points])

    @property
    def stress_pa(self) -> np.ndarray:
        return np.array([s for _, s in self.points])


@dataclass(frozen=True)
class ModulusFit:
    """Windowed linear fit of stress against strain."""

    modulus_pa: float
    window: tuple[float, float]
    n_points_used: int
    r_squared: float


def fit_modulus(series: StressStrainSeries, window: tuple[float, float]) -> ModulusFit:
    """Least-squares modulus over the points whose stress falls in ``window``.

    Fits stress = E*strain + b by unweighted OLS on the points with stress
    inside [sigma_min, sigma_max] (inclusive) and reports the slope E and
    the coefficient of determination.

    Raises
    ------
    ValueError
        If the window is empty/reversed or fewer than two points fall in it.
    """
    sigma_min, sigma_max = float(window[0]), float(window[1])
    if not sigma_min < sigma_max:
        raise ValueError(f"window must satisfy sigma_min < sigma_max, got {window!r}")
    stress = series.stress_pa
    strain = series.strain
    mask = (stress >= sigma_min) & (stress <= sigma_max)
    n_used = int(mask.sum())
    if n_used < 2:
        raise ValueError(
            f"only {n_used} points fall in the stress window [{sigma_min!r}, {sigma_max!r}]; "
            "need at least 2"
        )
    e_win, s_win = strain[mask], stress[mask]
    slope, intercept = np.polyfit(e_win, s_win, 1)
    residual = s_win - (slope * e_win + intercept)
    total = s_win - s_win.mean()
    ss_tot = float(total @ total)
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - float(residual @ residual) / ss_tot
    if slope <= 0.0:
        raise ValueError(f"fitted modulus is not positive ({slope!r} Pa); check the data")
    return ModulusFit(
        modulus_pa=float(slope),
        window=(sigma_min, sigma_max),
        n_points_used=n_used,
        r_squared=max(0.0, min(1.0, r_squared)),
    )


def operating_window(beam: BeamSpec, load: LoadCase) -> tuple[float, float]:
    """Stress window the beam wall sees in service, (sigma_min, sigma_max).

    The lower bound is the longitudinal pressure-vessel stress, the upper
    bound the peak axial stress at the loaded root. At very small loads the
    root stress drops below the pressure stress; the pair is then reordered
    (ascending) with a warning.

    Raises
    ------
    CollapseError
        If the root is at or past the hinge condition.
    """
    sigma_min = longitudinal_stress(beam)
    sigma_max = max_stress(beam, load)
    if sigma_max < sigma_min:
        warnings.warn(
            "root stress is below the pressure-vessel stress at this load; "
            "reordering the window",
            stacklevel=2,
        )
        sigma_min, sigma_max = sigma_max, sigma_min
    return (sigma_min, sigma_max)


def load_stress_strain_csv(path: str | Path) -> StressStrainSeries:
    """Read a tensile-test CSV with header columns ``strain`` and ``stress_pa``.

    UTF-8, comma separated, '.' decimal separator. Extra columns are
    ignored.

    Raises
    ------
    ValueError
        For a missing header, missing columns, or unparsable numbers.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file; expected a header row")
        fields = [name.strip() for name in reader.fieldnames]
        if "strain" not in fields or "stress_pa" not in fields:
            raise ValueError(
                f"{path}: header must contain 'strain' and 'stress_pa' columns, got {fields}"
            )
        points = []
        for line_no, row in enumerate(reader, start=2):
            row = {(k or "").strip(): v for k, v in row.items()}
            try:
                strain = float(row["strain"])
                stress = float(row["stress_pa"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{line_no}: bad stress-strain row {row!r}") from exc
            if not (math.isfinite(strain) and math.isfinite(stress)):
                raise ValueError(f"{path}:{line_no}: non-finite stress-strain row {row!r}")
            points.append((strain, stress))
    return StressStrainSeries(points=tuple(points))
