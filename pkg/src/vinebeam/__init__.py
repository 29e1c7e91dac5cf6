"""Statics toolkit for inflated cantilever beams and everted tubes.

Solves the wrinkled-beam deflection model as a backward initial-value
problem, computes transverse-buckling criticals and membrane stresses,
inverts observed tip displacements into applied loads, estimates planar
tip pose, and fits Young's modulus over the operating stress window.
"""

from .core import (
    COLLAPSE_XI,
    NEAR_COLLAPSE_EPS,
    WRINKLE_ONSET_XI,
    WRINKLE_RESIDUAL_TOL,
    BeamSpec,
    BucklingReport,
    LoadCase,
    NondimScale,
    WrinkleAngle,
    buckling_report,
    longitudinal_stress,
    max_stress,
    nondim_scale,
    wrinkle_angle_of_load,
    wrinkle_load_of_angle,
)
from .deflection import (
    DeflectionProfile,
    NondimState,
    SweepRow,
    closed_form_unwrinkled,
    solve_nondim,
    solve_profile,
    sweep,
    tip_deflection,
)
from .errors import CollapseError, DegenerateLoadError, GrazingContactError
from .inverse import (
    DisplacementObservation,
    LoadEstimate,
    ProfileErrorMetrics,
    estimate_load,
    profile_error_metrics,
    straight_line_profile,
)
from .materials import (
    ModulusFit,
    StressStrainSeries,
    fit_modulus,
    load_stress_strain_csv,
    operating_window,
)
from .pose import ContactScene, TipPose, tip_growth_rate, tip_pose

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "COLLAPSE_XI",
    "NEAR_COLLAPSE_EPS",
    "WRINKLE_ONSET_XI",
    "WRINKLE_RESIDUAL_TOL",
    "BeamSpec",
    "BucklingReport",
    "LoadCase",
    "NondimScale",
    "WrinkleAngle",
    "buckling_report",
    "longitudinal_stress",
    "max_stress",
    "nondim_scale",
    "wrinkle_angle_of_load",
    "wrinkle_load_of_angle",
    "DeflectionProfile",
    "NondimState",
    "SweepRow",
    "closed_form_unwrinkled",
    "solve_nondim",
    "solve_profile",
    "sweep",
    "tip_deflection",
    "CollapseError",
    "DegenerateLoadError",
    "GrazingContactError",
    "DisplacementObservation",
    "LoadEstimate",
    "ProfileErrorMetrics",
    "estimate_load",
    "profile_error_metrics",
    "straight_line_profile",
    "ModulusFit",
    "StressStrainSeries",
    "fit_modulus",
    "load_stress_strain_csv",
    "operating_window",
    "ContactScene",
    "TipPose",
    "tip_growth_rate",
    "tip_pose",
]
