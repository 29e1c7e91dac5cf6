"""Command-line front end for the inflated-beam statics toolkit.

Subcommands expose the deflection solver, buckling criticals, parameter
sweeps, inverse load estimation, and modulus fitting with CSV or JSON
output suitable for plotting and batch studies. All flags take strict SI
values (m, Pa, N) unless ``--units kpa-mm`` is selected, which converts
lengths from mm and pressures/stresses/moduli from kPa on ingest.

Exit codes: 0 success, 2 validation error, 3 model collapse condition.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .core import BeamSpec, LoadCase, buckling_report
from .deflection import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    DeflectionProfile,
    solve_profile,
    sweep,
)
from .errors import CollapseError
from .inverse import DisplacementObservation, estimate_load
from .materials import fit_modulus, load_stress_strain_csv, operating_window
from .pose import TipPose

__all__ = ["main"]

_TOLERANCES = {
    "ode_rtol": DEFAULT_RTOL,
    "ode_atol": DEFAULT_ATOL,
    "wrinkle_residual": 1e-10,
    "inverse_displacement_rtol": 1e-7,
}

# Option names shared with config files; values give (converter, default).
_BEAM_OPTION_DEFAULTS = {"modulus_factor": 1.0}


# ---------------------------------------------------------------------------
# Deterministic formatting
# ---------------------------------------------------------------------------

def _canonical(value):
    """Round floats to 9 significant digits; map non-finite to strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return float(f"{value:.9g}")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, str)):
        return str(value)
    value = _canonical(value)
    if isinstance(value, str):
        return value
    return f"{value:.9g}"


def _render_csv(columns: list[str], rows: list[list]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_cell(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _render_json(inputs: dict, results: dict, command: str) -> str:
    def walk(value):
        if isinstance(value, dict):
            return {k: walk(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [walk(v) for v in value]
        return _canonical(value)

    payload = {
        "inputs": walk(inputs),
        "results": walk(results),
        "meta": {
            "tool": "vinebeam",
            "version": __version__,
            "command": command,
            "tolerances": walk(_TOLERANCES),
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write_report(args, command: str, inputs: dict, results: dict,
                  table: tuple[list[str], list[list]] | None = None,
                  out_override: str | None = "unset") -> None:
    """Serialize one run; tables become CSV rows / JSON column arrays."""
    out = args.out if out_override == "unset" else out_override
    if args.format == "csv":
        if table is not None:
            columns, rows = table
        else:
            columns = list(results)
            rows = [[results[c] for c in columns]]
        _emit(_render_csv(columns, rows), out)
    else:
        merged = dict(results)
        if table is not None:
            columns, rows = table
            for j, name in enumerate(columns):
                merged[name] = [row[j] for row in rows]
        _emit(_render_json(inputs, merged, command), out)


# ---------------------------------------------------------------------------
# Argument handling: config files, units, beam construction
# ---------------------------------------------------------------------------

def _read_config(path: str) -> dict[str, str]:
    """Parse a ``key = value`` config file; '#' starts a comment."""
    values: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{line_no}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _merge_config(args: argparse.Namespace, parser_types: dict[str, type]) -> None:
    """Fill options the command line left unset from the config file."""
    if not getattr(args, "config", None):
        return
    for key, raw in _read_config(args.config).items():
        if key not in parser_types:
            raise ValueError(f"unknown config key {key!r}")
        if getattr(args, key, None) is None:
            converter = parser_types[key]
            try:
                setattr(args, key, converter(raw))
            except ValueError as exc:
                raise ValueError(f"config value for {key!r}: {exc}") from exc


def _apply_defaults(args: argparse.Namespace, defaults: dict) -> None:
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


_LENGTH_KEYS = ("radius", "thickness", "length", "displacement")
_PRESSURE_KEYS = ("pressure", "modulus", "sigma_min", "sigma_max")


def _convert_units(args: argparse.Namespace) -> None:
    """kpa-mm mode: lengths arrive in mm, pressures/stresses/moduli in kPa.

    Loads stay in newtons. Sweep ranges convert according to the swept
    variable.
    """
    if args.units == "si":
        return
    length_keys = list(_LENGTH_KEYS)
    pressure_keys = list(_PRESSURE_KEYS)
    variable = getattr(args, "variable", None)
    if variable == "length":
        length_keys += ["lo", "hi"]
    elif variable == "pressure":
        pressure_keys += ["lo", "hi"]
    for key in length_keys:
        value = getattr(args, key, None)
        if value is not None:
            setattr(args, key, value * 1e-3)
    for key in pressure_keys:
        value = getattr(args, key, None)
        if value is not None:
            setattr(args, key, value * 1e3)


def _require(args: argparse.Namespace, names: list[str], command: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise ValueError(f"{command}: missing required option(s): {flags}")


def _build_beam(args: argparse.Namespace) -> BeamSpec:
    return BeamSpec(
        radius_m=args.radius,
        thickness_m=args.thickness,
        length_m=args.length,
        pressure_pa=args.pressure,
        modulus_pa=args.modulus,
        modulus_factor=args.modulus_factor,
    )


def _beam_inputs(beam: BeamSpec) -> dict:
    return {
        "radius_m": beam.radius_m,
        "thickness_m": beam.thickness_m,
        "length_m": beam.length_m,
        "pressure_pa": beam.pressure_pa,
        "modulus_pa": beam.modulus_pa,
        "modulus_factor": beam.modulus_factor,
    }


def _profile_table(profile: DeflectionProfile) -> tuple[list[str], list[list]]:
    columns = ["x_from_tip_m", "x_from_base_m", "y_m", "slope"]
    rows = [
        [float(xt), float(xb), float(y), float(s)]
        for xt, xb, y, s in zip(
            profile.x_from_tip_m, profile.x_from_base_m, profile.y_m, profile.slope
        )
    ]
    return columns, rows


def _maybe_plot(args, make_figure) -> None:
    """Render and save a figure when --plot was given; lazy module import."""
    if getattr(args, "plot", None):
        from . import plots

        plots.save_figure(make_figure(plots), args.plot)


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def _cmd_deflect(args) -> None:
    _require(args, ["radius", "thickness", "length", "pressure", "modulus", "load"], "deflect")
    beam = _build_beam(args)
    load = LoadCase.from_load(beam, args.load)
    profile = solve_profile(beam, load, n_samples=args.samples)
    report = buckling_report(beam, load)
    results = {
        "tip_deflection_m": profile.tip_deflection_m,
        "tip_slope_rad": profile.tip_slope_rad,
        "wrinkle_onset_x_m": profile.wrinkle_onset_x_m,
        "theta0_root_rad": report.theta0_root_rad,
        "collapsed": report.collapsed,
    }
    inputs = _beam_inputs(beam) | {"load_n": args.load}
    _write_report(args, "deflect", inputs, results)
    _maybe_plot(args, lambda plots: plots.profile_figure(profile))


def _cmd_profile(args) -> None:
    _require(args, ["radius", "thickness", "length", "pressure", "modulus", "load"], "profile")
    beam = _build_beam(args)
    load = LoadCase.from_load(beam, args.load)
    profile = solve_profile(beam, load, n_samples=args.samples)
    inputs = _beam_inputs(beam) | {"load_n": args.load, "samples": args.samples}
    results = {
        "tip_deflection_m": profile.tip_deflection_m,
        "tip_slope_rad": profile.tip_slope_rad,
        "wrinkle_onset_x_m": profile.wrinkle_onset_x_m,
    }
    _write_report(args, "profile", inputs, results, table=_profile_table(profile))
    _maybe_plot(args, lambda plots: plots.profile_figure(profile))


def _cmd_buckling(args) -> None:
    _require(args, ["radius", "thickness", "length", "pressure", "modulus", "load"], "buckling")
    beam = _build_beam(args)
    load = LoadCase.from_load(beam, args.load)
    report = buckling_report(beam, load)
    results = {
        "q_max_n": report.q_max_n,
        "l_max_m": report.l_max_m,
        "p_min_pa": report.p_min_pa,
        "sigma_max_pa": report.sigma_max_pa,
        "theta0_root_rad": report.theta0_root_rad,
        "collapsed": report.collapsed,
    }
    inputs = _beam_inputs(beam) | {"load_n": args.load}
    _write_report(args, "buckling", inputs, results)


def _cmd_sweep(args) -> None:
    needed = ["radius", "thickness", "pressure", "modulus", "variable", "lo", "hi"]
    if args.variable == "load":
        needed.append("length")
    elif args.variable == "length":
        needed += ["load"]
        if args.length is None:
            args.length = args.lo
    elif args.variable == "pressure":
        needed += ["load", "length"]
        if args.pressure is None:
            args.pressure = args.lo
    _require(args, needed, "sweep")
    beam = _build_beam(args)
    rows = sweep(beam, args.variable, args.lo, args.hi, args.n, load_n=args.load)
    columns = ["value", "tip_deflection_m", "collapsed", "critical_value"]
    table_rows = [[r.value, r.tip_deflection_m, r.collapsed, r.critical_value] for r in rows]
    inputs = _beam_inputs(beam) | {
        "variable": args.variable,
        "lo": args.lo,
        "hi": args.hi,
        "n": args.n,
        "load_n": args.load,
    }
    _write_report(args, "sweep", inputs, {}, table=(columns, table_rows))
    _maybe_plot(args, lambda plots: plots.sweep_figure(rows, args.variable))


def _cmd_inverse(args) -> None:
    _require(args, ["radius", "thickness", "length", "pressure", "modulus", "displacement"],
             "inverse")
    beam = _build_beam(args)
    estimate = estimate_load(
        DisplacementObservation(tip_displacement_m=args.displacement, beam=beam),
        n_samples=args.samples,
    )
    pose = TipPose.from_parts(
        (beam.length_m, estimate.profile.tip_deflection_m),
        estimate.profile.tip_slope_rad,
    )
    results = {
        "load_n": estimate.load_n,
        "buckled": estimate.buckled,
        "residual_m": estimate.residual_m,
        "tip_translation_x_m": float(pose.translation[0]),
        "tip_translation_y_m": float(pose.translation[1]),
        "tip_rotation_rad": pose.rotation_rad,
    }
    inputs = _beam_inputs(beam) | {
        "displacement_m": args.displacement,
        "samples": args.samples,
    }
    _write_report(args, "inverse", inputs, results)
    if args.profile_out:
        _write_report(args, "inverse-profile", inputs,
                      {"tip_deflection_m": estimate.profile.tip_deflection_m},
                      table=_profile_table(estimate.profile), out_override=args.profile_out)
    _maybe_plot(args, lambda plots: plots.inverse_figure(estimate, args.displacement))


def _cmd_fit_modulus(args) -> None:
    _require(args, ["data"], "fit-modulus")
    series = load_stress_strain_csv(args.data)
    if args.sigma_min is not None and args.sigma_max is not None:
        window = (args.sigma_min, args.sigma_max)
        inputs: dict = {"data": args.data, "sigma_min_pa": window[0], "sigma_max_pa": window[1]}
    elif args.sigma_min is not None or args.sigma_max is not None:
        raise ValueError("fit-modulus: give both --sigma-min and --sigma-max or neither")
    else:
        _require(args, ["radius", "thickness", "length", "pressure", "modulus", "load"],
                 "fit-modulus")
        beam = _build_beam(args)
        window = operating_window(beam, LoadCase.from_load(beam, args.load))
        inputs = _beam_inputs(beam) | {"data": args.data, "load_n": args.load}
    fit = fit_modulus(series, window)
    results = {
        "modulus_pa": fit.modulus_pa,
        "sigma_min_pa": fit.window[0],
        "sigma_max_pa": fit.window[1],
        "n_points_used": fit.n_points_used,
        "r_squared": fit.r_squared,
    }
    _write_report(args, "fit-modulus", inputs, results)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, type]]:
    parser = argparse.ArgumentParser(
        prog="vinebeam",
        description="Statics of inflated cantilever beams and everted tubes.",
    )
    parser.add_argument("--version", action="version", version=f"vinebeam {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    types: dict[str, type] = {}

    def add(sp, flag, type_, help_, choices=None):
        dest = flag.lstrip("-").replace("-", "_")
        types[dest] = type_
        sp.add_argument(flag, dest=dest, type=type_, default=None, help=help_, choices=choices)

    def add_common(sp, with_beam=True):
        if with_beam:
            add(sp, "--radius", float, "tube radius R (m)")
            add(sp, "--thickness", float, "wall thickness t (m)")
            add(sp, "--length", float, "beam length L (m)")
            add(sp, "--pressure", float, "internal gauge pressure p (Pa)")
            add(sp, "--modulus", float, "Young's modulus E (Pa)")
            add(sp, "--modulus-factor", float, "effective-modulus factor in (0, 1], default 1.0")
        add(sp, "--format", str, "output format (default json)", choices=["csv", "json"])
        add(sp, "--out", str, "output file path (default stdout)")
        add(sp, "--config", str, "key = value config file; explicit flags win")
        add(sp, "--units", str, "input units: si (default) or kpa-mm", choices=["si", "kpa-mm"])

    p = sub.add_parser("deflect", help="tip deflection, slope, and wrinkle state")
    add_common(p)
    add(p, "--load", float, "tip load Q (N)")
    add(p, "--samples", int, "profile stations used internally (default 201)")
    add(p, "--plot", str, "also render the deflected profile to this image path")
    p.set_defaults(handler=_cmd_deflect)

    p = sub.add_parser("profile", help="sampled deflection profile")
    add_common(p)
    add(p, "--load", float, "tip load Q (N)")
    add(p, "--samples", int, "number of stations (default 201)")
    add(p, "--plot", str, "also render the profile to this image path")
    p.set_defaults(handler=_cmd_profile)

    p = sub.add_parser("buckling", help="collapse criticals and root stress")
    add_common(p)
    add(p, "--load", float, "tip load Q (N)")
    p.set_defaults(handler=_cmd_buckling)

    p = sub.add_parser("sweep", help="tip deflection across load, length, or pressure")
    add_common(p)
    add(p, "--variable", str, "swept variable", choices=["load", "length", "pressure"])
    add(p, "--lo", float, "sweep range low end")
    add(p, "--hi", float, "sweep range high end")
    add(p, "--n", int, "grid points (default 50)")
    add(p, "--load", float, "fixed tip load Q (N) for length/pressure sweeps")
    add(p, "--plot", str, "also render the sweep curve to this image path")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("inverse", help="applied load from an observed tip displacement")
    add_common(p)
    add(p, "--displacement", float, "observed tip displacement (m)")
    add(p, "--samples", int, "profile stations (default 201)")
    add(p, "--profile-out", str, "write the estimated profile to this path")
    add(p, "--plot", str, "also render the estimated profile to this image path")
    p.set_defaults(handler=_cmd_inverse)

    p = sub.add_parser("fit-modulus", help="Young's modulus over the operating stress window")
    add_common(p)
    add(p, "--data", str, "stress-strain CSV (columns: strain, stress_pa)")
    add(p, "--load", float, "tip load Q (N) used to compute the window")
    add(p, "--sigma-min", float, "explicit window lower stress (Pa)")
    add(p, "--sigma-max", float, "explicit window upper stress (Pa)")
    p.set_defaults(handler=_cmd_fit_modulus)

    return parser, types


_HARD_DEFAULTS = {
    "modulus_factor": 1.0,
    "format": "json",
    "units": "si",
    "samples": 201,
    "n": 50,
}


def main(argv: list[str] | None = None) -> int:
    parser, types = _build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args, types)
        defaults = {k: v for k, v in _HARD_DEFAULTS.items() if hasattr(args, k)}
        _apply_defaults(args, defaults)
        _convert_units(args)
        args.handler(args)
    except CollapseError as exc:
        print(f"vinebeam: collapse: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"vinebeam: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
