"""Model-core tests: types, wrinkle relation, criticals, stresses, scales."""

import math

import numpy as np
import pytest

from vinebeam import (
    BeamSpec,
    CollapseError,
    DegenerateLoadError,
    LoadCase,
    WrinkleAngle,
    buckling_report,
    longitudinal_stress,
    max_stress,
    nondim_scale,
    wrinkle_angle_of_load,
    wrinkle_load_of_angle,
)

from conftest import LDPE

PI = math.pi


class TestBeamSpec:
    def test_valid(self, ldpe_beam):
        assert ldpe_beam.radius_m == 0.0127
        assert ldpe_beam.effective_modulus_pa == 227e6

    def test_modulus_factor_scales_effective_modulus(self):
        beam = BeamSpec(**LDPE, modulus_factor=0.25)
        np.testing.assert_allclose(beam.effective_modulus_pa, 0.25 * 227e6, rtol=1e-15)

    @pytest.mark.parametrize("field", ["radius_m", "thickness_m", "length_m", "pressure_pa", "modulus_pa"])
    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
    def test_rejects_nonpositive(self, field, bad):
        params = dict(LDPE)
        params[field] = bad
        with pytest.raises(ValueError):
            BeamSpec(**params)

    def test_rejects_thick_wall(self):
        params = dict(LDPE)
        params["thickness_m"] = params["radius_m"] / 10.0
        with pytest.raises(ValueError):
            BeamSpec(**params)

    @pytest.mark.parametrize("factor", [0.0, -0.5, 1.5])
    def test_rejects_bad_modulus_factor(self, factor):
        with pytest.raises(ValueError):
            BeamSpec(**LDPE, modulus_factor=factor)


class TestLoadCase:
    def test_xi_root_by_construction(self, ldpe_beam):
        case = LoadCase.from_load(ldpe_beam, 0.155)
        expected = 0.155 * 0.357 / (10340.0 * 0.0127**3)
        assert case.xi_root == expected

    def test_rejects_negative_load(self, ldpe_beam):
        with pytest.raises(ValueError):
            LoadCase.from_load(ldpe_beam, -0.1)

    def test_zero_load(self, ldpe_beam):
        case = LoadCase.from_load(ldpe_beam, 0.0)
        assert case.xi_root == 0.0


class TestWrinkleAngle:
    @pytest.mark.parametrize("theta", [-0.1, PI, 4.0])
    def test_range(self, theta):
        with pytest.raises(ValueError):
            WrinkleAngle(theta)


class TestWrinkleLoadOfAngle:
    def test_at_zero_is_exactly_half_pi(self):
        assert wrinkle_load_of_angle(WrinkleAngle(0.0)) == PI / 2.0

    def test_at_half_pi(self):
        # direct hand evaluation: pi*(2pi - pi + 0) / (4*(1 + 0)) = pi^2/4
        np.testing.assert_allclose(wrinkle_load_of_angle(PI / 2.0), PI**2 / 4.0, rtol=1e-15)

    def test_near_collapse_limit(self):
        assert abs(wrinkle_load_of_angle(PI - 1e-4) - PI) < 1e-6

    def test_monotone_on_dense_grid(self):
        grid = np.linspace(0.0, PI - 1e-9, 10_000)
        values = np.array([wrinkle_load_of_angle(t) for t in grid])
        assert np.all(np.diff(values) > 0.0)

    @pytest.mark.parametrize("theta", [-1e-9, PI, 3.5])
    def test_domain(self, theta):
        with pytest.raises(ValueError):
            wrinkle_load_of_angle(theta)


class TestWrinkleAngleOfLoad:
    def test_zero_below_onset(self):
        for xi in (0.0, 0.3, PI / 2.0):
            assert wrinkle_angle_of_load(xi).theta0_rad == 0.0

    def test_round_trip_of_half_pi(self):
        theta = wrinkle_angle_of_load(PI**2 / 4.0)
        assert abs(theta.theta0_rad - PI / 2.0) < 1e-8

    def test_collapse_boundary(self):
        with pytest.raises(CollapseError):
            wrinkle_angle_of_load(PI)
        with pytest.raises(CollapseError):
            wrinkle_angle_of_load(4.0)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            wrinkle_angle_of_load(-0.5)

    def test_round_trip_residuals(self):
        rng = np.random.default_rng(42)
        for xi in rng.uniform(PI / 2.0, PI - 1e-3, 1000):
            theta = wrinkle_angle_of_load(xi)
            assert abs(wrinkle_load_of_angle(theta) - xi) <= 1e-8

    def test_continuity_at_onset(self):
        assert wrinkle_angle_of_load(PI / 2.0 + 1e-9).theta0_rad < 1e-3

    def test_near_collapse_stays_below_pi(self):
        theta = wrinkle_angle_of_load(PI - 1e-6)
        assert PI - 0.01 < theta.theta0_rad < PI


class TestBucklingReport:
    def test_critical_values(self, ldpe_beam):
        report = buckling_report(ldpe_beam, LoadCase.from_load(ldpe_beam, 0.155))
        np.testing.assert_allclose(report.q_max_n, PI * 10340.0 * 0.0127**3 / 0.357, rtol=1e-15)
        np.testing.assert_allclose(report.q_max_n, 0.1864, rtol=5e-4)
        np.testing.assert_allclose(report.l_max_m, 0.4292, rtol=5e-4)
        np.testing.assert_allclose(report.p_min_pa, 8.60e3, rtol=5e-4)
        assert not report.collapsed

    def test_zero_load(self, ldpe_beam):
        report = buckling_report(ldpe_beam, LoadCase.from_load(ldpe_beam, 0.0))
        assert report.l_max_m == math.inf
        assert report.p_min_pa == 0.0
        assert report.sigma_max_pa == 0.0
        assert not report.collapsed

    def test_collapsed_flag(self, ldpe_beam):
        report = buckling_report(ldpe_beam, LoadCase.from_load(ldpe_beam, 0.3))
        assert report.collapsed
        assert math.isfinite(report.sigma_max_pa)

    def test_consistency_with_criticals(self, ldpe_beam):
        """Loading at each critical puts the root exactly at the hinge coordinate."""
        report = buckling_report(ldpe_beam, LoadCase.from_load(ldpe_beam, 0.155))
        xi_at_qmax = LoadCase.from_load(ldpe_beam, report.q_max_n).xi_root
        assert abs(xi_at_qmax - PI) <= 1e-12

        beam_lmax = BeamSpec(**{**LDPE, "length_m": report.l_max_m})
        assert abs(LoadCase.from_load(beam_lmax, 0.155).xi_root - PI) <= 1e-12

        beam_pmin = BeamSpec(**{**LDPE, "pressure_pa": report.p_min_pa})
        assert abs(LoadCase.from_load(beam_pmin, 0.155).xi_root - PI) <= 1e-12


class TestMaxStress:
    def test_taut_root_value(self, ldpe_beam):
        # theta0 = 0 section constant: 2*(1+1)/(2*pi) = 2/pi
        load = LoadCase.from_load(ldpe_beam, 0.05)
        assert load.xi_root < PI / 2.0
        expected = 2.0 * 0.05 * 0.357 / (PI * 0.0127**2 * 5.08e-5)
        np.testing.assert_allclose(max_stress(ldpe_beam, load), expected, rtol=1e-12)

    def test_zero_load(self, ldpe_beam):
        assert max_stress(ldpe_beam, LoadCase.from_load(ldpe_beam, 0.0)) == 0.0

    def test_collapse_error(self, ldpe_beam):
        with pytest.raises(CollapseError):
            max_stress(ldpe_beam, LoadCase.from_load(ldpe_beam, 0.5))

    def test_force_balance_oracle(self, ldpe_beam):
        """Moment-balance form must match the axial force balance in the
        wrinkled regime: sigma = p*pi*R*(1+cos t0) / (2*t*(sin t0 + (pi-t0)cos t0))."""
        load = LoadCase.from_load(ldpe_beam, 0.155)
        theta = _bisect_wrinkle_angle(load.xi_root)
        expected = (
            10340.0 * PI * 0.0127 * (1.0 + math.cos(theta))
            / (2.0 * 5.08e-5 * (math.sin(theta) + (PI - theta) * math.cos(theta)))
        )
        np.testing.assert_allclose(max_stress(ldpe_beam, load), expected, rtol=1e-9)

    def test_onset_equals_pressure_stress_times_two(self, ldpe_beam):
        """At exact wrinkle onset the peak stress is p*R/t, twice the
        longitudinal pressure stress."""
        q_onset = PI * 10340.0 * 0.0127**3 / (2.0 * 0.357)
        load = LoadCase.from_load(ldpe_beam, q_onset)
        np.testing.assert_allclose(
            max_stress(ldpe_beam, load), 10340.0 * 0.0127 / 5.08e-5, rtol=1e-12
        )


def _bisect_wrinkle_angle(xi: float) -> float:
    """Plain bisection oracle for the wrinkle angle, independent of the
    package's Newton-based inverse."""
    lo, hi = 0.0, PI - 1e-9
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if wrinkle_load_of_angle(mid) < xi:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestLongitudinalStress:
    def test_hand_value(self, ldpe_beam):
        np.testing.assert_allclose(longitudinal_stress(ldpe_beam), 1.2925e6, rtol=1e-10)

    def test_thickness_proportionality(self):
        thin = BeamSpec(**{**LDPE, "thickness_m": 4e-5})
        thick = BeamSpec(**{**LDPE, "thickness_m": 8e-5})
        np.testing.assert_allclose(
            longitudinal_stress(thin), 2.0 * longitudinal_stress(thick), rtol=1e-15
        )


class TestNondimScale:
    def test_xi_at_root(self, ldpe_beam):
        load = LoadCase.from_load(ldpe_beam, 0.155)
        scale = nondim_scale(ldpe_beam, load)
        np.testing.assert_allclose(scale.xi_per_x * 0.357, load.xi_root, rtol=1e-14)

    def test_xi_per_x_hand_value(self, ldpe_beam):
        scale = nondim_scale(ldpe_beam, LoadCase.from_load(ldpe_beam, 0.155))
        np.testing.assert_allclose(scale.xi_per_x, 0.155 / (10340.0 * 0.0127**3), rtol=1e-15)
        np.testing.assert_allclose(scale.xi_per_x, 7.318, rtol=1e-4)

    def test_displacement_round_trip(self, ldpe_beam):
        scale = nondim_scale(ldpe_beam, LoadCase.from_load(ldpe_beam, 0.155))
        eta = 3.7
        assert abs((eta / scale.eta_per_y) * scale.eta_per_y - eta) <= 1e-12

    def test_zero_load_degenerate(self, ldpe_beam):
        with pytest.raises(DegenerateLoadError):
            nondim_scale(ldpe_beam, LoadCase.from_load(ldpe_beam, 0.0))

    def test_modulus_factor_enters_eta(self):
        full = BeamSpec(**LDPE)
        soft = BeamSpec(**LDPE, modulus_factor=0.25)
        load_full = LoadCase.from_load(full, 0.1)
        load_soft = LoadCase.from_load(soft, 0.1)
        ratio = nondim_scale(soft, load_soft).eta_per_y / nondim_scale(full, load_full).eta_per_y
        np.testing.assert_allclose(ratio, 0.25, rtol=1e-15)

    def test_dimensionless_under_unit_rescale(self):
        """xi and eta are invariant under any consistent unit change.

        Rescale lengths by lam_m and forces by lam_n; pressures and moduli
        then scale by lam_n/lam_m^2.
        """
        rng = np.random.default_rng(7)
        beam = BeamSpec(**LDPE)
        load = LoadCase.from_load(beam, 0.155)
        scale = nondim_scale(beam, load)
        x, y = 0.21, 0.013
        xi, eta = scale.xi_per_x * x, scale.eta_per_y * y
        for _ in range(20):
            lam_m, lam_n = rng.uniform(0.2, 5.0, 2)
            lam_pa = lam_n / lam_m**2
            q2 = 0.155 * lam_n
            p2 = 10340.0 * lam_pa
            r2, t2, l2 = 0.0127 * lam_m, 5.08e-5 * lam_m, 0.357 * lam_m
            e2 = 227e6 * lam_pa
            xi2 = q2 * (x * lam_m) / (p2 * r2**3)
            eta2 = q2**2 * e2 * t2 * (y * lam_m) / (p2**3 * r2**6)
            np.testing.assert_allclose(xi2, xi, rtol=1e-12)
            np.testing.assert_allclose(eta2, eta, rtol=1e-12)


class TestStressMonotonicity:
    def test_root_stress_nondecreasing_in_load(self, ldpe_beam):
        q_max = PI * 10340.0 * 0.0127**3 / 0.357
        grid = np.linspace(1e-4, q_max * (1.0 - 1e-9), 300)
        stresses = [max_stress(ldpe_beam, LoadCase.from_load(ldpe_beam, q)) for q in grid]
        assert np.all(np.diff(stresses) >= 0.0)
