"""Integrator tests against closed-form solutions."""

import math

import numpy as np
import pytest

from vinebeam.ode import integrate_rk45


class TestAgainstClosedForms:
    def test_exponential(self):
        sol = integrate_rk45(lambda t, y: (y[0],), 0.0, 2.0, (1.0,), rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(sol.y_end[0], math.e**2, rtol=1e-9)

    def test_exponential_dense(self):
        sol = integrate_rk45(lambda t, y: (y[0],), 0.0, 2.0, (1.0,), rtol=1e-10, atol=1e-12)
        ts = np.linspace(0.0, 2.0, 57)
        np.testing.assert_allclose(sol(ts)[:, 0], np.exp(ts), rtol=1e-8)

    def test_cubic_forcing_is_exact(self):
        # y1' = y2, y2' = t: solution y2 = t^2/2, y1 = t^3/6. A fifth order
        # method with quartic dense output reproduces it to roundoff.
        sol = integrate_rk45(lambda t, y: (y[1], t), 0.0, 3.0, (0.0, 0.0))
        ts = np.linspace(0.0, 3.0, 41)
        states = sol(ts)
        np.testing.assert_allclose(states[:, 0], ts**3 / 6.0, atol=1e-13)
        np.testing.assert_allclose(states[:, 1], ts**2 / 2.0, atol=1e-13)

    def test_harmonic_oscillator(self):
        sol = integrate_rk45(
            lambda t, y: (y[1], -y[0]), 0.0, 2.0 * math.pi, (1.0, 0.0), rtol=1e-9, atol=1e-12
        )
        np.testing.assert_allclose(sol.y_end, [1.0, 0.0], atol=1e-7)
        quarter = sol(math.pi / 2.0)
        np.testing.assert_allclose(quarter, [0.0, -1.0], atol=1e-7)

    def test_tighter_tolerance_is_more_accurate(self):
        errs = []
        for rtol in (1e-5, 1e-8, 1e-11):
            sol = integrate_rk45(lambda t, y: (y[0],), 0.0, 1.0, (1.0,), rtol=rtol, atol=rtol * 1e-2)
            errs.append(abs(sol.y_end[0] - math.e))
        assert errs[0] > errs[1] > errs[2]


class TestInterface:
    def test_mesh_endpoints(self):
        sol = integrate_rk45(lambda t, y: (1.0,), 0.0, 1.5, (0.0,))
        assert sol.ts[0] == 0.0
        assert sol.t_end == 1.5

    def test_backward_span_rejected(self):
        with pytest.raises(ValueError):
            integrate_rk45(lambda t, y: (1.0,), 1.0, 0.0, (0.0,))

    def test_dense_outside_interval_rejected(self):
        sol = integrate_rk45(lambda t, y: (1.0,), 0.0, 1.0, (0.0,))
        with pytest.raises(ValueError):
            sol(1.5)

    def test_dense_scalar_and_vector_queries(self):
        sol = integrate_rk45(lambda t, y: (1.0,), 0.0, 1.0, (0.0,))
        assert sol(0.5).shape == (1,)
        assert sol(np.array([0.25, 0.75])).shape == (2, 1)

    def test_stiff_start_is_handled(self):
        # steep but integrable layer at t=0, like the near-collapse root
        sol = integrate_rk45(
            lambda t, y: (1.0 / math.sqrt(t + 1e-9),), 0.0, 1.0, (0.0,), rtol=1e-8, atol=1e-10
        )
        exact = 2.0 * (math.sqrt(1.0 + 1e-9) - math.sqrt(1e-9))
        np.testing.assert_allclose(sol.y_end[0], exact, rtol=1e-7)
