"""Adaptive embedded Runge-Kutta 4(5) integrator with dense output.

Dormand-Prince pair: six distinct stages plus first-same-as-last, fifth
order propagation with a fourth order embedded error estimate and the
standard quartic interpolant for dense output. Forward integration only
(t1 > t0). Kept dependency-free on purpose; the deflection solver needs
nothing beyond a smooth low-dimensional initial value problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = ["OdeSolution", "integrate_rk45"]

# Butcher tableau (Dormand & Prince 1980).
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# Difference between the 5th and embedded 4th order weights.
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)
# Interpolation weights for the quartic dense output (Shampine 1986).
_P = np.array(
    [
        [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
        [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
        [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
        [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
        [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
    ]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_MAX_STEPS = 1_000_000


@dataclass
class OdeSolution:
    """Accepted steps plus per-step dense interpolants.

    ``ts``/``ys`` hold the step endpoints; calling the solution evaluates
    the quartic interpolant of the step containing each query point.
    """

    ts: np.ndarray
    ys: np.ndarray
    _interp_q: list[np.ndarray]  # per step: (n_states, 4) dense coefficients

    @property
    def t_end(self) -> float:
        return float(self.ts[-1])

    @property
    def y_end(self) -> np.ndarray:
        return self.ys[-1]

    def __call__(self, t: float | Sequence[float] | np.ndarray) -> np.ndarray:
        """Dense evaluation at ``t``; shape (n_states,) or (n_points, n_states)."""
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        if t_arr.min() < self.ts[0] - 1e-12 or t_arr.max() > self.ts[-1] + 1e-12:
            raise ValueError("dense evaluation outside the integrated interval")
        scalar = np.asarray(t).ndim == 0
        out = np.empty((t_arr.size, self.ys.shape[1]))
        idx = np.clip(np.searchsorted(self.ts, t_arr, side="right") - 1, 0, len(self._interp_q) - 1)
        for k, (ti, i) in enumerate(zip(t_arr, idx)):
            h = self.ts[i + 1] - self.ts[i]
            theta = 0.0 if h == 0.0 else (ti - self.ts[i]) / h
            powers = np.array([theta, theta**2, theta**3, theta**4])
            out[k] = self.ys[i] + h * self._interp_q[i] @ powers
        return out[0] if scalar else out


def _error_norm(err: np.ndarray, scale: np.ndarray) -> float:
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _initial_step(fun, t0, y0, f0, t1, rtol, atol):
    """Hairer-style starting step size estimate."""
    scale = atol + rtol * np.abs(y0)
    d0 = _error_norm(y0, scale)
    d1 = _error_norm(f0, scale)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = y0 + h0 * f0
    f1 = np.asarray(fun(t0 + h0, y1), dtype=float)
    d2 = _error_norm(f1 - f0, scale) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, t1 - t0)


def integrate_rk45(
    fun: Callable[[float, np.ndarray], Sequence[float]],
    t0: float,
    t1: float,
    y0: Sequence[float],
    rtol: float = 1e-8,
    atol: float = 1e-10,
) -> OdeSolution:
    """Integrate dy/dt = fun(t, y) from t0 to t1 (t1 > t0).

    Local error per step is controlled to roughly atol + rtol*|y| per
    component (RMS norm). Returns the accepted mesh and dense interpolants.
    """
    if not t1 > t0:
        raise ValueError(f"forward integration requires t1 > t0, got [{t0!r}, {t1!r}]")
    y = np.asarray(y0, dtype=float)
    t = float(t0)
    f = np.asarray(fun(t, y), dtype=float)
    h = _initial_step(fun, t, y, f, t1, rtol, atol)
    h_min_floor = 10.0 * abs(t1 - t0) * np.finfo(float).eps

    ts = [t]
    ys = [y.copy()]
    interp_q: list[np.ndarray] = []
    k = np.empty((7, y.size))

    steps = 0
    while t < t1:
        steps += 1
        if steps > _MAX_STEPS:
            raise RuntimeError(f"integrator exceeded {_MAX_STEPS} steps")
        h = min(h, t1 - t)
        if h < h_min_floor:
            h = h_min_floor

        k[0] = f
        for i in range(1, 7):
            yi = y + h * (_A[i] @ k[:i])
            k[i] = fun(t + _C[i] * h, yi)
        y_new = y + h * (_B @ k)
        # stage 7 is evaluated at (t + h, y_new) already, FSAL
        err = h * (_E @ k)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        norm = _error_norm(err, scale)

        if norm <= 1.0:
            q = k.T @ _P
            interp_q.append(q)
            t = t + h
            y = y_new
            f = k[6].copy()
            ts.append(t)
            ys.append(y.copy())
            factor = _MAX_FACTOR if norm == 0.0 else min(_MAX_FACTOR, _SAFETY * norm**-0.2)
            h *= factor
        else:
            h *= max(_MIN_FACTOR, _SAFETY * norm**-0.2)

    return OdeSolution(ts=np.array(ts), ys=np.array(ys), _interp_q=interp_q)
