"""Scale-factor dynamics of the trap: wall position L(t), gauge parameter alpha(t).

The wall obeys ``L'' = -4 omega2(t) L``; the gauge parameter is
``alpha = L' / (2 L)``, which then satisfies ``omega2 + alpha'/2 + alpha**2 = 0``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.interpolate import BPoly, CubicSpline

from .errors import DomainError, ToleranceFailure, WallCollapse, WindowError

COLLAPSE_FRACTION = 1e-6
_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)


@dataclass(frozen=True)
class FrequencySchedule:
    """Time-dependent squared frequency ``omega2(t)``; must accept arrays."""

    omega2: Callable[[np.ndarray], np.ndarray]
    description: str = "custom"

    def __call__(self, t):
        return self.omega2(t)


def constant(omega2: float) -> FrequencySchedule:
    w = float(omega2)
    if not math.isfinite(w):
        raise DomainError("omega2 must be finite")
    return FrequencySchedule(lambda t: w + 0.0 * np.asarray(t, dtype=float), f"constant({w:.17g})")


def zero() -> FrequencySchedule:
    return FrequencySchedule(lambda t: 0.0 * np.asarray(t, dtype=float), "zero")


def sinusoidal(mean: float, amplitude: float, rate: float = 1.0) -> FrequencySchedule:
    """``omega2(t) = mean + amplitude * sin(rate * t)``."""
    return FrequencySchedule(
        lambda t: mean + amplitude * np.sin(rate * np.asarray(t, dtype=float)),
        f"sinusoidal({mean:.17g},{amplitude:.17g},{rate:.17g})",
    )


def from_table(times, omega2) -> FrequencySchedule:
    """Cubic-spline interpolation of a tabulated ``omega2(t)``."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(omega2, dtype=float)
    if times.ndim != 1 or times.shape != values.shape or len(times) < 2:
        raise DomainError("table needs matching 1-D t and omega2 columns")
    if np.any(np.diff(times) <= 0) or not np.all(np.isfinite(values)):
        raise DomainError("table times must increase strictly and values be finite")
    spline = CubicSpline(times, values)

    def omega2_fn(t):
        t = np.asarray(t, dtype=float)
        if np.any((t < times[0] - 1e-12) | (t > times[-1] + 1e-12)):
            raise WindowError("omega2 table queried outside its range")
        return spline(t)

    return FrequencySchedule(omega2_fn, "table")


@dataclass(frozen=True, eq=False)
class TrapSchedule:
    """Sampled wall trajectory with quintic-Hermite dense output.

    ``L''`` at the nodes is taken from the equation of motion, so the
    interpolant honours ``L'' = -4 omega2 L`` exactly at every sample.
    """

    times: np.ndarray
    L: np.ndarray
    Ldot: np.ndarray
    frequency: FrequencySchedule
    tol: float = 0.0
    alpha: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", self.Ldot / (2.0 * self.L))
        for arr in (self.times, self.L, self.Ldot, self.alpha):
            arr.setflags(write=False)

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    @cached_property
    def _dense(self):
        Lddot = -4.0 * self.frequency(self.times) * self.L
        return BPoly.from_derivatives(self.times, np.column_stack([self.L, self.Ldot, Lddot]))

    def _check(self, t):
        t = np.asarray(t, dtype=float)
        slack = 1e-12 * max(1.0, abs(self.t_end))
        if np.any((t < self.times[0] - slack) | (t > self.t_end + slack)):
            raise WindowError(
                f"t outside schedule window [{self.times[0]:g}, {self.t_end:g}]"
            )
        return np.clip(t, self.times[0], self.t_end)

    def length(self, t):
        return self._dense(self._check(t))

    def velocity(self, t):
        return self._dense(self._check(t), 1)

    def acceleration(self, t):
        return self._dense(self._check(t), 2)

    def omega2(self, t):
        return self.frequency(self._check(t))

    def alpha_at(self, t):
        t = self._check(t)
        return self._dense(t, 1) / (2.0 * self._dense(t))

    def alpha_rate(self, t):
        """Time derivative of alpha from the dense output."""
        t = self._check(t)
        L, Ld, Ldd = self._dense(t), self._dense(t, 1), self._dense(t, 2)
        return Ldd / (2.0 * L) - Ld * Ld / (2.0 * L * L)

    def _integrate(self, fn, t):
        """``int_0^t fn(s) ds`` with 8-point Gauss-Legendre on every schedule segment."""
        t = float(self._check(t))
        nodes = self.times
        i = int(np.searchsorted(nodes, t, side="right")) - 1
        i = min(max(i, 0), len(nodes) - 2)
        a, b = nodes[:i], nodes[1 : i + 1]
        edges_a = np.append(a, nodes[i])
        edges_b = np.append(b, t)
        half = 0.5 * (edges_b - edges_a)
        mid = 0.5 * (edges_b + edges_a)
        pts = mid[:, None] + half[:, None] * _GL_X[None, :]
        vals = fn(pts) * _GL_W[None, :] * half[:, None]
        return math.fsum(vals.ravel())

    def inverse_square_integral(self, t):
        """``int_0^t ds / L(s)**2``."""
        return self._integrate(lambda s: 1.0 / self._dense(s) ** 2, t)

    def alpha_integral(self, t):
        """``int_0^t alpha(s) ds`` by quadrature of the dense output."""
        return self._integrate(lambda s: self._dense(s, 1) / (2.0 * self._dense(s)), t)

    def to_csv(self, fh=None):
        """Write columns t, L, Ldot, alpha with 17 significant digits.

        Returns the text when ``fh`` is None.
        """
        buf = io.StringIO() if fh is None else fh
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "L", "Ldot", "alpha"])
        for row in zip(self.times, self.L, self.Ldot, self.alpha):
            w.writerow([f"{v:.17g}" for v in row])
        if fh is None:
            return buf.getvalue()
        return None


def read_schedule_csv(fh):
    """Read a schedule CSV back into a dict of float arrays."""
    rows = list(csv.DictReader(fh))
    return {k: np.array([float(r[k]) for r in rows]) for k in ("t", "L", "Ldot", "alpha")}


def _rk4(frequency, L0, Ldot0, t_end, n):
    h = t_end / n
    times = np.linspace(0.0, t_end, n + 1)
    L = np.empty(n + 1)
    V = np.empty(n + 1)
    L[0], V[0] = L0, Ldot0
    # omega2 at step starts, midpoints, ends: one vectorized call
    w_nodes = np.asarray(frequency(times), dtype=float) * 4.0
    w_mid = np.asarray(frequency(times[:-1] + 0.5 * h), dtype=float) * 4.0
    floor = L0 * COLLAPSE_FRACTION
    y, v = L0, Ldot0
    for i in range(n):
        w0, wm, w1 = w_nodes[i], w_mid[i], w_nodes[i + 1]
        k1y, k1v = v, -w0 * y
        k2y, k2v = v + 0.5 * h * k1v, -wm * (y + 0.5 * h * k1y)
        k3y, k3v = v + 0.5 * h * k2v, -wm * (y + 0.5 * h * k2y)
        k4y, k4v = v + h * k3v, -w1 * (y + h * k3y)
        y_new = y + h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y)
        v = v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        if y_new <= floor:
            frac = (y - floor) / (y - y_new) if y != y_new else 1.0
            raise WallCollapse(times[i] + frac * h)
        y = y_new
        L[i + 1], V[i + 1] = y, v
    return times, L, V


def solve_scale(
    frequency: FrequencySchedule,
    L0: float = 1.0,
    Ldot0: float = 0.0,
    t_end: float = 1.0,
    tol: float = 1e-10,
    max_step: float = 1e-2,
    max_refinements: int = 14,
) -> TrapSchedule:
    """Integrate ``L'' = -4 omega2(t) L`` from ``(L0, Ldot0)`` at ``t = 0``.

    Classical RK4 with fixed step ``h <= max_step``. Each pass runs steps ``h``
    and ``h/2``; the Richardson estimate ``max |y_h - y_{h/2}| / 15`` (L and L')
    must be at most ``tol``, and the stored node values are the extrapolated
    ``y_{h/2} + (y_{h/2} - y_h) / 15`` on the ``h`` grid. The dense output must
    also satisfy the Riccati relation to ``10 * tol`` at every segment midpoint;
    otherwise ``h`` is halved again.

    Raises
    ------
    WallCollapse
        If ``L`` drops to ``L0 * 1e-6`` or below.
    ToleranceFailure
        If both conditions are not met after ``max_refinements`` halvings.
    """
    L0, Ldot0, t_end, tol = float(L0), float(Ldot0), float(t_end), float(tol)
    if not (L0 > 0 and math.isfinite(L0)):
        raise DomainError("L0 must be positive")
    if not math.isfinite(Ldot0):
        raise DomainError("Ldot0 must be finite")
    if not (t_end > 0 and math.isfinite(t_end)):
        raise DomainError("t_end must be positive")
    if not tol >= 1e-12:
        raise DomainError("tol must be >= 1e-12")
    n = max(2, math.ceil(t_end / max_step))
    coarse = _rk4(frequency, L0, Ldot0, t_end, n)
    est = dense = math.inf
    for _ in range(max_refinements):
        fine = _rk4(frequency, L0, Ldot0, t_end, 2 * n)
        dL = fine[1][::2] - coarse[1]
        dV = fine[2][::2] - coarse[2]
        est = max(np.max(np.abs(dL)), np.max(np.abs(dV))) / 15.0
        if est <= tol:
            ts = TrapSchedule(
                coarse[0], fine[1][::2] + dL / 15.0, fine[2][::2] + dV / 15.0, frequency, tol
            )
            mid = 0.5 * (ts.times[1:] + ts.times[:-1])
            dense = float(np.max(np.abs(_riccati(ts, mid))))
            if dense <= 10.0 * tol:
                return ts
        coarse, n = fine, 2 * n
    raise ToleranceFailure(
        f"step halving stalled: error estimate {est:.3e}, dense Riccati residual "
        f"{dense:.3e} (tol {tol:.3e})"
    )


def static_schedule(L: float = 1.0, t_end: float = 1.0) -> TrapSchedule:
    """Fixed wall at ``L`` with ``omega2 = 0``."""
    return solve_scale(zero(), L, 0.0, t_end)


def alpha_of(ts: TrapSchedule, t: float) -> float:
    """Gauge parameter ``L'(t) / (2 L(t))`` from the dense output."""
    return float(ts.alpha_at(t))


def _riccati(ts, t):
    a = ts.alpha_at(t)
    return ts.omega2(t) + 0.5 * ts.alpha_rate(t) + a * a


def riccati_residual(ts: TrapSchedule, t: float) -> float:
    """``omega2(t) + alpha'(t)/2 + alpha(t)**2`` from the dense output."""
    return float(_riccati(ts, t))


def phase_integral(ts: TrapSchedule, E: float, t: float) -> float:
    """Separation phase ``int_0^t E / L(s)**2 ds``."""
    if not E >= 0:
        raise DomainError("E must be nonnegative")
    if E == 0:
        ts._check(t)
        return 0.0
    return float(E) * ts.inverse_square_integral(t)


def gauge_factor(ts: TrapSchedule, t: float) -> float:
    """``exp(-int_0^t alpha ds)``; equals ``sqrt(L(0)/L(t))``."""
    return math.exp(-ts.alpha_integral(t))
