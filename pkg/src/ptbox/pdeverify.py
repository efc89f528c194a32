"""Crank-Nicolson evolution of the trapped Schrodinger equation and analytic residuals.

The equation ``i Psi_t = -Psi_xx + (omega2 x**2 + g/x**2) Psi`` on ``0 < x < L(t)``
is solved on the fixed domain ``q = x / L(t)`` for ``w(q, t) = sqrt(L) Psi(qL, t)``:

    i w_t = -w_qq / L**2 + i (L'/L) (q w_q + w/2) + V(qL) w,

whose right-hand side is Hermitian (the advective part is the symmetrized
``(q d/dq + d/dq q)/2``), so ``int |w|**2 dq = int |Psi|**2 dx`` is conserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import DomainError, InstabilityError
from .modes import GridField, ModeSpec, ShiftConfig, psi_jet, wavefunction
from .observables import potential
from .trapdyn import TrapSchedule

GROWTH_LIMIT = 1e-6


@dataclass(frozen=True)
class EvolutionConfig:
    """``M`` intervals on ``q in [0, 1]`` (Dirichlet at both ends), step ``dt``."""

    M: int
    dt: float
    t_end: float
    schedule: TrapSchedule
    g: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        if int(self.M) != self.M or self.M < 64:
            raise DomainError("M must be an integer >= 64")
        if not (0 < self.dt <= 1e-3):
            raise DomainError("dt must lie in (0, 1e-3]")
        if not (0 < self.t_end <= self.schedule.t_end + 1e-12):
            raise DomainError("t_end must be positive and inside the schedule window")

    @property
    def q(self):
        return np.linspace(0.0, 1.0, self.M + 1)

    @property
    def steps(self) -> int:
        return max(1, round(self.t_end / self.dt))


def initial_field(mode: ModeSpec, config: EvolutionConfig) -> GridField:
    """Sample ``mode`` at ``t = 0`` on the evolution grid ``x_j = q_j L(0)``."""
    L0 = float(config.schedule.length(0.0))
    x = config.q * L0
    vals = np.asarray(wavefunction(mode, config.schedule, ShiftConfig(config.c), 0.0, x))
    vals[0] = vals[-1] = 0.0
    return GridField(x, config.c, vals, {"t": 0.0, "L": L0, "c": config.c, "g": mode.g,
                                        "k": mode.k, "E": mode.E})


def _operator_bands(config, t):
    """Banded storage of the Hermitian operator K at time ``t`` (interior nodes)."""
    ts = config.schedule
    M = config.M
    h = 1.0 / M
    q = config.q
    qi = q[1:-1]
    L = float(ts.length(t))
    rate = float(ts.velocity(t)) / L
    omega2 = float(ts.omega2(t))
    x = qi * L - 1j * config.c
    diag = 2.0 / (L * L * h * h) + potential(omega2, config.g, x)
    lap_off = -1.0 / (L * L * h * h)
    # i * rate * (q d/dq + d/dq q)/2, centered differences
    upper = lap_off + 1j * rate * (q[1:-2] + q[2:-1]) / (4 * h)  # K[j, j+1]
    lower = lap_off - 1j * rate * (q[2:-1] + q[1:-2]) / (4 * h)  # K[j+1, j]
    return diag.astype(np.complex128), upper, lower


def _banded(diag, upper, lower, scale):
    n = len(diag)
    ab = np.zeros((3, n), dtype=np.complex128)
    ab[0, 1:] = scale * upper
    ab[1, :] = 1.0 + scale * diag
    ab[2, :-1] = scale * lower
    return ab


def _apply(diag, upper, lower, scale, w):
    out = (1.0 + scale * diag) * w
    out[:-1] += scale * upper * w[1:]
    out[1:] += scale * lower * w[:-1]
    return out


def evolve_cn(config: EvolutionConfig, initial: GridField, snapshot_every=None, on_snapshot=None):
    """Crank-Nicolson evolution from ``initial`` (sampled at t = 0) to ``config.t_end``.

    Coefficients are frozen at the half step. ``on_snapshot(field)`` is
    called every ``snapshot_every`` steps and at the end.

    Raises
    ------
    InstabilityError
        If, in the Hermitian case ``c == 0``, the norm grows by more than
        ``GROWTH_LIMIT`` (relative) in one step.
    """
    ts = config.schedule
    M = config.M
    if len(initial.values) != M + 1:
        raise DomainError(f"initial field must have M + 1 = {M + 1} samples")
    L0 = float(ts.length(0.0))
    scale_ref = max(1.0, float(np.max(np.abs(initial.values))))
    if abs(initial.values[0]) > 1e-12 * scale_ref or abs(initial.values[-1]) > 1e-12 * scale_ref:
        raise DomainError("initial field violates the Dirichlet conditions")
    h = 1.0 / M
    w = math.sqrt(L0) * initial.values[1:-1].astype(np.complex128)
    n_steps = config.steps
    dt = config.t_end / n_steps
    hermitian = config.c == 0
    norm = h * float(np.vdot(w, w).real)

    def snapshot(t, w):
        L = float(ts.length(t))
        vals = np.concatenate([[0.0], w / math.sqrt(L), [0.0]])
        meta = dict(initial.meta, t=float(t), L=L)
        return GridField(config.q * L, config.c, vals, meta)

    for n in range(n_steps):
        t_half = (n + 0.5) * dt
        d, up, lo = _operator_bands(config, t_half)
        s = 0.5j * dt
        rhs = _apply(d, up, lo, -s, w)
        w = solve_banded((1, 1), _banded(d, up, lo, s), rhs)
        if hermitian:
            new = h * float(np.vdot(w, w).real)
            if new > norm * (1 + GROWTH_LIMIT):
                raise InstabilityError(f"norm grew from {norm:.6g} to {new:.6g} at step {n + 1}")
            norm = new
        if on_snapshot is not None and snapshot_every and (n + 1) % snapshot_every == 0 and n + 1 < n_steps:
            on_snapshot(snapshot((n + 1) * dt, w))
    final = snapshot(n_steps * dt, w)
    if on_snapshot is not None:
        on_snapshot(final)
    return final


def discrete_norm(field: GridField) -> float:
    """Trapezoid-free lattice norm ``dx * sum |Psi_j|**2`` (endpoints are zero)."""
    dx = field.offsets[1] - field.offsets[0]
    return float(dx * np.sum(field.density))


def l2_error(field: GridField, reference) -> float:
    """``sqrt(dx * sum |Psi_j - ref_j|**2)`` on the field's abscissae."""
    dx = field.offsets[1] - field.offsets[0]
    diff = field.values - np.asarray(reference)
    return float(math.sqrt(dx * np.sum(np.abs(diff) ** 2)))


def analytic_residual(mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float, x) -> float:
    """``sup |i Psi_t + Psi_xx - (omega2 z**2 + g/z**2) Psi| / max |Psi|`` on ``z = x - ic``."""
    z = np.asarray(x, dtype=float) - 1j * shift.c
    psi, _, psi_zz, psi_t = psi_jet(mode, ts, t, z)
    res = 1j * psi_t + psi_zz - potential(float(ts.omega2(t)), mode.g, z) * psi
    return float(np.max(np.abs(res)) / np.max(np.abs(psi)))
