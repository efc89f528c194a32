"""Expectation values on the shifted line and the shifted-potential identities."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import quadrature
from .errors import DomainError
from .modes import (
    ConjMode,
    ModeSpec,
    ShiftConfig,
    continued_conjugate_at,
    psi_jet,
    wavefunction,
)
from .trapdyn import TrapSchedule


def potential(omega2, g, z):
    """``omega2 z**2 + g / z**2`` at complex ``z``."""
    z = np.asarray(z, dtype=np.complex128)
    out = omega2 * z * z
    if g != 0:
        out = out + g / (z * z)
    return out


def pt_residual(omega2, g, c, x):
    """``|conj(V(-x)) - V(x)|`` for ``V(x) = omega2 (x-ic)**2 + g/(x-ic)**2``."""
    x = np.asarray(x, dtype=float)
    v = potential(omega2, g, x - 1j * c)
    v_mirror = potential(omega2, g, -x - 1j * c)
    return np.abs(np.conj(v_mirror) - v)


def shift_identity(omega2, c, x):
    """``V(x + ic) - V(x - ic) - 4 i omega2 c x`` for the pure oscillator (g = 0)."""
    x = np.asarray(x, dtype=float)
    return potential(omega2, 0.0, x + 1j * c) - potential(omega2, 0.0, x - 1j * c) - 4j * omega2 * c * x


def apply_H(mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float, x, mirrored=False):
    """``[-d2/dx2 + omega2 z**2 + g/z**2] Psi`` at ``z = x - ic``.

    The second derivative is analytic (Bessel recurrences and the chain
    rule). With ``mirrored=True`` the potential is evaluated at ``x + ic``
    instead, while ``Psi`` stays on ``x - ic``.
    """
    x = np.asarray(x, dtype=float)
    z = x - 1j * shift.c
    psi, _, psi_zz, _ = psi_jet(mode, ts, t, z)
    omega2 = float(ts.omega2(t))
    vz = x + 1j * shift.c if mirrored else z
    return -psi_zz + potential(omega2, mode.g, vz) * psi


def bra(mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float):
    """Callable giving the bra on the shifted line for ``shift.conj_mode``."""
    if shift.conj_mode is ConjMode.SHIFT_THEN_CONJUGATE:
        return lambda x: np.conj(wavefunction(mode, ts, shift, t, x))
    return lambda x: continued_conjugate_at(mode, ts, t, np.asarray(x) - 1j * shift.c)


@dataclass(frozen=True)
class ObservableReport:
    mode: str
    t: float
    c: float
    conj_mode: ConjMode
    omega2: float
    norm: complex
    exp_H: complex
    exp_x: complex

    @property
    def combo(self) -> complex:
        return self.exp_H + 4j * self.omega2 * self.c * self.exp_x

    @property
    def im_residual(self) -> float:
        """``|Im combo| / |<H>|``."""
        return abs(self.combo.imag) / max(abs(self.exp_H), 1e-300)

    def to_dict(self) -> dict:
        combo = self.combo
        return {
            "mode": self.mode,
            "t": self.t,
            "c": self.c,
            "conj_mode": self.conj_mode.value,
            "norm_re": self.norm.real,
            "norm_im": self.norm.imag,
            "H_re": self.exp_H.real,
            "H_im": self.exp_H.imag,
            "x_re": self.exp_x.real,
            "x_im": self.exp_x.imag,
            "combo_re": combo.real,
            "combo_im": combo.imag,
            "im_residual": self.im_residual,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def expectation_report(
    mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float, tol=1e-10
) -> ObservableReport:
    """Norm, ``<H>`` and ``<x>`` on the shifted line for the chosen bra.

    ``<x>`` uses the real weight ``x`` (the integration parameter). The mode
    must be normalized at ``t`` on the shifted line.

    Raises
    ------
    DomainError
        If ``int |Psi(x - ic)|**2 dx`` differs from 1 by more than 1e-8.
    """
    L = float(ts.length(t))
    ket = lambda x: wavefunction(mode, ts, shift, t, x)
    plain = quadrature.inner(ket, ket, L, tol)
    if abs(plain - 1.0) > 1e-8:
        raise DomainError(f"mode is not normalized on the shifted line (norm {plain.real:.6g})")
    b = bra(mode, ts, shift, t)
    norm = quadrature.pairing(b, ket, L, tol)
    h = quadrature.pairing(b, lambda x: apply_H(mode, ts, shift, t, x), L, tol)
    xm = quadrature.pairing(b, lambda x: x * ket(x), L, tol)
    return ObservableReport(
        mode=mode.ident,
        t=float(t),
        c=float(shift.c),
        conj_mode=shift.conj_mode,
        omega2=float(ts.omega2(t)),
        norm=norm,
        exp_H=h / norm,
        exp_x=xm / norm,
    )


def hermitian_reality_check(mode: ModeSpec, ts: TrapSchedule, t: float, tol=1e-12) -> float:
    """``|Im int_0^L conj(Psi) H Psi dx|`` for the unshifted mode."""
    shift = ShiftConfig(0.0)
    L = float(ts.length(t))
    ket = lambda x: wavefunction(mode, ts, shift, t, x)
    val = quadrature.inner(ket, lambda x: apply_H(mode, ts, shift, t, x), L, tol)
    return abs(val.imag)
