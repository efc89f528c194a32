"""Untrapped reference solution of the shifted oscillator (unit frequency).

On the line ``z = x - i c`` the eigenfunctions are

    psi_nq(z) = z**(1/2 - q beta) exp(-z**2 / 2) L_n^(-q beta)(z**2),
    E_nq = 4 n + 2 - 2 q beta,     g = beta**2 - 1/4,

with quasi-parity ``q = +-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchError, DomainError
from .modes import FD6
from .specfun import laguerre


@dataclass(frozen=True)
class FullLineMode:
    n: int
    qp: int
    beta: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError("n must be a nonnegative integer")
        if self.qp not in (1, -1):
            raise DomainError("quasi-parity must be +1 or -1")
        if not (self.beta >= 0 and math.isfinite(self.beta)):
            raise DomainError("beta must be finite and >= 0")

    @property
    def g(self) -> float:
        return self.beta**2 - 0.25

    @property
    def exponent(self) -> float:
        return 0.5 - self.qp * self.beta

    @property
    def laguerre_order(self) -> float:
        return -self.qp * self.beta

    @property
    def energy(self) -> float:
        return znojil_energy(self.n, self.qp, self.beta)

    @property
    def normalizable_at_origin(self) -> bool:
        """Whether ``1/2 - q beta > -1/2`` (recorded, never enforced)."""
        return self.exponent > -0.5


def znojil_energy(n, qp, beta) -> float:
    return 4.0 * n + 2.0 - 2.0 * qp * beta


def _power(z, a):
    # integer exponents need no branch; others use the principal branch
    if a == int(a):
        return z ** int(a)
    if np.any((z.imag == 0) & (z.real <= 0)):
        raise BranchError("z on the branch cut of z**a")
    return np.power(z, a)


def znojil_psi(mode: FullLineMode, z):
    z = np.asarray(z, dtype=np.complex128)
    out = _power(z, mode.exponent) * np.exp(-z * z / 2) * laguerre(mode.n, mode.laguerre_order, z * z)
    return out[()] if z.ndim == 0 else out


def znojil_jet(mode: FullLineMode, z):
    """``psi`` and ``d2 psi / dz2`` with analytic derivatives.

    Writes ``psi = f(z) P(z**2)`` with ``f = z**a exp(-z**2/2)``; the Laguerre
    derivatives are ``P' = -L_{n-1}^{b+1}`` and ``P'' = L_{n-2}^{b+2}``.
    """
    z = np.asarray(z, dtype=np.complex128)
    a, b, n = mode.exponent, mode.laguerre_order, mode.n
    u = z * z
    f = _power(z, a) * np.exp(-u / 2)
    P = laguerre(n, b, u)
    P1 = -laguerre(n - 1, b + 1, u) if n >= 1 else np.zeros_like(z)
    P2 = laguerre(n - 2, b + 2, u) if n >= 2 else np.zeros_like(z)
    lf = a / z - z  # f'/f
    f1 = f * lf
    f2 = f * (lf * lf - a / u - 1.0)
    psi = f * P
    d2 = f2 * P + 4.0 * z * f1 * P1 + f * (2.0 * P1 + 4.0 * u * P2)
    return psi, d2


def eigen_residual(mode: FullLineMode, c, x_window=(-6.0, 6.0), points=1201,
                   method="analytic", h=1 / 256, energy=None):
    """``sup |-psi'' + (z**2 + g/z**2) psi - E psi| / max |psi|`` along ``z = x - i c``.

    ``method="fd"`` uses 6th-order central differences in ``x`` with spacing ``h``.
    ``energy`` overrides ``E_nq`` in the operator.
    """
    if not c > 0:
        raise DomainError("shift c must be positive (line must avoid z = 0)")
    x = np.linspace(x_window[0], x_window[1], int(points))
    z = x - 1j * c
    E = mode.energy if energy is None else float(energy)
    if method == "analytic":
        psi, d2 = znojil_jet(mode, z)
    elif method == "fd":
        offsets = np.arange(-3, 4) * h
        samples = znojil_psi(mode, z[:, None] + offsets[None, :])
        psi = samples[:, 3]
        d2 = samples @ FD6 / (h * h)
    else:
        raise ValueError(f"unknown method {method!r}")
    res = -d2 + (z * z + mode.g / (z * z)) * psi - E * psi
    return float(np.max(np.abs(res)) / np.max(np.abs(psi)))


def ladder(beta, nmax):
    """Sorted energies ``E_nq`` for ``n <= nmax`` and both quasi-parities."""
    return sorted(znojil_energy(n, q, beta) for n in range(nmax + 1) for q in (1, -1))
