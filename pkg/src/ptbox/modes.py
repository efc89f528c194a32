"""Trapped Bessel modes, the time-dependent wavefunction and its complex-shifted form.

A mode of coupling ``g`` has Bessel order ``nu = sqrt(1 + 4 g) / 2`` and
separation constant ``E = j_{nu,k}**2``. On a schedule ``L(t), alpha(t)`` the
wavefunction at the complex point ``z`` is

    Psi(z, t) = N exp(i alpha z**2 / 2 - i theta(t)) L**-1/2 R(z / L),
    R(s) = s**(1/2) J_nu(sqrt(E) s),   theta(t) = int_0^t E / L**2,

and the shifted field is sampled along ``z = x - i c`` for real ``x``.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import quadrature
from .errors import BranchError, DomainError
from .specfun import bessel_j, bessel_roots
from .trapdyn import TrapSchedule, phase_integral

# 6th-order central second difference
FD6 = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])


class ConjMode(enum.Enum):
    """How the bra ``Psi*`` is formed on the shifted line."""

    SHIFT_THEN_CONJUGATE = "shift_then_conjugate"
    CONTINUED_CONJUGATE = "continued_conjugate"


@dataclass(frozen=True)
class ShiftConfig:
    c: float = 0.0
    conj_mode: ConjMode = ConjMode.SHIFT_THEN_CONJUGATE

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise DomainError("shift c must be finite")
        if not isinstance(self.conj_mode, ConjMode):
            object.__setattr__(self, "conj_mode", ConjMode(self.conj_mode))


@dataclass(frozen=True)
class ModeSpec:
    """One quantized trapped mode; ``N`` is the normalization constant."""

    g: float
    nu: float
    k: int
    E: float
    N: complex = 1.0

    @property
    def ident(self) -> str:
        return f"g={self.g:.17g},k={self.k}"


def order_from_coupling(g: float) -> float:
    """Bessel order ``sqrt(1 + 4 g) / 2``; requires ``g >= -1/4``."""
    g = float(g)
    if not math.isfinite(g) or g < -0.25:
        raise DomainError(f"g below -1/4 (got {g:.17g}): Bessel order would be imaginary")
    return 0.5 * math.sqrt(1.0 + 4.0 * g)


def quantize(g: float, count: int) -> list[ModeSpec]:
    """The first ``count`` modes with ``E_k = j_{nu,k}**2`` (unit normalization constant)."""
    nu = order_from_coupling(g)
    if int(count) != count or count < 1:
        raise DomainError("count must be a positive integer")
    roots = bessel_roots(nu, int(count)).roots
    return [ModeSpec(float(g), nu, k + 1, float(r * r)) for k, r in enumerate(roots)]


def _branch_check(s):
    if np.any((s.imag == 0) & (s.real < 0)):
        raise BranchError("point on the branch cut of s**(1/2) (negative real axis)")


def reduced_mode(mode: ModeSpec, q):
    """``Phi(q) = q**(1/2) J_nu(sqrt(E) q)`` on the principal branch."""
    qa = np.asarray(q, dtype=np.complex128)
    _branch_check(qa)
    out = np.sqrt(qa) * bessel_j(mode.nu, math.sqrt(mode.E) * qa)
    return out[()] if qa.ndim == 0 else out


def reduced_jet(mode: ModeSpec, s):
    """``R(s)``, ``R'(s)``, ``R''(s)`` with derivatives from Bessel recurrences.

    Uses ``J' = (nu/w) J_nu - J_{nu+1}`` and
    ``J_{nu+1}' = J_nu - ((nu+1)/w) J_{nu+1}``; Bessel's equation itself is
    not used, so the reduced eigen-relation is a genuine check.
    """
    s = np.asarray(s, dtype=np.complex128)
    _branch_check(s)
    nu, k = mode.nu, math.sqrt(mode.E)
    w = k * s
    j0 = bessel_j(nu, w)
    j1 = bessel_j(nu + 1, w)
    d0 = nu / w * j0 - j1
    d1 = j0 - (nu + 1) / w * j1
    dd0 = -nu / (w * w) * j0 + nu / w * d0 - d1
    rs = np.sqrt(s)
    R = rs * j0
    R1 = 0.5 / rs * j0 + rs * k * d0
    R2 = -0.25 / (rs * s) * j0 + k / rs * d0 + rs * k * k * dd0
    return R, R1, R2


def eigen_residual_reduced(mode: ModeSpec, q, method="analytic", h=1 / 512, energy=None):
    """``sup |-Phi'' + (g/q**2) Phi - E Phi| / max |Phi|`` over the points ``q``.

    ``method`` is ``"analytic"`` (recurrence derivatives) or ``"fd"``
    (6th-order central differences with spacing ``h``). ``energy`` overrides
    the eigenvalue used in the operator (the field itself stays that of ``mode``).
    """
    q = np.asarray(q, dtype=float)
    E = mode.E if energy is None else float(energy)
    if method == "analytic":
        phi, _, d2 = reduced_jet(mode, q)
    elif method == "fd":
        offsets = np.arange(-3, 4) * h
        samples = reduced_mode(mode, q[:, None] + offsets[None, :])
        phi = samples[:, 3]
        d2 = samples @ FD6 / (h * h)
    else:
        raise ValueError(f"unknown method {method!r}")
    res = -d2 + (mode.g / q**2) * phi - E * phi
    return float(np.max(np.abs(res)) / np.max(np.abs(phi)))


def _frame(mode, ts, t):
    t = float(t)
    L = float(ts.length(t))
    alpha = float(ts.alpha_at(t))
    theta = phase_integral(ts, mode.E, t)
    return L, alpha, theta


def psi_at(mode: ModeSpec, ts: TrapSchedule, t: float, z):
    """Unshifted-form wavefunction evaluated at arbitrary complex ``z``."""
    z = np.asarray(z, dtype=np.complex128)
    L, alpha, theta = _frame(mode, ts, t)
    s = z / L
    _branch_check(s)
    R = np.sqrt(s) * bessel_j(mode.nu, math.sqrt(mode.E) * s)
    pref = mode.N * np.exp(1j * alpha * z * z / 2 - 1j * theta) / math.sqrt(L)
    out = pref * R
    return out[()] if z.ndim == 0 else out


def continued_conjugate_at(mode: ModeSpec, ts: TrapSchedule, t: float, z):
    """Analytic continuation of ``conj(Psi(x, t))`` from the real axis to ``z``.

    ``R`` has real Taylor coefficients about the real axis, so the continued
    conjugate is ``conj(N) exp(-i alpha z**2/2 + i theta) L**-1/2 R(z/L)``.
    """
    z = np.asarray(z, dtype=np.complex128)
    L, alpha, theta = _frame(mode, ts, t)
    s = z / L
    _branch_check(s)
    R = np.sqrt(s) * bessel_j(mode.nu, math.sqrt(mode.E) * s)
    pref = np.conj(mode.N) * np.exp(-1j * alpha * z * z / 2 + 1j * theta) / math.sqrt(L)
    return pref * R


def psi_jet(mode: ModeSpec, ts: TrapSchedule, t: float, z):
    """``Psi``, ``dPsi/dz``, ``d2Psi/dz2`` and ``dPsi/dt`` at complex ``z``.

    All derivatives are analytic: chain rule through ``alpha``, ``L`` and the
    phase, with ``alpha'`` and ``L'`` taken from the schedule's dense output.
    """
    z = np.asarray(z, dtype=np.complex128)
    L, alpha, theta = _frame(mode, ts, t)
    Ldot = float(ts.velocity(t))
    alpha_dot = float(ts.alpha_rate(t))
    R, R1, R2 = reduced_jet(mode, z / L)
    P = mode.N * np.exp(1j * alpha * z * z / 2 - 1j * theta) / math.sqrt(L)
    psi = P * R
    psi_z = P * (1j * alpha * z * R + R1 / L)
    psi_zz = P * (
        1j * alpha * R - alpha**2 * z * z * R + 2j * alpha * z * R1 / L + R2 / L**2
    )
    psi_t = P * (
        (0.5j * alpha_dot * z * z - 1j * mode.E / L**2 - Ldot / (2 * L)) * R
        - R1 * z * Ldot / L**2
    )
    return psi, psi_z, psi_zz, psi_t


def wavefunction(mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float, x):
    """Shifted wavefunction ``Psi(x - i c, t)``; ``c = 0`` gives the Hermitian one."""
    x = np.asarray(x)
    return psi_at(mode, ts, t, x - 1j * shift.c)


def density(mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float, x):
    """``Psi conj(Psi)`` at ``z = x - i c``, from the direct product."""
    psi = np.asarray(wavefunction(mode, ts, shift, t, x))
    out = psi.real**2 + psi.imag**2
    return out[()] if out.ndim == 0 else out


def sine_form(E, L, c, x):
    """Half-order profile in sine normalization, ``sqrt(2/(E pi)) sin(sqrt(E) (x - ic)/L)``.

    The Bessel profile ``s**(1/2) J_{1/2}(sqrt(E) s)`` equals ``E**(1/4)`` times
    this (see :func:`sine_form_scale`); the two differ only by normalization.
    """
    z = np.asarray(x, dtype=float) - 1j * c
    return math.sqrt(2.0 / (E * math.pi)) * np.sin(math.sqrt(E) * z / L)


def sine_form_scale(E):
    """Ratio of the Bessel half-order profile to :func:`sine_form`."""
    return E**0.25


def density_closed_half(E, L, c, x):
    """Closed form of ``|sine_form|**2`` on the shifted line:
    ``(cosh(2 sqrt(E) c / L) - cos(2 sqrt(E) x / L)) / (E pi)``."""
    if not (E > 0 and L > 0):
        raise DomainError("E and L must be positive")
    k = 2.0 * math.sqrt(E) / L
    return (np.cosh(k * c) - np.cos(k * np.asarray(x, dtype=float))) / (E * math.pi)


def density_closed(mode: ModeSpec, L, c, x):
    """``|R_nu|**2 = (sqrt(x**2 + c**2) / L) J_nu(k (x - ic)/L) J_nu(k (x + ic)/L)``."""
    x = np.asarray(x, dtype=float)
    k = math.sqrt(mode.E)
    jm = bessel_j(mode.nu, k * (x - 1j * c) / L)
    jp = bessel_j(mode.nu, k * (x + 1j * c) / L)
    return (np.sqrt(x * x + c * c) / L * jm * jp).real


def box_length(ts: TrapSchedule, shift: ShiftConfig, t: float) -> complex:
    """Distance between the complex wall points ``(L + ic) - (0 + ic)``."""
    L = float(ts.length(t))
    return complex(L, shift.c) - complex(0.0, shift.c)


def wall_density(mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float):
    """``(|Psi(0 - ic)|**2, |Psi(L - ic)|**2)`` at the real wall positions."""
    L = float(ts.length(t))
    left, right = density(mode, ts, shift, t, np.array([0.0, L]))
    return float(left), float(right)


def norm_integral(mode, ts, shift, t, tol=1e-10):
    """``int_0^L |Psi(x - ic)|**2 dx`` by composite Gauss-Legendre."""
    L = float(ts.length(t))
    f = lambda x: wavefunction(mode, ts, shift, t, x)
    return quadrature.inner(f, f, L, tol).real


def normalize(mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float, tol=1e-12):
    """Return ``mode`` with real positive ``N`` giving unit norm on [0, L(t)]."""
    base = replace(mode, N=1.0)
    I = norm_integral(base, ts, shift, t, tol)
    if not I > 0:
        raise DomainError("mode has zero norm on the sampling line")
    return replace(mode, N=1.0 / math.sqrt(I))


def wall_report(mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float) -> dict:
    """Wall densities for the given and unit normalization, plus the box length."""
    given = wall_density(mode, ts, shift, t)
    unnorm = wall_density(replace(mode, N=1.0), ts, shift, t)
    length = box_length(ts, shift, t)
    return {
        "wall_density_left": given[0],
        "wall_density_right": given[1],
        "wall_density_unnormalized_left": unnorm[0],
        "wall_density_unnormalized_right": unnorm[1],
        "box_length_re": length.real,
        "box_length_im": length.imag,
    }


def shifted_potential(omega2, g, c, x):
    """``omega2 (x - ic)**2 + g / (x - ic)**2``."""
    z = np.asarray(x) - 1j * c
    return omega2 * z * z + g / (z * z)


def _fmt(v):
    return f"{v:.17g}"


@dataclass(frozen=True, eq=False)
class GridField:
    """Complex samples of a field at ``z_i = x_i - i c``."""

    offsets: np.ndarray
    shift: float
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        x = np.asarray(self.offsets, dtype=float)
        v = np.asarray(self.values, dtype=np.complex128)
        if x.ndim != 1 or x.shape != v.shape:
            raise DomainError("offsets and values must be matching 1-D arrays")
        if np.any(np.diff(x) <= 0):
            raise DomainError("offsets must increase strictly")
        if not np.all(np.isfinite(v)):
            raise DomainError("field values must be finite")
        object.__setattr__(self, "offsets", x)
        object.__setattr__(self, "values", v)

    @property
    def density(self):
        return self.values.real**2 + self.values.imag**2

    HEADER_KEYS = ("t", "L", "c", "g", "k", "E")

    def header(self):
        return {k: self.meta.get(k, self.shift if k == "c" else None) for k in self.HEADER_KEYS}

    def to_csv(self, fh=None):
        """CSV with two ``#`` metadata lines (keys, values) then x, re_psi, im_psi, density."""
        buf = io.StringIO() if fh is None else fh
        head = self.header()
        buf.write("# " + ",".join(head) + "\n")
        buf.write("# " + ",".join("" if v is None else _fmt(v) for v in head.values()) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "re_psi", "im_psi", "density"])
        for x, v, d in zip(self.offsets, self.values, self.density):
            w.writerow([_fmt(x), _fmt(v.real), _fmt(v.imag), _fmt(d)])
        return buf.getvalue() if fh is None else None

    def to_dict(self):
        out = {k: v for k, v in self.header().items()}
        out.update(
            x=self.offsets.tolist(),
            re_psi=self.values.real.tolist(),
            im_psi=self.values.imag.tolist(),
            density=self.density.tolist(),
        )
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def read_grid_csv(fh) -> GridField:
    """Inverse of :meth:`GridField.to_csv`."""
    lines = fh.read().splitlines()
    keys = lines[0][2:].split(",")
    vals = lines[1][2:].split(",")
    meta = {k: (float(v) if v else None) for k, v in zip(keys, vals)}
    rows = list(csv.DictReader(lines[2:]))
    x = np.array([float(r["x"]) for r in rows])
    psi = np.array([complex(float(r["re_psi"]), float(r["im_psi"])) for r in rows])
    return GridField(x, meta.get("c") or 0.0, psi, meta)


def sample_grid(mode: ModeSpec, ts: TrapSchedule, shift: ShiftConfig, t: float, x) -> GridField:
    """Sample the shifted wavefunction on real abscissae ``x``."""
    x = np.asarray(x, dtype=float)
    vals = np.asarray(wavefunction(mode, ts, shift, t, x))
    meta = {
        "t": float(t),
        "L": float(ts.length(t)),
        "c": float(shift.c),
        "g": mode.g,
        "k": mode.k,
        "E": mode.E,
    }
    return GridField(x, float(shift.c), vals, meta)
