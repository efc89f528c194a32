"""Bessel functions of the first kind, associated Laguerre polynomials and Bessel zeros.

Evaluation of ``J_nu(z)`` (real order ``nu >= 0``, complex ``z``) uses three routes:

* half-integer orders ``nu = n + 1/2`` use the terminating Hankel sum
  (spherical-Bessel reduction) whenever it is free of cancellation,
  i.e. for ``n == 0`` or ``|z| >= HALF_INTEGER_MIN_ARG * n``;
* ``|z| <= SERIES_MAX_ARG``: ascending power series accumulated in extended
  precision (``np.clongdouble``), so that the cancellation in the alternating
  sum on the real axis stays below 1e-12 relative to the local amplitude;
* ``|z| > SERIES_MAX_ARG`` and ``nu <= ASYMPTOTIC_MAX_ORDER``: Hankel
  asymptotic expansion truncated at its smallest term; the left half-plane is
  mapped to the right one with ``J_nu(z) = exp(+-i pi nu) J_nu(-z)``;
* ``|z| > SERIES_MAX_ARG`` and larger orders below ``|z|``: forward recurrence
  in the order, seeded by the asymptotic values at ``nu - floor(nu)`` and
  ``nu - floor(nu) + 1`` (stable while ``nu < |z|``);
* otherwise (``nu >= |z| > SERIES_MAX_ARG``) the extended-precision series,
  whose accuracy degrades there; no use in this package reaches that region.

The principal branch of ``z**nu`` is used throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchError, ConvergenceError, DomainError

SERIES_MAX_ARG = 17.0
ASYMPTOTIC_MAX_ORDER = 2.0
HALF_INTEGER_MIN_ARG = 1.0
MAX_ARG = 1.0e4
_MAX_SERIES_TERMS = 400
_MAX_ASYMPTOTIC_TERMS = 120


def _check_order(nu):
    nu = float(nu)
    if not math.isfinite(nu) or nu < 0:
        raise DomainError(f"Bessel order must be finite and >= 0, got {nu!r}")
    return nu


def _half_integer_index(nu):
    """Return n if nu == n + 1/2, else None."""
    two_nu = 2.0 * nu
    if two_nu == round(two_nu) and int(round(two_nu)) % 2 == 1:
        return (int(round(two_nu)) - 1) // 2
    return None


def _series(nu, z):
    """Ascending series, summed in extended precision."""
    zl = z.astype(np.clongdouble)
    w = -(zl * zl) / 4
    term = np.ones_like(zl)
    total = np.ones_like(zl)
    nul = np.longdouble(nu)
    eps = np.finfo(np.longdouble).eps
    # terms grow until k ~ |z|/2; only test convergence past that point
    k_min = int(np.max(np.abs(z), initial=0.0) / 2) + 2
    for k in range(1, _MAX_SERIES_TERMS):
        term = term * w / (k * (nul + k))
        total = total + term
        if k > k_min and np.all(np.abs(term) <= eps * np.abs(total)):
            break
    else:
        raise ConvergenceError("Bessel series exceeded its term budget")
    # (z/2)**nu / Gamma(nu+1) in double precision: purely multiplicative
    pref = np.power(z / 2, nu) / math.gamma(nu + 1) if nu != 0 else 1.0
    return pref * total.astype(np.complex128)


def _asymptotic_coefficients(nu, count):
    mu = 4.0 * nu * nu
    a = [1.0]
    for k in range(1, count):
        a.append(a[-1] * (mu - (2 * k - 1) ** 2) / (k * 8.0))
    return a


def _hankel_pq(nu, z, terminating=False):
    """P and Q sums of the Hankel expansion, truncated at the smallest term."""
    count = _MAX_ASYMPTOTIC_TERMS
    if terminating:
        count = int(round(nu - 0.5)) + 2
    a = _asymptotic_coefficients(nu, count)
    p = np.zeros_like(z)
    q = np.zeros_like(z)
    inv = 1.0 / z
    power = np.ones_like(z)
    prev = np.full(z.shape, np.inf)
    active = np.ones(z.shape, dtype=bool)
    for k in range(count):
        term = a[k] * power
        mag = np.abs(term)
        if not terminating:
            # stop each element at its smallest term, or once negligible
            active &= (mag < prev) & (prev > 1e-17)
        t = np.where(active, term, 0)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p = p + sign * t
        else:
            q = q + sign * t
        prev = np.where(active, mag, prev)
        power = power * inv
        if a[k] == 0.0 or not np.any(active):
            break
    return p, q


def _hankel_form(nu, z, terminating=False):
    p, q = _hankel_pq(nu, z, terminating)
    chi = z - (0.5 * nu + 0.25) * np.pi
    return np.sqrt(2.0 / np.pi) / np.sqrt(z) * (p * np.cos(chi) - q * np.sin(chi))


def _asymptotic(nu, z):
    out = np.empty_like(z)
    right = z.real >= 0
    out[right] = _hankel_form(nu, z[right])
    left = ~right
    if np.any(left):
        zl = z[left]
        # arg z in (pi/2, pi] -> z = (-z) e^{i pi}; arg z in (-pi, -pi/2) -> e^{-i pi}
        upper = np.angle(zl) > 0
        phase = np.where(upper, np.exp(1j * np.pi * nu), np.exp(-1j * np.pi * nu))
        out[left] = phase * _hankel_form(nu, -zl)
    return out


def _jv(nu, z):
    """J_nu on a complex ndarray without argument checking."""
    out = np.empty_like(z)
    r = np.abs(z)
    zero = r == 0
    out[zero] = 1.0 if nu == 0 else 0.0
    todo = ~zero
    n = _half_integer_index(nu)
    if n is not None:
        closed = todo if n == 0 else todo & (r >= HALF_INTEGER_MIN_ARG * n)
        if np.any(closed):
            out[closed] = _hankel_form(nu, z[closed], terminating=True)
        todo &= ~closed
    small = todo & (r <= SERIES_MAX_ARG)
    if np.any(small):
        out[small] = _series(nu, z[small])
    large = todo & ~small
    if nu > ASYMPTOTIC_MAX_ORDER:
        slow = large & (r <= nu)
        if np.any(slow):
            out[slow] = _series(nu, z[slow])
        rec = large & ~slow
        if np.any(rec):
            out[rec] = _forward_recurrence(nu, z[rec])
    elif np.any(large):
        out[large] = _asymptotic(nu, z[large])
    return out


def _forward_recurrence(nu, z):
    base = nu - math.floor(nu)
    prev = _asymptotic(base, z)
    cur = _asymptotic(base + 1, z)
    order = base + 1
    while order < nu - 0.5:
        prev, cur = cur, 2 * order / z * cur - prev
        order += 1
    return cur


def bessel_j(nu, z, strict_branch=False):
    """Bessel function of the first kind ``J_nu(z)``.

    Parameters
    ----------
    nu : float
        Real order, ``nu >= 0``.
    z : complex or array_like of complex
        Argument, ``|z| <= 1e4``. The principal branch of ``z**nu`` is used.
    strict_branch : bool
        If True, raise :class:`BranchError` for non-integer ``nu`` and ``z``
        on the closed negative real axis.

    Returns
    -------
    complex or ndarray of complex
    """
    nu = _check_order(nu)
    za = np.asarray(z, dtype=np.complex128)
    scalar = za.ndim == 0
    za = np.atleast_1d(za)
    if not np.all(np.isfinite(za)):
        raise DomainError("Bessel argument must be finite")
    if np.any(np.abs(za) > MAX_ARG):
        raise DomainError(f"|z| > {MAX_ARG:g} is not supported")
    if strict_branch and nu != int(nu):
        if np.any((za.imag == 0) & (za.real < 0)):
            raise BranchError("z on the negative real axis (branch cut of z**nu)")
    out = _jv(nu, za)
    return complex(out[0]) if scalar else out


def bessel_j_derivative(nu, z):
    """``J_nu'(z) = (nu/z) J_nu(z) - J_{nu+1}(z)``; z must be nonzero."""
    za = np.asarray(z, dtype=np.complex128)
    return nu / za * bessel_j(nu, za) - bessel_j(nu + 1, za)


def half_integer_closed_form(nu, z):
    """Terminating Hankel sum for ``nu = n + 1/2`` (no cancellation guard).

    Kept separate from :func:`bessel_j` so it can serve as a cross-check of the
    series and asymptotic routes.
    """
    nu = _check_order(nu)
    if _half_integer_index(nu) is None:
        raise DomainError(f"order {nu} is not a half-integer")
    za = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    return _hankel_form(nu, za, terminating=True)


def laguerre(n, beta, u):
    """Associated Laguerre polynomial ``L_n^beta(u)`` by the three-term recurrence.

    ``beta`` may be any real number (negative values included). ``u`` may be a
    complex scalar or array.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    n = int(n)
    beta = float(beta)
    ua = np.asarray(u, dtype=np.complex128)
    if not math.isfinite(beta) or not np.all(np.isfinite(ua)):
        raise DomainError("laguerre arguments must be finite")
    prev = np.ones_like(ua)
    if n == 0:
        return prev[()] if ua.ndim == 0 else prev
    cur = 1.0 + beta - ua
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + beta - ua) * cur - (k + beta) * prev) / (k + 1)
    return cur[()] if ua.ndim == 0 else cur


@dataclass(frozen=True)
class RootTable:
    """Leading positive zeros of ``J_nu``."""

    nu: float
    roots: np.ndarray
    refine_tol: float

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, i):
        return float(self.roots[i])


def _real_j(nu, x):
    return np.real(bessel_j(nu, np.asarray(x, dtype=float)))


def _refine(nu, a, b, tol, max_iter=100):
    """Safeguarded Newton iteration inside sign-change brackets ``[a, b]`` (arrays)."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    fa = _real_j(nu, a)
    x = 0.5 * (a + b)
    done = np.zeros(x.shape, dtype=bool)
    for _ in range(max_iter):
        f = _real_j(nu, x)
        same = np.sign(f) == np.sign(fa)
        a = np.where(same, x, a)
        fa = np.where(same, f, fa)
        b = np.where(same, b, x)
        df = np.real(nu / x * bessel_j(nu, x) - bessel_j(nu + 1, x))
        with np.errstate(divide="ignore", invalid="ignore"):
            x_new = x - f / df
        x_new = np.where((x_new > a) & (x_new < b), x_new, 0.5 * (a + b))
        x_new = np.where(f == 0.0, x, x_new)
        scale = np.maximum(1.0, np.abs(x_new))
        settled = (np.abs(x_new - x) <= 1e-15 * scale) | (b - a <= 1e-15 * scale)
        x = np.where(done, x, x_new)
        if np.all(settled | done):
            # confirm a sign change across an interval narrower than tol * scale
            h = tol * scale / 4
            lo, hi = _real_j(nu, x - h), _real_j(nu, x + h)
            ok = (np.abs(_real_j(nu, x)) < tol) & ((lo * hi) <= 0)
            if np.all(ok):
                return x
            done = ok
    bad = int(np.argmin(done)) if x.ndim else 0
    raise ConvergenceError(
        f"root refinement for J_{nu:g} did not converge",
        bracket=(float(np.atleast_1d(a)[bad]), float(np.atleast_1d(b)[bad])),
    )


def bessel_roots(nu, count, tol=1e-12):
    """First ``count`` positive zeros ``j_{nu,1} < j_{nu,2} < ...`` of ``J_nu``.

    Zeros are bracketed by sign changes on a scan with step 0.5 (consecutive
    zeros of ``J_nu``, ``nu >= 0``, are more than 2 apart and the first lies
    beyond ``nu``, so each bracket holds exactly one zero), then refined by
    safeguarded Newton steps until ``|J_nu(r)| < tol`` and a sign change is
    confirmed across an interval of width ``tol * max(1, r) / 2``.

    Raises
    ------
    ConvergenceError
        With the offending bracket if refinement stalls.
    """
    nu = _check_order(nu)
    if int(count) != count or count < 1 or count > 1000:
        raise DomainError(f"count must be an integer in [1, 1000], got {count!r}")
    count = int(count)
    step = 0.5
    lo_ends, hi_ends = [], []
    start = max(nu, 1e-3)
    # McMahon: j_{nu,k} ~ pi (k + nu/2 - 1/4); scan a little beyond
    stop = math.pi * (count + 0.5 * nu + 1.0) + 2.0
    while len(lo_ends) < count:
        x = np.arange(start, stop + step, step)
        f = _real_j(nu, x)
        idx = np.nonzero(np.sign(f[:-1]) * np.sign(f[1:]) <= 0)[0]
        for i in idx:
            if lo_ends and x[i] <= lo_ends[-1] + step:
                continue
            lo_ends.append(x[i])
            hi_ends.append(x[i + 1])
        start, stop = x[-1], x[-1] + math.pi * (count - len(lo_ends) + 2)
    roots = _refine(nu, lo_ends[:count], hi_ends[:count], tol)
    return RootTable(nu=nu, roots=roots, refine_tol=tol)
