"""Composite Gauss-Legendre quadrature for smooth complex integrands on [a, b]."""

from __future__ import annotations

import math

import numpy as np

from .errors import NonConvergence

NODES_PER_PANEL = 16
_X, _W = np.polynomial.legendre.leggauss(NODES_PER_PANEL)


def panel_nodes(a, b, panels):
    """Quadrature nodes and weights for ``panels`` equal panels on [a, b]."""
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * _X[None, :]).ravel()
    w = (half[:, None] * _W[None, :]).ravel()
    return x, w


def fixed(fn, a, b, panels):
    """Single composite rule; sums with ``math.fsum`` so the result is order-independent."""
    x, w = panel_nodes(a, b, panels)
    vals = np.asarray(fn(x), dtype=np.complex128) * w
    return complex(math.fsum(vals.real), math.fsum(vals.imag))


def integrate(fn, a, b, tol=1e-10, panels=2, max_panels=4096):
    """Integrate ``fn`` over [a, b], doubling the panel count until two
    successive estimates differ by less than ``tol``.

    Returns ``(value, panels)``.

    Raises
    ------
    NonConvergence
        With the last two estimates once ``max_panels`` is exceeded.
    """
    prev = fixed(fn, a, b, panels)
    while panels < max_panels:
        panels *= 2
        cur = fixed(fn, a, b, panels)
        if abs(cur - prev) < tol:
            return cur, panels
        prev = cur
    raise NonConvergence(
        f"quadrature did not settle to {tol:g} with {panels} panels", bracket=(prev, cur)
    )


def inner(f, g, L, tol=1e-10, a=0.0):
    """``int_a^L conj(f(x)) g(x) dx`` for callables sampling two fields."""
    return integrate(lambda x: np.conj(f(x)) * g(x), a, L, tol)[0]


def pairing(bra, ket, L, tol=1e-10, a=0.0):
    """``int_a^L bra(x) ket(x) dx`` with no conjugation applied."""
    return integrate(lambda x: bra(x) * ket(x), a, L, tol)[0]
