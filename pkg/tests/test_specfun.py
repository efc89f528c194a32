import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ptbox.errors import BranchError, DomainError
from ptbox.specfun import (
    bessel_j,
    bessel_j_derivative,
    bessel_roots,
    half_integer_closed_form,
    laguerre,
)


def as_complex(pair):
    return complex(float(pair[0]), float(pair[1]))


def test_bessel_matches_frozen_oracle(oracle):
    for row in oracle["bessel"]:
        z = complex(*row["z"])
        ref = as_complex(row["J"])
        got = bessel_j(row["nu"], z)
        # relative to the local envelope sqrt(2/(pi |z|)) e^{|Im z|} for large |z|
        envelope = max(abs(ref), math.sqrt(2 / (math.pi * max(abs(z), 1.0))) * math.exp(abs(z.imag)) * 1e-3)
        assert abs(got - ref) / envelope < 1e-11, (row["nu"], z, got, ref)


def test_scalar_and_array_shapes():
    assert isinstance(bessel_j(1.0, 2.0), complex)
    out = bessel_j(1.0, np.array([[1.0, 2.0], [3.0, 4.0]]))
    assert out.shape == (2, 2)


def test_order_zero_at_origin():
    assert bessel_j(0.0, 0.0) == 1.0
    assert bessel_j(2.5, 0.0) == 0.0


def test_negative_order_and_huge_argument_rejected():
    with pytest.raises(DomainError):
        bessel_j(-0.5, 1.0)
    with pytest.raises(DomainError):
        bessel_j(1.0, 2e4)


def test_strict_branch_flags_negative_axis():
    with pytest.raises(BranchError):
        bessel_j(0.5, -2.0, strict_branch=True)
    bessel_j(1.0, -2.0, strict_branch=True)  # integer order is single valued


def test_half_order_elementary_form_on_complex_grid():
    axis = np.linspace(-10, 10, 41)
    z = (axis[:, None] + 1j * axis[None, :]).ravel()
    z = z[(abs(z) <= 10) & (z != 0)]
    closed = np.sqrt(2 / (np.pi * z)) * np.sin(z)
    assert np.max(abs(bessel_j(0.5, z) - closed) / abs(closed)) < 1e-12


def test_half_integer_sum_agrees_with_general_routes():
    z = np.array([3.0 + 1j, 9.0 - 2j, 25.0 + 0.5j])
    for nu in (1.5, 2.5, 4.5):
        ref = np.array([complex(mp.besselj(nu, mp.mpc(v))) for v in z])
        assert np.max(abs(half_integer_closed_form(nu, z) - ref) / abs(ref)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(
    nu=st.floats(1.0, 8.0),
    r=st.floats(0.3, 60.0),
    phi=st.floats(-1.5, 1.5),
)
def test_three_term_recurrence(nu, r, phi):
    z = r * complex(math.cos(phi), math.sin(phi))
    jm, j0, jp = (bessel_j(nu + d, z) for d in (-1, 0, 1))
    scale = max(abs(jm), abs(jp), abs(2 * nu / z * j0))
    assert abs(jm + jp - 2 * nu / z * j0) / scale < 1e-10


def test_derivative_against_mpmath():
    for nu, z in [(0.5, 2 + 1j), (1.5, 7 - 0.5j), (3.0, 20 + 2j)]:
        ref = complex(mp.besselj(nu, mp.mpc(z), derivative=1))
        assert abs(bessel_j_derivative(nu, z) - ref) < 1e-12 * max(1, abs(ref))


def test_zeros_match_oracle(oracle):
    for key, vals in oracle["zeros"].items():
        if key == "j0_1000":
            continue
        roots = bessel_roots(float(key), 5).roots
        assert np.max(abs(roots - np.array([float(v) for v in vals]))) < 1e-12


def test_thousandth_zero(oracle):
    table = bessel_roots(0.0, 1000)
    assert len(table) == 1000
    assert abs(table[999] - float(oracle["zeros"]["j0_1000"])) < 1e-10
    assert np.all(np.diff(table.roots) > 0)


def test_half_order_zeros_are_multiples_of_pi():
    roots = bessel_roots(0.5, 20).roots
    assert np.max(abs(roots - np.pi * np.arange(1, 21))) < 1e-10


def test_zero_count_limits():
    with pytest.raises(DomainError):
        bessel_roots(0.0, 0)
    with pytest.raises(DomainError):
        bessel_roots(0.0, 1001)


def test_laguerre_matches_sympy(oracle):
    for row in oracle["laguerre"]:
        got = laguerre(row["n"], row["beta"], complex(*row["u"]))
        ref = complex(*row["L"])
        assert abs(got - ref) < 1e-12 * max(1.0, abs(ref))


def test_laguerre_rejects_bad_degree():
    with pytest.raises(DomainError):
        laguerre(-1, 0.0, 1.0)
    with pytest.raises(DomainError):
        laguerre(1.5, 0.0, 1.0)
