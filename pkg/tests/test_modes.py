import io
import json
import math
from dataclasses import replace

import mpmath as mp
import numpy as np
import pytest

from ptbox.errors import BranchError, DomainError
from ptbox.modes import (
    ConjMode,
    GridField,
    ShiftConfig,
    box_length,
    continued_conjugate_at,
    density,
    density_closed,
    density_closed_half,
    eigen_residual_reduced,
    norm_integral,
    normalize,
    order_from_coupling,
    psi_at,
    psi_jet,
    quantize,
    read_grid_csv,
    reduced_mode,
    sample_grid,
    sine_form,
    sine_form_scale,
    wall_density,
    wall_report,
    wavefunction,
)
from ptbox.specfun import bessel_j
from ptbox.trapdyn import constant, solve_scale, static_schedule

PI2 = math.pi**2


@pytest.fixture(scope="module")
def box():
    return static_schedule(1.0, 0.5)


@pytest.fixture(scope="module")
def wall():
    return solve_scale(constant(1.0), 1.0, 0.0, 0.5)


def test_order_from_coupling():
    assert order_from_coupling(0.0) == 0.5
    assert order_from_coupling(2.0) == 1.5
    assert order_from_coupling(-0.25) == 0.0
    with pytest.raises(DomainError, match="g below -1/4"):
        order_from_coupling(-0.5)


def test_free_box_energies():
    modes = quantize(0.0, 3)
    assert [m.E for m in modes] == pytest.approx([PI2, 4 * PI2, 9 * PI2], rel=1e-13)
    assert [m.k for m in modes] == [1, 2, 3]


@pytest.mark.parametrize("g", [0.0, 2.0, 6.0])
def test_energies_are_squared_zeros(g):
    for m in quantize(g, 5):
        assert abs(bessel_j(m.nu, math.sqrt(m.E))) < 1e-10


def test_quantize_rejects_bad_count():
    with pytest.raises(DomainError):
        quantize(0.0, 0)


def test_reduced_half_order_value(oracle):
    m = quantize(0.0, 1)[0]
    ref = float(oracle["reduced_half_at_half"])
    assert abs(reduced_mode(m, 0.5) - ref) < 1e-14
    assert ref == pytest.approx(math.sqrt(2) / math.pi, rel=1e-14)


def test_reduced_mode_branch_cut():
    with pytest.raises(BranchError):
        reduced_mode(quantize(0.0, 1)[0], -0.5)


@pytest.mark.parametrize("g", [0.0, 2.0, 6.0])
def test_reduced_eigen_relation(g):
    q = np.linspace(0.05, 0.95, 91)
    for m in quantize(g, 3):
        assert eigen_residual_reduced(m, q) < 1e-10
        assert eigen_residual_reduced(m, q, method="fd", h=1 / 256) < 1e-6


def test_reduced_eigen_relation_detects_wrong_energy():
    m = quantize(2.0, 1)[0]
    q = np.linspace(0.05, 0.95, 91)
    assert eigen_residual_reduced(m, q, energy=m.E + 0.5) > 0.1


@pytest.mark.parametrize("g", [0.0, 2.0, 6.0])
def test_walls_vanish(g, wall):
    for m in quantize(g, 5):
        for t in (0.0, 0.4):
            n = normalize(m, wall, ShiftConfig(0.0), t)
            L = float(wall.length(t))
            assert np.max(abs(psi_at(n, wall, t, np.array([0.0, L])))) < 1e-12


def test_normalized_free_box_is_sine():
    for L in (1.0, 2.0):
        ts = static_schedule(L, 0.5)
        m = normalize(quantize(0.0, 1)[0], ts, ShiftConfig(0.0), 0.0)
        x = np.linspace(0, L, 101)
        psi = wavefunction(m, ts, ShiftConfig(0.0), 0.0, x)
        assert np.max(abs(psi - math.sqrt(2 / L) * np.sin(math.pi * x / L))) < 1e-12


def test_normalize_is_idempotent(wall):
    shift = ShiftConfig(0.1)
    m = normalize(quantize(2.0, 1)[0], wall, shift, 0.2)
    assert normalize(m, wall, shift, 0.2).N == m.N
    assert norm_integral(m, wall, shift, 0.2) == pytest.approx(1.0, abs=1e-12)


def test_time_evolution_preserves_norm_on_real_line(wall):
    m = normalize(quantize(0.0, 2)[0], wall, ShiftConfig(0.0), 0.0)
    for t in (0.1, 0.3, 0.45):
        assert norm_integral(m, wall, ShiftConfig(0.0), t) == pytest.approx(1.0, abs=1e-11)


def test_sine_closed_form_matches_product():
    x = np.linspace(0, 1, 1000)
    for c in (0.0, 0.1, 0.5, -0.3):
        prod = np.abs(sine_form(PI2, 1.0, c, x)) ** 2
        assert np.max(abs(density_closed_half(PI2, 1.0, c, x) - prod)) <= 1e-12


def test_bessel_profile_is_scaled_sine_profile():
    m = quantize(0.0, 1)[0]
    x = np.linspace(0.0, 1.0, 201)
    for c in (0.1, 0.5):
        bessel = reduced_mode(m, x - 1j * c)
        assert np.max(abs(bessel - sine_form_scale(m.E) * sine_form(m.E, 1.0, c, x))) < 1e-14


def test_wall_density_values(oracle, box):
    x = np.array([0.0, 1.0])
    sine = float(oracle["wall_density_sine"])
    assert np.max(abs(np.abs(sine_form(PI2, 1.0, 0.1, x)) ** 2 - sine)) < 1e-15
    assert sine == pytest.approx(6.579e-3, abs=1e-6)
    raw = wall_density(quantize(0.0, 1)[0], box, ShiftConfig(0.1), 0.0)
    assert raw == pytest.approx((float(oracle["wall_density_bessel"]),) * 2, rel=1e-13)
    assert max(wall_density(quantize(0.0, 1)[0], box, ShiftConfig(0.0), 0.0)) <= 1e-12


def test_general_order_closed_density(box):
    x = np.linspace(0.0, 1.0, 1000)
    for g in (0.0, 2.0, 6.0):
        m = quantize(g, 2)[1]
        for c in (0.1, 0.4):
            direct = density(m, box, ShiftConfig(c), 0.0, x)
            assert np.max(abs(density_closed(m, 1.0, c, x) - direct)) <= 1e-12


def test_density_even_in_shift_for_static_box(box):
    x = np.linspace(0, 1, 1000)
    m = quantize(2.0, 1)[0]
    for c in (0.1, 0.5):
        d = density(m, box, ShiftConfig(c), 0.2, x) - density(m, box, ShiftConfig(-c), 0.2, x)
        assert np.max(abs(d)) <= 1e-13


def test_density_not_even_in_shift_on_moving_wall(wall):
    # the chirp exp(i alpha z^2 / 2) breaks c -> -c symmetry once alpha != 0
    x = np.linspace(0, float(wall.length(0.2)), 50)
    m = quantize(0.0, 1)[0]
    d = density(m, wall, ShiftConfig(0.3), 0.2, x) - density(m, wall, ShiftConfig(-0.3), 0.2, x)
    assert np.max(abs(d)) > 1e-3


def test_box_length_is_real(wall):
    assert box_length(wall, ShiftConfig(0.3), 0.2) == complex(float(wall.length(0.2)), 0.0)


def test_wall_report_keys(box):
    rep = wall_report(normalize(quantize(0.0, 1)[0], box, ShiftConfig(0.1), 0.0), box, ShiftConfig(0.1), 0.0)
    assert set(rep) == {
        "wall_density_left", "wall_density_right", "wall_density_unnormalized_left",
        "wall_density_unnormalized_right", "box_length_re", "box_length_im",
    }
    assert rep["wall_density_left"] > 0


def test_continued_conjugate_on_real_axis(wall):
    m = normalize(quantize(2.0, 1)[0], wall, ShiftConfig(0.0), 0.0)
    x = np.linspace(0.01, float(wall.length(0.3)), 40)
    assert np.max(abs(continued_conjugate_at(m, wall, 0.3, x) - np.conj(psi_at(m, wall, 0.3, x)))) < 1e-15


def test_psi_jet_against_mpmath(wall):
    m = quantize(2.0, 1)[0]
    t, z0 = 0.3, 0.4 - 0.1j
    L = float(wall.length(t))
    alpha = float(wall.alpha_at(t))

    def psi(z):
        return complex(psi_at(m, wall, t, complex(z)))

    psi_, dz, dzz, _ = psi_jet(m, wall, t, np.array([z0]))
    mp.mp.dps = 30
    k = mp.sqrt(m.E)

    def f(z):
        return mp.exp(1j * alpha * z * z / 2) * mp.sqrt(z / L) * mp.besselj(m.nu, k * z / L)

    phase = psi(z0) / complex(f(mp.mpc(z0)))
    assert abs(dz[0] - phase * complex(mp.diff(f, mp.mpc(z0), 1))) < 1e-11
    assert abs(dzz[0] - phase * complex(mp.diff(f, mp.mpc(z0), 2))) < 1e-10


def test_psi_time_derivative(wall):
    m = normalize(quantize(0.0, 1)[0], wall, ShiftConfig(0.0), 0.0)
    z = np.array([0.3 - 0.1j, 0.6 + 0.05j])
    h = 1e-5
    fd = (psi_at(m, wall, 0.3 + h, z) - psi_at(m, wall, 0.3 - h, z)) / (2 * h)
    assert np.max(abs(psi_jet(m, wall, 0.3, z)[3] - fd)) < 1e-6


def test_shift_config_accepts_string():
    assert ShiftConfig(0.1, "continued_conjugate").conj_mode is ConjMode.CONTINUED_CONJUGATE
    with pytest.raises(DomainError):
        ShiftConfig(math.inf)


def test_grid_field_round_trips(wall):
    m = normalize(quantize(2.0, 1)[0], wall, ShiftConfig(0.1), 0.2)
    field = sample_grid(m, wall, ShiftConfig(0.1), 0.2, np.linspace(0, float(wall.length(0.2)), 11))
    text = field.to_csv()
    back = read_grid_csv(io.StringIO(text))
    assert np.array_equal(back.values, field.values)
    assert back.meta["E"] == m.E and back.shift == 0.1
    assert back.to_csv() == text
    doc = json.loads(field.to_json())
    assert doc["re_psi"] == field.values.real.tolist()


def test_grid_field_validation():
    with pytest.raises(DomainError):
        GridField(np.array([0.0, 0.0]), 0.0, np.array([1.0, 2.0]))
    with pytest.raises(DomainError):
        GridField(np.array([0.0, 1.0]), 0.0, np.array([1.0]))
    with pytest.raises(DomainError):
        GridField(np.array([0.0, 1.0]), 0.0, np.array([1.0, np.nan]))


def test_mode_replace_keeps_energy(box, wall):
    m = quantize(6.0, 2)[1]
    a = normalize(m, box, ShiftConfig(0.0), 0.3)
    b = normalize(m, wall, ShiftConfig(0.0), 0.3)
    assert a.E == b.E == m.E
    assert replace(a, N=1.0).E == m.E
