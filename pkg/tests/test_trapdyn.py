import io
import math

import numpy as np
import pytest

from ptbox.errors import DomainError, ToleranceFailure, WallCollapse, WindowError
from ptbox.trapdyn import (
    alpha_of,
    constant,
    from_table,
    gauge_factor,
    phase_integral,
    read_schedule_csv,
    riccati_residual,
    sinusoidal,
    solve_scale,
    static_schedule,
    zero,
)


@pytest.fixture(scope="module")
def cos_wall():
    return solve_scale(constant(1.0), 1.0, 0.0, 0.7)


def test_unit_frequency_gives_cos_2t(cos_wall):
    t = np.linspace(0, 0.7, 701)
    assert np.max(abs(cos_wall.length(t) - np.cos(2 * t))) < 1e-8
    assert np.max(abs(cos_wall.velocity(t) + 2 * np.sin(2 * t))) < 1e-8


def test_riccati_relation_along_trajectory(cos_wall):
    for t in np.linspace(0, 0.7, 141):
        assert abs(riccati_residual(cos_wall, t)) < 1e-8


def test_alpha_is_half_log_derivative(cos_wall):
    for t in (0.0, 0.2, 0.55):
        assert alpha_of(cos_wall, t) == pytest.approx(-math.tan(2 * t), abs=1e-9)


def test_gauge_factor_is_square_root_ratio(cos_wall):
    for t in np.linspace(0, 0.7, 8):
        assert abs(gauge_factor(cos_wall, t) - math.sqrt(1 / math.cos(2 * t))) < 1e-8


def test_phase_integral_closed_form(cos_wall):
    E = math.pi**2
    for t in (0.1, 0.4):
        assert phase_integral(cos_wall, E, t) == pytest.approx(E * math.tan(2 * t) / 2, rel=1e-9)
    assert phase_integral(cos_wall, 0.0, 0.3) == 0.0
    with pytest.raises(DomainError):
        phase_integral(cos_wall, -1.0, 0.3)


def test_free_wall_moves_linearly():
    ts = solve_scale(zero(), 1.0, 0.5, 1.0)
    t = np.linspace(0, 1, 11)
    assert np.max(abs(ts.length(t) - (1 + 0.5 * t))) < 1e-12
    for s in t:
        assert abs(riccati_residual(ts, s)) < 1e-10


def test_static_schedule_is_fixed():
    ts = static_schedule(2.0, 0.5)
    assert np.all(ts.length(np.linspace(0, 0.5, 5)) == 2.0)
    assert alpha_of(ts, 0.3) == 0.0


def test_sinusoidal_frequency_riccati():
    ts = solve_scale(sinusoidal(1.0, 0.5, 3.0), 1.0, 0.0, 0.5)
    for t in np.linspace(0, 0.5, 51):
        assert abs(riccati_residual(ts, t)) < 1e-8


def test_table_frequency_tracks_constant():
    times = np.linspace(0, 0.7, 15)
    ts = solve_scale(from_table(times, np.ones_like(times)), 1.0, 0.0, 0.7)
    assert abs(float(ts.length(0.6)) - math.cos(1.2)) < 1e-8


def test_table_validation():
    with pytest.raises(DomainError):
        from_table([0.0, 0.0], [1.0, 1.0])
    with pytest.raises(DomainError):
        from_table([0.0], [1.0])


def test_collapse_reports_time():
    with pytest.raises(WallCollapse) as info:
        solve_scale(constant(1.0), 1.0, 0.0, 1.0)
    assert info.value.t_star == pytest.approx(math.pi / 4, abs=1e-4)


def test_window_checks(cos_wall):
    with pytest.raises(WindowError):
        cos_wall.length(0.8)
    with pytest.raises(WindowError):
        riccati_residual(cos_wall, -0.1)


def test_argument_validation():
    for kwargs in ({"L0": 0.0}, {"t_end": -1.0}, {"tol": 1e-14}, {"Ldot0": math.nan}):
        with pytest.raises(DomainError):
            solve_scale(constant(1.0), **kwargs)


def test_unreachable_tolerance_raises():
    with pytest.raises(ToleranceFailure):
        solve_scale(constant(1.0), 1.0, 0.0, 0.5, tol=1e-12, max_refinements=1)


def test_csv_round_trip(cos_wall):
    text = cos_wall.to_csv()
    back = read_schedule_csv(io.StringIO(text))
    assert np.array_equal(back["L"], cos_wall.L)
    assert np.array_equal(back["alpha"], cos_wall.alpha)
    assert cos_wall.to_csv() == text


def test_schedule_arrays_are_read_only(cos_wall):
    with pytest.raises(ValueError):
        cos_wall.L[0] = 2.0
