"""The acceptance suite: eleven numbered checks returning structured results.

Each ``criterion_*`` function returns a :class:`CriterionResult` holding the
measured quantities, the tolerance and the verdict. :func:`run_suite` runs all
of them and :func:`report_json` serializes the outcome deterministically.

``fault`` (an additive perturbation of every quantized ``E_k``) exists only to
prove that the suite can fail; it is exposed through a hidden CLI flag.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import specfun
from .fullline import FullLineMode, eigen_residual, ladder
from .modes import (
    ConjMode,
    ShiftConfig,
    density,
    density_closed_half,
    normalize,
    psi_at,
    quantize,
    sine_form,
)
from .observables import expectation_report, hermitian_reality_check, shift_identity
from .pdeverify import (
    EvolutionConfig,
    analytic_residual,
    discrete_norm,
    evolve_cn,
    initial_field,
    l2_error,
)
from .trapdyn import constant, gauge_factor, riccati_residual, solve_scale, static_schedule

SEED = 20240611
WALL_DENSITY_TARGET = 6.579e-3


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    tolerance: dict
    measured: dict = field(default_factory=dict)
    reported: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "id": self.id,
            "name": self.name,
            "passed": bool(self.passed),
            "tolerance": self.tolerance,
            "measured": self.measured,
            "reported": self.reported,
        }


def _quantize(g, count, fault=0.0):
    modes = quantize(g, count)
    if fault:
        modes = [replace(m, E=m.E + fault) for m in modes]
    return modes


def _series_bisection_j0_root(lo=2.0, hi=3.0):
    """First zero of J_0 by bisection on the plain power series (float64)."""

    def j0(x):
        terms = [1.0]
        q = -(x * x) / 4.0
        for k in range(1, 60):
            terms.append(terms[-1] * q / (k * k))
        return math.fsum(terms)

    flo = j0(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = j0(mid)
        if fm == 0 or hi - lo < 1e-15:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def criterion_special_functions(fault=0.0):
    axis = np.linspace(-10.0, 10.0, 41)
    z = (axis[:, None] + 1j * axis[None, :]).ravel()
    z = z[(np.abs(z) <= 10.0) & (z != 0)]
    closed = np.sqrt(2.0 / (np.pi * z)) * np.sin(z)
    half = float(np.max(np.abs(specfun.bessel_j(0.5, z) - closed) / np.abs(closed)))

    rng = np.random.default_rng(SEED)
    orders = (1.0, 1.5, 2.0, 3.25, 5.0)
    r = rng.uniform(0.5, 20.0, 100)
    phi = rng.uniform(-np.pi / 2, np.pi / 2, 100)
    pts = r * np.exp(1j * phi)
    rec = 0.0
    for nu in orders:
        jm, j0, jp = (specfun.bessel_j(nu + d, pts) for d in (-1, 0, 1))
        lhs, rhs = jm + jp, 2 * nu / pts * j0
        scale = np.maximum.reduce([np.abs(jm), np.abs(jp), np.abs(rhs)])
        rec = max(rec, float(np.max(np.abs(lhs - rhs) / scale)))

    roots = specfun.bessel_roots(0.5, 20).roots
    half_roots = float(np.max(np.abs(roots - np.pi * np.arange(1, 21))))
    j01 = float(specfun.bessel_roots(0.0, 1).roots[0])
    oracle = _series_bisection_j0_root()
    j01_err = abs(j01 - oracle)
    tol = {"half_order_rel": 1e-12, "recurrence_rel": 1e-10, "half_roots_abs": 1e-10,
           "j01_abs": 1e-10}
    passed = half < 1e-12 and rec < 1e-10 and half_roots < 1e-10 and j01_err < 1e-10
    return CriterionResult(1, "special functions", passed, tol, {
        "half_order_rel": half, "recurrence_rel": rec, "half_roots_abs": half_roots,
        "j01_abs": j01_err, "j01": j01, "j01_oracle": oracle})


def criterion_quantization(fault=0.0):
    worst = 0.0
    for g in (0.0, 2.0, 6.0):
        for m in _quantize(g, 5, fault):
            worst = max(worst, abs(specfun.bessel_j(m.nu, math.sqrt(m.E))))
    static = static_schedule(1.0, 0.5)
    moving = solve_scale(constant(1.0), 1.0, 0.0, 0.5)
    same = True
    for g in (0.0, 2.0):
        for m in _quantize(g, 3, fault):
            a = normalize(m, static, ShiftConfig(0.0), 0.3)
            b = normalize(m, moving, ShiftConfig(0.0), 0.3)
            same = same and a.E == b.E == m.E
    passed = worst < 1e-10 and same
    return CriterionResult(2, "quantization", passed, {"abs_J_at_root": 1e-10, "schedule_independent": True},
                           {"abs_J_at_root": worst, "schedule_independent": same})


def criterion_scale_dynamics(fault=0.0):
    ts = solve_scale(constant(1.0), 1.0, 0.0, 0.7)
    t = np.linspace(0.0, 0.7, 701)
    cos_err = float(np.max(np.abs(ts.length(t) - np.cos(2 * t))))
    ric = float(np.max(np.abs([riccati_residual(ts, s) for s in t])))
    gauge = max(abs(gauge_factor(ts, s) - math.sqrt(1.0 / float(ts.length(s))))
                for s in np.linspace(0.0, 0.7, 15))
    passed = cos_err < 1e-8 and ric < 1e-8 and gauge < 1e-8
    return CriterionResult(3, "scale dynamics", passed,
                           {"cos2t_abs": 1e-8, "riccati_abs": 1e-8, "gauge_abs": 1e-8},
                           {"cos2t_abs": cos_err, "riccati_abs": ric, "gauge_abs": gauge})


def criterion_densities(fault=0.0):
    E = _quantize(0.0, 1, fault)[0].E
    L = 1.0
    x = np.linspace(0.0, L, 1000)
    agree = 0.0
    for c in (0.0, 0.1, 0.5):
        prod = np.abs(sine_form(E, L, c, x)) ** 2
        agree = max(agree, float(np.max(np.abs(density_closed_half(E, L, c, x) - prod))))
    ends = np.array([0.0, L])
    wall0 = float(np.max(np.abs(sine_form(E, L, 0.0, ends)) ** 2))
    wall_closed = density_closed_half(E, L, 0.1, ends)
    wall_prod = np.abs(sine_form(E, L, 0.1, ends)) ** 2
    wall_dev = float(np.max(np.abs(wall_prod - WALL_DENSITY_TARGET)))
    cross = float(np.max(np.abs(wall_closed - wall_prod)))

    mode = _quantize(0.0, 1, fault)[0]
    ts = static_schedule(L, 0.5)
    even = 0.0
    for c in (0.1, 0.5):
        dp = density(mode, ts, ShiftConfig(c), 0.2, x)
        dm = density(mode, ts, ShiftConfig(-c), 0.2, x)
        even = max(even, float(np.max(np.abs(dp - dm))))
    passed = agree <= 1e-12 and wall0 <= 1e-12 and wall_dev <= 1e-6 and cross <= 1e-12 and even <= 1e-13
    return CriterionResult(4, "densities", passed,
                           {"closed_vs_product": 1e-12, "wall_c0": 1e-12, "wall_c01_dev": 1e-6,
                            "evenness": 1e-13},
                           {"closed_vs_product": agree, "wall_c0": wall0,
                            "wall_c01": float(wall_prod[0]), "wall_c01_dev": wall_dev,
                            "wall_closed_vs_product": cross, "evenness": even, "E": E})


def criterion_wall_condition(fault=0.0):
    worst = 0.0
    schedules = (static_schedule(1.0, 0.5), solve_scale(constant(1.0), 1.0, 0.0, 0.5))
    for g in (0.0, 2.0, 6.0):
        for m in _quantize(g, 5, fault):
            for ts in schedules:
                for t in (0.0, 0.3):
                    n = normalize(m, ts, ShiftConfig(0.0), t)
                    L = float(ts.length(t))
                    worst = max(worst, float(np.max(np.abs(psi_at(n, ts, t, np.array([0.0, L]))))))
    return CriterionResult(5, "complex wall condition", worst < 1e-12, {"abs_psi": 1e-12},
                           {"abs_psi": worst})


def criterion_full_line(fault=0.0):
    worst_a = worst_fd = 0.0
    for beta in (0.5, 1.5):
        for qp in (1, -1):
            for n in range(4):
                m = FullLineMode(n, qp, beta)
                worst_a = max(worst_a, eigen_residual(m, 0.5, method="analytic"))
                worst_fd = max(worst_fd, eigen_residual(m, 0.5, method="fd"))
    lad = ladder(0.5, 2)
    expected = [float(2 * i + 1) for i in range(6)]
    ladder_ok = lad == expected and {1.0, 3.0, 5.0, 7.0, 9.0} <= set(lad)
    passed = worst_a < 1e-8 and worst_fd < 1e-8 and ladder_ok
    return CriterionResult(6, "full-line reference", passed,
                           {"residual": 1e-8, "ladder": expected},
                           {"residual_analytic": worst_a, "residual_fd": worst_fd, "ladder": lad})


def criterion_shift_identity(fault=0.0):
    rng = np.random.default_rng(SEED + 7)
    w = rng.uniform(-2.0, 4.0, 100)
    c = rng.uniform(-1.0, 1.0, 100)
    x = rng.uniform(-3.0, 3.0, 100)
    worst = float(max(abs(shift_identity(a, b, d)) for a, b, d in zip(w, c, x)))
    return CriterionResult(7, "shift identity", worst < 1e-13, {"abs": 1e-13}, {"abs": worst})


def criterion_hermitian_reality(fault=0.0):
    worst = 0.0
    schedules = (static_schedule(1.0, 0.5), solve_scale(constant(1.0), 1.0, 0.0, 0.5))
    for ts in schedules:
        for g in (0.0, 2.0):
            for m in _quantize(g, 2, fault):
                for t in (0.0, 0.3):
                    n = normalize(m, ts, ShiftConfig(0.0), t)
                    worst = max(worst, hermitian_reality_check(n, ts, t))
    return CriterionResult(8, "hermitian reality", worst < 1e-10, {"abs_im_H": 1e-10},
                           {"abs_im_H": worst})


def criterion_reality_combination(fault=0.0):
    mode = _quantize(0.0, 1, fault)[0]
    wall = solve_scale(constant(1.0), 1.0, 0.0, 0.5)
    static = static_schedule(1.0, 0.5)
    measured, reported = {}, {}
    continued = 0.0
    for c in (0.1, 0.5):
        for t in (0.0, 0.3):
            for conj in ConjMode:
                shift = ShiftConfig(c, conj)
                rep = expectation_report(normalize(mode, wall, shift, t), wall, shift, t)
                key = f"{conj.value}_c{c:g}_t{t:g}"
                if conj is ConjMode.CONTINUED_CONJUGATE:
                    measured[key] = rep.im_residual
                    continued = max(continued, rep.im_residual)
                else:
                    reported[key] = rep.im_residual
    free = 0.0
    for c in (0.0, 0.1, 0.5):
        for conj in ConjMode:
            shift = ShiftConfig(c, conj)
            rep = expectation_report(normalize(mode, static, shift, 0.2), static, shift, 0.2)
            free = max(free, abs(rep.exp_H.imag) / abs(rep.exp_H))
    measured["free_im_H_rel"] = free
    passed = continued < 1e-8 and free < 1e-8
    return CriterionResult(9, "reality combination", passed,
                           {"continued_im_rel": 1e-8, "free_im_H_rel": 1e-8}, measured, reported)


def criterion_pde(fault=0.0):
    mode = _quantize(0.0, 1, fault)[0]
    static = static_schedule(1.0, 0.5)
    moving = solve_scale(constant(1.0), 1.0, 0.0, 0.5)

    cfg = EvolutionConfig(256, 1e-4, 0.1, moving)
    start = initial_field(normalize(mode, moving, ShiftConfig(0.0), 0.0), cfg)
    drift = abs(discrete_norm(evolve_cn(cfg, start)) - discrete_norm(start))

    norm_static = normalize(mode, static, ShiftConfig(0.0), 0.0)
    errors = []
    for M, dt in ((512, 1e-4), (1024, 5e-5)):
        cfg = EvolutionConfig(M, dt, 0.1, static)
        out = evolve_cn(cfg, initial_field(norm_static, cfg))
        errors.append(l2_error(out, psi_at(norm_static, static, 0.1, out.offsets)))
    slope = math.log2(errors[0] / errors[1])

    resid = 0.0
    for ts in (static, moving):
        for g in (0.0, 2.0):
            m = _quantize(g, 1, fault)[0]
            for c in (0.0, 0.1):
                shift = ShiftConfig(c)
                n = normalize(m, ts, shift, 0.0)
                L = float(ts.length(0.3))
                x = np.linspace(0.02, 0.98, 97) * L
                resid = max(resid, analytic_residual(n, ts, shift, 0.3, x))
    passed = drift < 1e-10 and errors[0] < 1e-4 and abs(slope - 2.0) <= 0.2 and resid < 1e-6
    return CriterionResult(10, "PDE verification", passed,
                           {"norm_drift_per_1000": 1e-10, "l2_error": 1e-4, "slope": [1.8, 2.2],
                            "analytic_residual": 1e-6},
                           {"norm_drift_per_1000": drift, "l2_error": errors[0],
                            "l2_error_refined": errors[1], "slope": slope,
                            "analytic_residual": resid})


CRITERIA = (
    criterion_special_functions,
    criterion_quantization,
    criterion_scale_dynamics,
    criterion_densities,
    criterion_wall_condition,
    criterion_full_line,
    criterion_shift_identity,
    criterion_hermitian_reality,
    criterion_reality_combination,
    criterion_pde,
)


def _run_core(fault):
    return [fn(fault) for fn in CRITERIA]


def report_json(results, manifest) -> str:
    """Deterministic JSON text (sorted keys, shortest round-trip floats)."""
    doc = {
        "manifest": manifest,
        "criteria": [r.to_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def run_suite(fault=0.0, manifest=None):
    """Run all eleven criteria; returns ``(results, json_text)``.

    The determinism criterion reruns the first ten and compares the
    serialized reports byte for byte.
    """
    manifest = dict(manifest or {})
    first = _run_core(fault)
    second = _run_core(fault)
    core_a = report_json(first, manifest)
    core_b = report_json(second, manifest)
    same = core_a == core_b
    results = first + [CriterionResult(11, "determinism", same, {"byte_identical": True},
                                       {"byte_identical": same, "bytes": len(core_a)})]
    return results, report_json(results, manifest)
