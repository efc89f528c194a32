# Evolve the lowest mode with Crank-Nicolson and compare with the exact mode.
import math

import numpy as np

from ptbox.modes import ShiftConfig, normalize, psi_at, quantize
from ptbox.pdeverify import (EvolutionConfig, analytic_residual, discrete_norm, evolve_cn,
                             initial_field, l2_error)
from ptbox.trapdyn import constant, solve_scale, static_schedule

box = static_schedule(1.0, 0.5)
m = normalize(quantize(0.0, 1)[0], box, ShiftConfig(0.0), 0.0)
errs = []
for M, dt in ((256, 2e-4), (512, 1e-4), (1024, 5e-5)):
    cfg = EvolutionConfig(M, dt, 0.1, box)
    out = evolve_cn(cfg, initial_field(m, cfg))
    errs.append(l2_error(out, psi_at(m, box, 0.1, out.offsets)))
    print(M, dt, errs[-1])
print("observed order:", np.log2(np.array(errs[:-1]) / np.array(errs[1:])))

wall = solve_scale(constant(1.0), t_end=0.5)
mw = normalize(quantize(2.0, 1)[0], wall, ShiftConfig(0.0), 0.0)
cfg = EvolutionConfig(512, 1e-4, 0.2, wall, g=2.0)
start = initial_field(mw, cfg)
out = evolve_cn(cfg, start)
print("moving wall error:", l2_error(out, psi_at(mw, wall, 0.2, out.offsets)))
print("norm drift:", discrete_norm(out) - discrete_norm(start))

x = np.linspace(0.02, 0.98, 50) * float(wall.length(0.3))
print("residual of the exact mode:", analytic_residual(mw, wall, ShiftConfig(0.1), 0.3, x))
