# Wall trajectory for omega^2 = 1: L(t) = cos 2t, alpha = -tan 2t.
import math

import numpy as np

from ptbox.modes import ShiftConfig, norm_integral, normalize, quantize
from ptbox.trapdyn import constant, gauge_factor, riccati_residual, sinusoidal, solve_scale

ts = solve_scale(constant(1.0), L0=1.0, Ldot0=0.0, t_end=0.7)
t = np.linspace(0, 0.7, 8)
print("max |L - cos 2t| =", np.max(abs(ts.length(t) - np.cos(2 * t))))
for s in t:
    print(f"t={s:.1f}  L={float(ts.length(s)):.6f}  alpha={float(ts.alpha_at(s)):+.6f}  "
          f"riccati={riccati_residual(ts, s):+.1e}  gauge-sqrt={gauge_factor(ts, s) - math.sqrt(1/float(ts.length(s))):+.1e}")

# the mode keeps unit norm while the wall moves
m = normalize(quantize(0.0, 1)[0], ts, ShiftConfig(0.0), 0.0)
print([round(norm_integral(m, ts, ShiftConfig(0.0), s), 12) for s in (0.0, 0.3, 0.6)])

# a wobbling frequency works the same way
wob = solve_scale(sinusoidal(1.0, 0.5, 4.0), t_end=0.5)
print("L(0.5) with wobble:", float(wob.length(0.5)))
