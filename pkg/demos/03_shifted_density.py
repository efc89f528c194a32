# Density on the shifted line x - ic: nonzero at the walls once c != 0.
import math

import numpy as np

from ptbox.modes import (ShiftConfig, density, density_closed_half, quantize, sine_form,
                         wall_report)
from ptbox.trapdyn import static_schedule

E, L = math.pi**2, 1.0
x = np.linspace(0, L, 6)
for c in (0.0, 0.1, 0.5):
    print(f"c={c}", np.round(density_closed_half(E, L, c, x), 6))

# closed form against the direct product
xs = np.linspace(0, L, 1000)
print("closed vs product:", np.max(abs(density_closed_half(E, L, 0.1, xs) - abs(sine_form(E, L, 0.1, xs))**2)))

box = static_schedule(1.0, 0.5)
m = quantize(0.0, 1)[0]
print(wall_report(m, box, ShiftConfig(0.1), 0.0))

# even in c for the resting box
print(np.max(abs(density(m, box, ShiftConfig(0.3), 0.2, xs) - density(m, box, ShiftConfig(-0.3), 0.2, xs))))
