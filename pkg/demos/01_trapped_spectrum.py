# Trapped energies for a few couplings, and a look at the lowest modes.
import math

import numpy as np

from ptbox.modes import quantize, reduced_mode
from ptbox.specfun import bessel_j

for g in (0.0, 2.0, 6.0):
    modes = quantize(g, 4)
    print(f"g = {g:g}  nu = {modes[0].nu:g}")
    for m in modes:
        # E_k should make J_nu vanish at the wall
        print(f"   k={m.k}  E={m.E:.12f}  |J(sqrt E)|={abs(bessel_j(m.nu, math.sqrt(m.E))):.1e}")

# free box: E_k = (k pi)^2
print(np.array([m.E for m in quantize(0.0, 4)]) / math.pi**2)

# reduced profile on a coarse grid
q = np.linspace(0, 1, 9)
for m in quantize(2.0, 2):
    print(m.k, np.round(reduced_mode(m, q).real, 4))
