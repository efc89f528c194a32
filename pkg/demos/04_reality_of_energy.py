# Is <H> + 4 i w^2 c <x> real? Compare the two ways of building the bra.
from ptbox.modes import ConjMode, ShiftConfig, normalize, quantize
from ptbox.observables import expectation_report
from ptbox.trapdyn import constant, solve_scale, static_schedule

wall = solve_scale(constant(1.0), t_end=0.5)
m = quantize(0.0, 1)[0]
for c in (0.1, 0.5):
    for conj in ConjMode:
        shift = ShiftConfig(c, conj)
        rep = expectation_report(normalize(m, wall, shift, 0.0), wall, shift, 0.0)
        print(f"c={c} {conj.value:22s} <H>={rep.exp_H:.6f}  <x>={rep.exp_x:.6f}  "
              f"|Im combo|/|<H>|={rep.im_residual:.3e}")

# free particle: <H> stays real whatever c is
box = static_schedule(1.0, 0.5)
for c in (0.1, 0.5):
    shift = ShiftConfig(c, ConjMode.CONTINUED_CONJUGATE)
    print(c, expectation_report(normalize(m, box, shift, 0.0), box, shift, 0.0).exp_H)
