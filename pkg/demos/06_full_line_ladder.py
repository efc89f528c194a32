# Untrapped reference: Laguerre modes on the shifted line and their ladder.
from ptbox.fullline import FullLineMode, eigen_residual, ladder

print("g=0 ladder:", ladder(0.5, 2))
print("g=2 ladder:", ladder(1.5, 2))
for beta in (0.5, 1.5):
    for qp in (1, -1):
        for n in range(4):
            m = FullLineMode(n, qp, beta)
            print(f"beta={beta} q={qp:+d} n={n} E={m.energy:5.1f} "
                  f"res={eigen_residual(m, 0.5):.1e} fd={eigen_residual(m, 0.5, method='fd'):.1e}")
