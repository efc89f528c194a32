"""Regenerate ``oracle_values.json`` from mpmath (50 digits) and sympy.

Run ``python tests/make_oracles.py`` from the repository root. The test
suite reads the frozen file; ``test_oracles_regenerate`` checks a sample of
it against a live recomputation.
"""

import json
from pathlib import Path

import mpmath as mp
import sympy as sp

mp.mp.dps = 50
OUT = Path(__file__).with_name("oracle_values.json")

BESSEL_POINTS = [
    (0.0, 1.0), (0.0, 2.5 + 1.0j), (0.5, 3.0 - 2.0j), (1.0, 0.1), (1.0, -4.0 + 3.0j),
    (1.5, 10.0 + 0.5j), (1.5, 16.9), (1.5, 17.1 - 0.3j), (2.0, 25.0 + 4.0j), (2.5, 40.0 - 1.0j),
    (3.7, 12.0 + 6.0j), (3.7, 30.0), (5.0, 0.5 + 0.5j), (7.5, 20.0 + 2.0j), (7.5, 35.0),
    (10.0, 8.0 - 1.0j), (0.5, 100.0 + 3.0j), (1.0, 1000.0), (2.5, 5000.0 - 2.0j), (0.0, 9999.0),
    (1.5, -5.0 + 0.0j), (0.5, -3.0 + 1e-9j),
]
ZERO_ORDERS = [0.0, 0.5, 1.0, 1.5, 2.5]
LAGUERRE_CASES = [(0, -0.5), (1, -0.5), (2, -0.5), (3, -1.5), (4, 0.5), (5, 2.0), (3, -2.5)]
LAGUERRE_POINTS = [0.25, 1.0 + 0.5j, -2.0 + 1.0j, 7.5]


def c2l(z):
    z = mp.mpc(z)
    return [mp.nstr(z.real, 30), mp.nstr(z.imag, 30)]


def bessel_table():
    return [{"nu": nu, "z": [z.real, z.imag] if isinstance(z, complex) else [z, 0.0],
             "J": c2l(mp.besselj(nu, mp.mpc(z)))} for nu, z in BESSEL_POINTS]


def zero_table():
    out = {str(nu): [mp.nstr(mp.besseljzero(nu, k), 30) for k in range(1, 6)] for nu in ZERO_ORDERS}
    out["j0_1000"] = mp.nstr(mp.besseljzero(0, 1000), 30)
    return out


def laguerre_table():
    u, b = sp.symbols("u b")
    rows = []
    for n, beta in LAGUERRE_CASES:
        poly = sp.expand(sp.assoc_laguerre(n, sp.Rational(str(beta)), u))
        for pt in LAGUERRE_POINTS:
            val = complex(sp.N(poly.subs(u, sp.nsimplify(pt)), 30))
            rows.append({"n": n, "beta": beta, "u": [complex(pt).real, complex(pt).imag],
                         "L": [val.real, val.imag]})
    return rows


def reality_ratios():
    """|Im(<H> + 4 i w2 c <x>)| / |<H>| for the half-order mode on L = cos 2t (w2 = 1)."""
    out = {}
    E = mp.pi**2
    for t in (0, mp.mpf("0.3")):
        L = mp.cos(2 * t)
        alpha = -mp.tan(2 * t)
        theta = E * mp.tan(2 * t) / 2

        def psi(z):
            return mp.exp(1j * alpha * z * z / 2 - 1j * theta) / mp.sqrt(L) * mp.sqrt(z / L) * mp.besselj(0.5, mp.pi * z / L)

        def cont(z):
            return mp.exp(-1j * alpha * z * z / 2 + 1j * theta) / mp.sqrt(L) * mp.sqrt(z / L) * mp.besselj(0.5, mp.pi * z / L)

        for c in (mp.mpf("0.1"), mp.mpf("0.5")):
            z = lambda x: x - 1j * c
            Hpsi = lambda x: -mp.diff(psi, z(x), 2) + z(x) ** 2 * psi(z(x))
            for name, bra in (("continued_conjugate", lambda x: cont(z(x))),
                              ("shift_then_conjugate", lambda x: mp.conj(psi(z(x))))):
                n = mp.quad(lambda x: bra(x) * psi(z(x)), [0, L])
                H = mp.quad(lambda x: bra(x) * Hpsi(x), [0, L]) / n
                X = mp.quad(lambda x: bra(x) * x * psi(z(x)), [0, L]) / n
                combo = H + 4j * c * X
                out[f"{name}_c{float(c):g}_t{float(t):g}"] = mp.nstr(abs(combo.imag) / abs(H), 20)
    return out


def main():
    E = mp.pi**2
    wall = (mp.cosh(2 * mp.sqrt(E) * mp.mpf("0.1")) - 1) / (E * mp.pi)
    data = {
        "bessel": bessel_table(),
        "zeros": zero_table(),
        "laguerre": laguerre_table(),
        "wall_density_sine": mp.nstr(wall, 30),
        "wall_density_bessel": mp.nstr(wall * mp.sqrt(E), 30),
        "reduced_half_at_half": mp.nstr(mp.sqrt(mp.mpf(1) / 2) * mp.besselj(0.5, mp.pi / 2), 30),
        "reality_ratios": reality_ratios(),
    }
    OUT.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
