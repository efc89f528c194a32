"""Command-line front end: ``ptbox <command> [flags]``.

Every command writes a table (CSV or JSON) preceded by a manifest echoing the
fully resolved configuration. Exit codes: 0 ok, 1 verification failure,
2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .errors import ConvergenceError, DomainError, InstabilityError, WallCollapse
from .fullline import ladder, znojil_energy
from .modes import ConjMode, ShiftConfig, normalize, quantize, wall_report, wavefunction
from .observables import expectation_report
from .pdeverify import EvolutionConfig, discrete_norm, evolve_cn, initial_field, l2_error
from .trapdyn import constant, from_table, riccati_residual, solve_scale, zero
from .verification import run_suite

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
COMMANDS = ("spectrum", "scale", "mode", "density", "observables", "evolve", "verify")


class ConfigError(Exception):
    pass


def _times(text):
    try:
        vals = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed time list {text!r}") from None
    if not vals or any(not math.isfinite(v) or v < 0 for v in vals):
        raise argparse.ArgumentTypeError(f"times must be finite and nonnegative: {text!r}")
    return vals


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _finite(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def _common(p):
    p.add_argument("--config", help="key=value file merged beneath the flags")
    p.add_argument("--g", type=_finite, default=0.0, help="inverse-square coupling (>= -1/4)")
    p.add_argument("--k", type=_positive_int, default=1, help="mode index (1-based)")
    p.add_argument("--c", type=_finite, default=0.0, help="imaginary coordinate shift")
    p.add_argument("--omega2", type=_finite, default=0.0, help="constant squared frequency")
    p.add_argument("--schedule", choices=("constant", "zero", "table"), default="constant")
    p.add_argument("--table", help="CSV with columns t,omega2 (for --schedule table)")
    p.add_argument("--L0", type=_finite, default=1.0)
    p.add_argument("--Ldot0", type=_finite, default=0.0)
    p.add_argument("--t", type=_times, default=[0.0], help="comma-separated sample times")
    p.add_argument("--t-end", dest="t_end", type=_finite, default=None,
                   help="schedule window end (default: largest --t, or 0.1 if that is 0)")
    p.add_argument("--grid", type=_positive_int, default=201, help="grid points or intervals")
    p.add_argument("--tol", type=_finite, default=1e-10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default stdout)")


def build_parser():
    parser = _Parser(prog="ptbox", description="Trapped and complex-shifted Bessel modes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="trapped energies and the full-line ladder")
    _common(p)
    p.add_argument("--count", type=_positive_int, default=5)
    p.add_argument("--fullline", action="store_true")
    p.add_argument("--nmax", type=int, default=2)

    p = sub.add_parser("scale", help="wall trajectory L(t) and gauge parameter")
    _common(p)

    for name in ("mode", "density"):
        p = sub.add_parser(name, help=f"{name} profile on [0, L(t)]")
        _common(p)
        p.add_argument("--normalization", choices=("sine", "raw", "unit"), default="sine",
                       help="sine: N = E**-1/4; raw: N = 1; unit: unit norm on the sampled line")

    p = sub.add_parser("observables", help="norm, <H>, <x> on the shifted line")
    _common(p)
    p.add_argument("--conj-mode", dest="conj_mode", default="both",
                   choices=("both",) + tuple(m.value for m in ConjMode))

    p = sub.add_parser("evolve", help="Crank-Nicolson evolution of a trapped mode")
    _common(p)
    p.add_argument("--dt", type=_finite, default=1e-4)
    p.add_argument("--snapshot-every", dest="snapshot_every", type=_positive_int, default=None)

    p = sub.add_parser("verify", help="run the acceptance suite")
    _common(p)
    p.add_argument("--report", help="also write the JSON report here")
    p.add_argument("--inject-fault", dest="inject_fault", type=_finite, nargs="?", const=0.05,
                   default=0.0, help=argparse.SUPPRESS)
    return parser


def _read_config(path):
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for n, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{n}: expected key=value")
                key, value = (s.strip() for s in line.split("=", 1))
                values[key.replace("-", "_")] = value
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    return values


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        values = _read_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in sub._actions}
        unknown = sorted(set(values) - known - {"config"})
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        # string defaults are converted by the flag's type; flags still win
        sub.set_defaults(**values)
        args = parser.parse_args(argv)
    return args


def _validate(args):
    if args.tol < 1e-12:
        raise ConfigError("--tol must be >= 1e-12")
    if args.L0 <= 0:
        raise ConfigError("--L0 must be positive")
    if args.schedule == "table" and not args.table:
        raise ConfigError("--schedule table requires --table")
    latest = max(args.t)
    if args.t_end is None:
        args.t_end = latest if latest > 0 else 0.1
    args.t_end = max(args.t_end, latest)
    if args.t_end <= 0:
        raise ConfigError("--t-end must be positive")


def _frequency(args):
    if args.schedule == "zero":
        return zero()
    if args.schedule == "table":
        try:
            with open(args.table, newline="", encoding="utf-8") as fh:
                rows = list(csv.DictReader(fh))
            t = [float(r["t"]) for r in rows]
            w = [float(r["omega2"]) for r in rows]
        except (OSError, KeyError, ValueError) as exc:
            raise ConfigError(f"bad frequency table: {exc}") from None
        return from_table(t, w)
    return constant(args.omega2)


def _schedule(args):
    return solve_scale(_frequency(args), args.L0, args.Ldot0, args.t_end, tol=max(args.tol, 1e-12))


def _manifest(args):
    out = {"program": "ptbox", "version": __version__}
    for key, value in sorted(vars(args).items()):
        if key == "inject_fault" and not value:
            continue
        out[key] = value
    return out


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    return "" if v is None else str(v)


def _emit(args, columns, rows, extra=None):
    manifest = _manifest(args)
    if args.format == "json":
        doc = {"manifest": manifest, "columns": columns, "rows": rows}
        if extra:
            doc["summary"] = extra
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        buf.write("# manifest: " + json.dumps(manifest, sort_keys=True) + "\n")
        if extra:
            buf.write("# summary: " + json.dumps(extra, sort_keys=True) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    _write(args.out, text)


def _write(path, text):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _mode(args):
    modes = quantize(args.g, args.k)
    return modes[args.k - 1]


def cmd_spectrum(args):
    rows = [["trapped", m.k, None, m.E] for m in quantize(args.g, args.count)]
    if args.fullline:
        if args.nmax < 0:
            raise ConfigError("--nmax must be >= 0")
        beta = math.sqrt(args.g + 0.25)
        for n in range(args.nmax + 1):
            for qp in (1, -1):
                rows.append(["fullline", n, qp, znojil_energy(n, qp, beta)])
        extra = {"fullline_ladder": ladder(beta, args.nmax)}
    else:
        extra = None
    _emit(args, ["kind", "n_or_k", "qp", "E"], rows, extra)
    return EXIT_OK


def cmd_scale(args):
    ts = _schedule(args)
    t = np.linspace(0.0, args.t_end, max(args.grid, 2))
    L, Ld, a = ts.length(t), ts.velocity(t), ts.alpha_at(t)
    w = ts.omega2(t)
    rows = [[float(t[i]), float(L[i]), float(Ld[i]), float(a[i]), float(w[i]),
             riccati_residual(ts, t[i])] for i in range(len(t))]
    _emit(args, ["t", "L", "Ldot", "alpha", "omega2", "riccati_residual"], rows)
    return EXIT_OK


def _normalized(args, mode, ts, shift, t):
    if args.normalization == "unit":
        return normalize(mode, ts, shift, t, tol=max(args.tol, 1e-12))
    if args.normalization == "sine":
        return replace(mode, N=mode.E ** -0.25)
    return replace(mode, N=1.0)


def _profile(args, with_psi):
    ts = _schedule(args)
    base = _mode(args)
    shift = ShiftConfig(args.c)
    rows, walls = [], []
    multi = len(args.t) > 1
    for t in args.t:
        mode = _normalized(args, base, ts, shift, t)
        L = float(ts.length(t))
        x = np.linspace(0.0, L, max(args.grid, 2))
        psi = np.asarray(wavefunction(mode, ts, shift, t, x))
        dens = psi.real**2 + psi.imag**2
        for i in range(len(x)):
            row = [float(x[i])]
            if with_psi:
                row += [float(psi[i].real), float(psi[i].imag)]
            row.append(float(dens[i]))
            rows.append(([t] if multi else []) + row)
        rep = wall_report(mode, ts, shift, t)
        rep.update(t=t, L=L, E=mode.E, N_re=complex(mode.N).real)
        walls.append(rep)
    cols = (["t"] if multi else []) + ["x"] + (["re_psi", "im_psi"] if with_psi else []) + ["density"]
    _emit(args, cols, rows, {"walls": walls})
    return EXIT_OK


def cmd_mode(args):
    return _profile(args, True)


def cmd_density(args):
    return _profile(args, False)


def cmd_observables(args):
    ts = _schedule(args)
    base = _mode(args)
    modes = list(ConjMode) if args.conj_mode == "both" else [ConjMode(args.conj_mode)]
    rows = []
    cols = None
    for t in args.t:
        for conj in modes:
            shift = ShiftConfig(args.c, conj)
            mode = normalize(base, ts, shift, t, tol=max(args.tol, 1e-12))
            rep = expectation_report(mode, ts, shift, t, tol=args.tol).to_dict()
            cols = cols or list(rep)
            rows.append([rep[k] for k in cols])
    _emit(args, cols, rows)
    return EXIT_OK


def cmd_evolve(args):
    ts = _schedule(args)
    t_end = max(args.t)
    if t_end <= 0:
        raise ConfigError("evolve needs a positive --t (final time)")
    config = EvolutionConfig(max(args.grid, 64), args.dt, t_end, ts, g=args.g, c=args.c)
    mode = normalize(_mode(args), ts, ShiftConfig(args.c), 0.0, tol=max(args.tol, 1e-12))
    start = initial_field(mode, config)
    rows = []

    def take(f):
        for x, v in zip(f.offsets, f.values):
            rows.append([f.meta["t"], float(x), float(v.real), float(v.imag), float(abs(v) ** 2)])

    take(start)
    final = evolve_cn(config, start, args.snapshot_every, take)
    exact = wavefunction(mode, ts, ShiftConfig(args.c), final.meta["t"], final.offsets)
    summary = {
        "steps": config.steps,
        "norm_initial": discrete_norm(start),
        "norm_final": discrete_norm(final),
        "l2_error_vs_analytic": l2_error(final, exact),
    }
    _emit(args, ["t", "x", "re_psi", "im_psi", "density"], rows, summary)
    return EXIT_OK


def cmd_verify(args):
    results, text = run_suite(fault=args.inject_fault, manifest=_manifest(args))
    for r in results:
        sys.stderr.write(f"[{'PASS' if r.passed else 'FAIL'}] {r.id:2d} {r.name}\n")
    if args.report:
        _write(args.report, text)
    _write(args.out, text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def main(argv=None):
    try:
        args = parse_args(sys.argv[1:] if argv is None else argv)
        _validate(args)
        return HANDLERS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    except (ConfigError, DomainError) as exc:
        sys.stderr.write(f"ptbox: error: {exc}\n")
        return EXIT_CONFIG
    except (ConvergenceError, WallCollapse, InstabilityError) as exc:
        sys.stderr.write(f"ptbox: numerical failure: {exc}\n")
        return EXIT_NUMERIC
