"""Command-line entry point.

    prodwishart charpoly {eval|zeros}
    prodwishart asymptotics {compare|fig1|phases}
    prodwishart raney {density|cdf|moments|sample|stieltjes}
    prodwishart simulate
    prodwishart ks

Exit codes: 0 ok, 1 usage error, 2 numerical failure, 3 I/O failure. Errors
are reported as a single JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import asymptotics, charpoly, empirics, raney, rmt
from .charpoly import CertificationError, PolySpec
from .io import atomic_write_text, read_csv_column, table_to_csv, table_to_json
from .numerics import DomainError, NumericalFailure
from .svgplot import plot_svg

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    r: int | None = None
    kappa: int | None = None
    nu: list[int] | None = None
    n: int | None = None
    phi_min: float | None = None
    phi_max: float | None = None
    points: int | None = None
    trials: int | None = None
    seed: int | None = None
    format: str = "csv"
    extra: dict = field(default_factory=dict)

    def validate_grid(self):
        if self.points is not None and self.points < 2:
            raise UsageError(f"--points must be >= 2, got {self.points}")
        if self.phi_min is not None and self.phi_max is not None:
            top = math.pi / (self.r + 1)
            if not 0 < self.phi_min < self.phi_max < top:
                raise UsageError(f"need 0 < phi-min < phi-max < pi/(r+1) = {top:.17g}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _spec_args(p: argparse.ArgumentParser, need_n: bool = True):
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--kappa", type=int, default=0)
    p.add_argument("--nu", type=_int_list, default=None, help="comma list nu_1,...,nu_{r-1} (default all 0)")
    if need_n:
        p.add_argument("--n", type=int, required=True)


def _out_args(p: argparse.ArgumentParser):
    p.add_argument("--out", default="-", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--svg", default=None, help="also write an SVG plot here")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)


def _grid_args(p: argparse.ArgumentParser, points: int = 200):
    p.add_argument("--phi-min", type=float, default=None)
    p.add_argument("--phi-max", type=float, default=None)
    p.add_argument("--points", type=int, default=points)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prodwishart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cp = sub.add_parser("charpoly").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = cp.add_parser("eval", help="F_n and P_n at given points")
    _spec_args(p)
    p.add_argument("--x", type=_float_list, required=True, help="comma list of points (fractions allowed)")
    p.add_argument("--rescaled", action="store_true", help="evaluate at n^{r-1} x")
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    _out_args(p)
    p = cp.add_parser("zeros", help="certified zeros of F_n")
    _spec_args(p)
    p.add_argument("--rtol", type=float, default=1e-12)
    _out_args(p)

    ap = sub.add_parser("asymptotics").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = ap.add_parser("compare", help="normalized polynomial vs cosine approximant")
    _spec_args(p)
    _grid_args(p)
    _out_args(p)
    p = ap.add_parser("fig1", help="preset r=3, kappa=2, nu=2,5, n=150 on [2pi/13, pi/6]")
    p.add_argument("--points", type=int, default=asymptotics.FIG1["points"])
    _out_args(p)
    p = ap.add_parser("phases", help="a, f, g and the log-envelope on a phi grid")
    _spec_args(p, need_n=False)
    p.add_argument("--n", type=int, default=1)
    _grid_args(p)
    _out_args(p)

    rp = sub.add_parser("raney").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = rp.add_parser("density")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--points", type=int, default=400)
    _out_args(p)
    p = rp.add_parser("cdf")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--points", type=int, default=400)
    _out_args(p)
    p = rp.add_parser("moments")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--kmax", type=int, default=8)
    _out_args(p)
    p = rp.add_parser("sample")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _out_args(p)
    p = rp.add_parser("stieltjes")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--z", type=_float_list, required=True)
    _out_args(p)

    p = sub.add_parser("simulate", help="Monte Carlo squared singular values / n^{r-1}")
    _spec_args(p)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    _out_args(p)

    p = sub.add_parser("ks", help="KS distance of a CSV column to V")
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--column", default=None)
    p.add_argument("--out", default="-")
    return parser


# --- helpers ----------------------------------------------------------------


def _spec(args) -> PolySpec:
    nu = args.nu if args.nu is not None else [0] * (args.r - 1)
    return PolySpec(args.r, args.kappa, nu)


def _pmap(func: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [func(i) for i in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _phi_grid(args, r: int) -> np.ndarray:
    top = math.pi / (r + 1)
    lo = args.phi_min if args.phi_min is not None else 0.05 * top
    hi = args.phi_max if args.phi_max is not None else 0.95 * top
    args.phi_min, args.phi_max = lo, hi
    return np.linspace(lo, hi, args.points)


def _config(args) -> RunConfig:
    cmd = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    cfg = RunConfig(command=cmd, format=getattr(args, "format", "csv"))
    for name in ("r", "kappa", "n", "phi_min", "phi_max", "points", "trials", "seed"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "nu") and getattr(args, "r", None) is not None:
        cfg.nu = args.nu if args.nu is not None else [0] * (args.r - 1)
    return cfg


def _emit(args, table: dict, cfg: RunConfig, svg_x: str | None = None, svg_y: Sequence[str] | None = None,
          title: str = ""):
    if args.format == "json":
        meta = {k: v for k, v in asdict(cfg).items() if v is not None and k != "extra"}
        meta.update(cfg.extra)
        text = table_to_json(table, meta)
    else:
        text = table_to_csv(table)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        atomic_write_text(args.out, text)
    if args.svg:
        plot_svg(table, args.svg, x_key=svg_x, y_keys=svg_y, title=title)


# --- subcommands -------------------------------------------------------------


def cmd_charpoly_eval(args):
    spec = _spec(args)
    xs, fvals, pvals, exact_col = [], [], [], []
    for text in args.x:
        try:
            xq = Fraction(text)
        except ValueError:
            raise UsageError(f"not a number: {text!r}")
        if args.exact:
            fv = charpoly.evaluate(spec, args.n, xq, rescaled=args.rescaled, exact=True)
            exact_col.append(str(fv))
            fvals.append(float(fv))
            if args.n >= 1:
                arg = xq * args.n ** (spec.r - 1) if args.rescaled else xq
                pvals.append(float(charpoly.evaluate_avg_charpoly(spec, args.n, arg, exact=True)))
        else:
            xf = float(xq)
            fvals.append(float(charpoly.evaluate(spec, args.n, xf, rescaled=args.rescaled)))
            if args.n >= 1:
                arg = xf * args.n ** (spec.r - 1) if args.rescaled else xf
                pvals.append(float(charpoly.evaluate_avg_charpoly(spec, args.n, arg)))
        xs.append(float(xq))
    table = {"x": xs, "F_n": fvals}
    if pvals:
        table["P_n"] = pvals
    if exact_col:
        table["F_n_exact"] = exact_col
    cfg = _config(args)
    cfg.extra = {"rescaled": args.rescaled, "exact": args.exact}
    _emit(args, table, cfg)


def cmd_charpoly_zeros(args):
    spec = _spec(args)
    cz = charpoly.zeros(spec, args.n, rtol=args.rtol)
    scale = float(args.n) ** (spec.r - 1) if args.n else 1.0
    table = {
        "index": list(range(1, cz.n + 1)),
        "zero": list(cz.zeros),
        "rescaled_zero": [z / scale for z in cz.zeros],
    }
    _emit(args, table, _config(args), svg_x="index", svg_y=["rescaled_zero"])


def _compare_table(spec: PolySpec, n: int, phis: np.ndarray, jobs: int) -> dict:
    vals = _pmap(lambda p: asymptotics.normalized_poly(asymptotics.PhiCoord(float(p), spec.r), spec, n),
                 list(phis), jobs)
    cos = np.cos(n * asymptotics.phase_f(phis, spec.r) + asymptotics.phase_g(phis, spec))
    return {
        "phi": phis,
        "x": asymptotics.sigma_array(phis, spec.r),
        "normalized_poly": np.array(vals),
        "cosine_approximant": cos,
    }


def cmd_asymptotics_compare(args):
    spec = _spec(args)
    cfg = _config(args)
    phis = _phi_grid(args, spec.r)
    cfg.phi_min, cfg.phi_max = args.phi_min, args.phi_max
    cfg.validate_grid()
    table = _compare_table(spec, args.n, phis, args.jobs)
    _emit(args, table, cfg, svg_x="phi", svg_y=["normalized_poly", "cosine_approximant"])


def cmd_asymptotics_fig1(args):
    pre = asymptotics.FIG1
    spec = PolySpec(pre["r"], pre["kappa"], pre["nu"])
    cfg = RunConfig(command="asymptotics fig1", r=pre["r"], kappa=pre["kappa"], nu=list(pre["nu"]), n=pre["n"],
                    phi_min=pre["phi_min"], phi_max=pre["phi_max"], points=args.points, format=args.format)
    cfg.validate_grid()
    phis = np.linspace(pre["phi_min"], pre["phi_max"], args.points)
    table = _compare_table(spec, pre["n"], phis, args.jobs)
    _emit(args, table, cfg, svg_x="phi", svg_y=["normalized_poly", "cosine_approximant"],
          title="normalized polynomial and cosine approximant, n=150")


def cmd_asymptotics_phases(args):
    spec = _spec(args)
    cfg = _config(args)
    phis = _phi_grid(args, spec.r)
    cfg.phi_min, cfg.phi_max = args.phi_min, args.phi_max
    cfg.validate_grid()
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    table = {
        "phi": phis,
        "x": asymptotics.sigma_array(phis, spec.r),
        "a": asymptotics.amplitude_a(phis, spec.r),
        "f": asymptotics.phase_f(phis, spec.r),
        "g": asymptotics.phase_g(phis, spec),
        "envelope_log": asymptotics.envelope_log_array(phis, spec, args.n),
    }
    _emit(args, table, cfg, svg_x="phi", svg_y=["f", "g"])


def _check_points(args):
    if args.points < 2:
        raise UsageError(f"--points must be >= 2, got {args.points}")


def cmd_raney_density(args):
    _check_points(args)
    r = args.r
    top = asymptotics.phi_max(r)
    phis = np.linspace(top, 0, args.points + 2)[1:-1]
    table = {"x": asymptotics.sigma_array(phis, r), "density": raney.density_phi(phis, r)}
    _emit(args, table, _config(args), svg_x="x", svg_y=["density"], title=f"Raney density, r={r}")


def cmd_raney_cdf(args):
    _check_points(args)
    r = args.r
    xs = np.linspace(0.0, asymptotics.x_star(r), args.points)
    table = {
        "x": xs,
        "V": raney.cdf_V_array(xs, r, "phase"),
        "V_closed": raney.cdf_V_array(xs, r, "closed"),
    }
    _emit(args, table, _config(args), svg_x="x", svg_y=["V"], title=f"distribution function V, r={r}")


def cmd_raney_moments(args):
    r = args.r
    params = raney.RaneyParams.model(r)
    ks = list(range(args.kmax + 1))
    table = {
        "k": ks,
        "raney_number": [float(raney.raney_number(params, k)) for k in ks],
        "quadrature": [raney.moment_quadrature(k, r) for k in ks],
    }
    _emit(args, table, _config(args))


def cmd_raney_sample(args):
    vals = raney.sample(args.r, args.count, args.seed)
    cfg = _config(args)
    cfg.extra = {"count": args.count}
    _emit(args, {"index": list(range(len(vals))), "value": vals}, cfg)


def cmd_raney_stieltjes(args):
    r = args.r
    zs = [float(Fraction(z)) for z in args.z]
    table = {
        "z": zs,
        "F": [raney.stieltjes(z, r) for z in zs],
        "w": [raney.stieltjes_w(z, r) for z in zs],
        "F_quadrature": [raney.stieltjes_quadrature(z, r) for z in zs],
    }
    _emit(args, table, _config(args))


def cmd_simulate(args):
    nu = args.nu if args.nu is not None else [0] * (args.r - 1)
    config = rmt.EnsembleConfig(args.r, args.n, args.kappa, nu, args.trials, args.seed)
    mu = rmt.ensemble_run(config, jobs=args.jobs)
    table = {"index": list(range(len(mu))), "value": mu.atoms}
    _emit(args, table, _config(args))


def cmd_ks(args):
    vals = read_csv_column(args.input, args.column)
    if vals.size == 0:
        raise UsageError(f"no data in {args.input}")
    mu = empirics.EmpiricalMeasure(vals)
    d = empirics.ks_distance(mu, lambda x: raney.cdf_V_array(x, args.r))
    text = json.dumps({"ks": d}) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        atomic_write_text(args.out, text)


COMMANDS = {
    ("charpoly", "eval"): cmd_charpoly_eval,
    ("charpoly", "zeros"): cmd_charpoly_zeros,
    ("asymptotics", "compare"): cmd_asymptotics_compare,
    ("asymptotics", "fig1"): cmd_asymptotics_fig1,
    ("asymptotics", "phases"): cmd_asymptotics_phases,
    ("raney", "density"): cmd_raney_density,
    ("raney", "cdf"): cmd_raney_cdf,
    ("raney", "moments"): cmd_raney_moments,
    ("raney", "sample"): cmd_raney_sample,
    ("raney", "stieltjes"): cmd_raney_stieltjes,
    ("simulate", None): cmd_simulate,
    ("ks", None): cmd_ks,
}


def _fail(kind: str, exc: BaseException, code: int) -> int:
    reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
    sys.stderr.write(json.dumps({"error": kind, "reason": reason}) + "\n")
    return code


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        COMMANDS[(args.command, getattr(args, "action", None))](args)
    except (UsageError, DomainError, KeyError) as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except (NumericalFailure, CertificationError) as exc:
        return _fail("numeric", exc, EXIT_NUMERIC)
    except OSError as exc:
        return _fail("io", exc, EXIT_IO)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
