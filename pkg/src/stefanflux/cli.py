"""Command line front end.

Subcommands:
  solve      one reconstruction; writes report.json and flux_curve.csv
  sweep      grid of reconstructions; writes sweep.csv and table1_style.csv
  plotdata   per-noise-level curve series; writes flux_eps_<level>.csv and
             abs_error_eps_<level>.csv

Exit codes: 0 success, 2 configuration error, 3 numerical failure.  Flags
override values loaded from an optional key = value config file.  Floats in
CSV artifacts carry 17 significant digits so identical runs produce
byte-identical files.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

from .assembly import CollocationScheme, preset_scheme
from .errors import NumericalError, SingularMatrixError
from .experiments import SweepGrid, run_case, run_sweep
from .noise import MODES, NoiseSpec
from .problem import benchmark_problem, linear_boundary_problem, sqrt_boundary_problem

__all__ = ["main"]

SCHEMA_VERSION = 1

CONFIG_KEYS = {
    "benchmark": str, "family": str, "p0": float, "p1": float, "alpha": float,
    "t0": float, "diffusivity": float, "conductivity": float, "latent_heat": float,
    "density": float, "melt_temperature": float, "order": int, "orders": str,
    "beta": float, "betas": str, "scheme": str, "quad": int, "noise": str,
    "noise_mode": str, "seed": int, "seeds": str, "horizon": float, "horizons": str,
    "samples": int, "out": str, "jobs": int,
}


class ConfigError(ValueError):
    pass


def _fmt(value):
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _level_token(level):
    return format(level, "g")


def load_config(path):
    """Parse a flat key = value file into typed entries."""
    entries = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            entries[key] = CONFIG_KEYS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return entries


def _parse_scheme(text, quad):
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"scheme must be nD,nS,nI, got {text!r}")
    try:
        counts = [int(p) for p in parts]
    except ValueError as exc:
        raise ConfigError(f"scheme must contain integers: {exc}") from exc
    try:
        return CollocationScheme(*counts, quadrature_order=quad)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_list(text, kind):
    try:
        return tuple(kind(p) for p in str(text).split(",") if p.strip() != "")
    except ValueError as exc:
        raise ConfigError(f"bad list {text!r}: {exc}") from exc


def _merged(args, config):
    """Flag value if given, else config file value, else the supplied default."""
    def pick(name, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in config:
            return config[name]
        return default
    return pick


def _resolve_problem(pick):
    benchmark = pick("benchmark", None)
    family = pick("family", None)
    horizon = float(pick("horizon", 1.0))
    if benchmark is not None and family is not None:
        raise ConfigError("specify either benchmark or family, not both")
    if family is None:
        name = benchmark if benchmark is not None else "example1"
        try:
            return benchmark_problem(name, horizon)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    physical = dict(
        horizon=horizon,
        diffusivity=float(pick("diffusivity", 1.0)),
        conductivity=float(pick("conductivity", 1.0)),
        latent_heat=float(pick("latent_heat", 1.0)),
        density=float(pick("density", 1.0)),
        melt_temperature=float(pick("melt_temperature", 0.0)),
    )
    try:
        if family == "linear":
            return linear_boundary_problem(pick("p0", None), pick("p1", None), **physical)
        if family == "sqrt":
            return sqrt_boundary_problem(pick("alpha", None), pick("t0", None), **physical)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad {family} family parameters: {exc}") from exc
    raise ConfigError(f"family must be 'linear' or 'sqrt', got {family!r}")


def _common_flags(sub):
    sub.add_argument("--config", help="key = value config file; flags override it")
    sub.add_argument("--benchmark", choices=["example1", "example2"])
    sub.add_argument("--order", type=int, help="max basis order N (default 12)")
    sub.add_argument("--beta", type=float, help="damping parameter (default 0)")
    sub.add_argument("--scheme", help="partition counts nD,nS,nI (default preset for N)")
    sub.add_argument("--quad", type=int, help="quadrature order per subinterval (default 16)")
    sub.add_argument("--noise", help="noise level, or comma list where applicable (default 0)")
    sub.add_argument("--noise-mode", dest="noise_mode", choices=list(MODES))
    sub.add_argument("--seed", type=int, help="noise seed (default 0)")
    sub.add_argument("--horizon", type=float, help="time horizon T (default 1.0)")
    sub.add_argument("--samples", type=int, help="flux curve sample count (default 101)")
    sub.add_argument("--out", help="output directory (default .)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stefanflux",
        description="Reconstruct boundary heat flux of one-phase Stefan problems "
                    "by heat-polynomial collocation.")
    subs = parser.add_subparsers(dest="command", required=True)

    solve = subs.add_parser("solve", help="single reconstruction")
    _common_flags(solve)

    sweep = subs.add_parser("sweep", help="grid of reconstructions")
    _common_flags(sweep)
    sweep.add_argument("--orders", help="comma list of orders (default --order)")
    sweep.add_argument("--betas", help="comma list of betas (default --beta)")
    sweep.add_argument("--horizons", help="comma list of horizons (default --horizon)")
    sweep.add_argument("--seeds", help="comma list of seeds (default --seed)")
    sweep.add_argument("--jobs", type=int, help="worker processes (default 1)")

    plotdata = subs.add_parser("plotdata", help="flux curves per noise level")
    _common_flags(plotdata)

    return parser


def _solve_setup(pick):
    order = int(pick("order", 12))
    quad = int(pick("quad", 16))
    scheme_text = pick("scheme", None)
    if scheme_text is not None:
        scheme = _parse_scheme(scheme_text, quad)
    else:
        try:
            scheme = preset_scheme(order, quad)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return order, quad, scheme


def cmd_solve(pick):
    problem = _resolve_problem(pick)
    order, _, scheme = _solve_setup(pick)
    beta = float(pick("beta", 0.0))
    samples = int(pick("samples", 101))
    seed = int(pick("seed", 0))
    mode = pick("noise_mode", "relative")
    levels = _parse_list(pick("noise", "0"), float)
    if len(levels) != 1:
        raise ConfigError("solve takes a single noise level")
    try:
        noise = NoiseSpec(levels[0], seed, mode) if levels[0] > 0 else None
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    out = Path(pick("out", "."))
    out.mkdir(parents=True, exist_ok=True)

    report = run_case(problem, order, beta=beta, scheme=scheme, noise=noise,
                      flux_samples=samples)

    payload = {
        "schema_version": SCHEMA_VERSION,
        "problem": problem.label,
        "order": order,
        "beta": beta,
        "horizon": problem.horizon,
        "scheme": {
            "n_dirichlet": scheme.n_dirichlet,
            "n_stefan": scheme.n_stefan,
            "n_initial": scheme.n_initial,
            "quadrature_order": scheme.quadrature_order,
        },
        "noise": {"level": levels[0], "seed": seed, "mode": mode},
        "coefficients": list(report.coefficients),
        "delta_p": report.delta_p,
        "delta_u": report.delta_u,
        "condition_number": report.condition_number,
        "residual_norm": report.residual_norm,
        "relative_residual": report.relative_residual,
        "max_abs_flux_error": report.max_abs_flux_error,
        "flux_samples": samples,
    }
    with open(out / "report.json", "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    _write_csv(out / "flux_curve.csv",
               ["t", "ux0_reconstructed", "ux0_exact", "abs_error"],
               report.flux_curve)
    print(f"solve ok: delta_p={report.delta_p:.6g} delta_u={report.delta_u:.6g} "
          f"cond={report.condition_number:.6g}")
    return 0


def cmd_sweep(pick):
    benchmark = pick("benchmark", None)
    if pick("family", None) is not None:
        raise ConfigError("sweep supports benchmark problems only")
    orders = _parse_list(pick("orders", None) or pick("order", 12), int)
    betas = _parse_list(pick("betas", None) or pick("beta", 0.0), float)
    horizons = _parse_list(pick("horizons", None) or pick("horizon", 1.0), float)
    seeds = _parse_list(pick("seeds", None) or pick("seed", 0), int)
    levels = _parse_list(pick("noise", "0"), float)
    quad = int(pick("quad", 16))
    scheme_text = pick("scheme", None)
    scheme = _parse_scheme(scheme_text, quad) if scheme_text is not None else None
    jobs = int(pick("jobs", 1))
    out = Path(pick("out", "."))
    out.mkdir(parents=True, exist_ok=True)

    try:
        grid = SweepGrid(orders=orders, betas=betas, noise_levels=levels, seeds=seeds,
                         horizons=horizons,
                         benchmark=benchmark if benchmark is not None else "example1",
                         scheme_override=scheme, noise_mode=pick("noise_mode", "relative"),
                         quadrature_order=quad)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    result = run_sweep(grid, jobs=jobs)
    rows = result.aggregate()
    _write_csv(out / "sweep.csv",
               ["benchmark", "N", "beta", "eps", "seed_count", "T",
                "delta_p_median", "delta_p_iqr", "delta_u_median", "cond", "failures"],
               [(r.benchmark, r.order, r.beta, r.noise_level, r.seed_count, r.horizon,
                 r.delta_p_median, r.delta_p_iqr, r.delta_u_median, r.condition_number,
                 r.failures) for r in rows])

    # Pivot delta_p medians as beta rows by order columns for the first
    # (noise level, horizon) pair of the grid.
    eps0, t0 = grid.noise_levels[0], grid.horizons[0]
    cell = {(r.beta, r.order): r.delta_p_median for r in rows
            if r.noise_level == eps0 and r.horizon == t0}
    pivot = [[beta] + [cell.get((beta, order), float("nan")) for order in grid.orders]
             for beta in grid.betas]
    _write_csv(out / "table1_style.csv",
               ["beta"] + [f"N={order}" for order in grid.orders], pivot)
    failures = sum(r.failures for r in rows)
    print(f"sweep ok: {len(result.records)} cells, {failures} failures")
    return 0


def cmd_plotdata(pick):
    problem = _resolve_problem(pick)
    order, _, scheme = _solve_setup(pick)
    beta = float(pick("beta", 0.0))
    samples = int(pick("samples", 101))
    seed = int(pick("seed", 0))
    mode = pick("noise_mode", "relative")
    levels = _parse_list(pick("noise", "0"), float)
    if not levels:
        raise ConfigError("plotdata needs at least one noise level")
    out = Path(pick("out", "."))
    out.mkdir(parents=True, exist_ok=True)

    for level in levels:
        try:
            noise = NoiseSpec(level, seed, mode) if level > 0 else None
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        report = run_case(problem, order, beta=beta, scheme=scheme, noise=noise,
                          flux_samples=samples)
        token = _level_token(level)
        _write_csv(out / f"flux_eps_{token}.csv",
                   ["t", "ux0_reconstructed", "ux0_exact"],
                   [(t, rec, ref) for t, rec, ref, _ in report.flux_curve])
        _write_csv(out / f"abs_error_eps_{token}.csv",
                   ["t", "abs_error"],
                   [(t, err) for t, _, _, err in report.flux_curve])
    print(f"plotdata ok: {len(levels)} level(s) x {samples} samples")
    return 0


COMMANDS = {"solve": cmd_solve, "sweep": cmd_sweep, "plotdata": cmd_plotdata}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = load_config(args.config) if args.config else {}
        pick = _merged(args, config)
        return COMMANDS[args.command](pick)
    except (ConfigError, ValueError) as exc:
        print(json.dumps({"error": "config_error", "message": str(exc)}), file=sys.stderr)
        return 2
    except SingularMatrixError as exc:
        print(json.dumps({"error": "singular_matrix", "message": str(exc)}), file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(json.dumps({"error": "numerical_error", "message": str(exc)}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
