"""``qheatpump`` command-line front end.

Exit status is 0 on success, 2 for an invalid configuration and 3 when a
quadrature fails to converge.
"""
from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .adiabatic import adiabatic_currents
from .config import BETA0, ExperimentConfig
from .correlation import relative_error_trace, traces_to_csv
from .decomposition import decompose, dynamical_part, geometric_net_current, geometric_part
from .dynamics import accumulate_flux, propagate_population
from .errors import DomainError, QuadratureError, ValidationError
from .protocol import discretize

THREADS_ENV = "QHEATPUMP_THREADS"

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _write_rows(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _ordered_map(fn, items, threads):
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def _beta_label(cfg, beta, schedule):
    if beta != BETA0:
        return _fmt(beta)
    rho = cfg.initial_population(BETA0, schedule)
    return _fmt(math.log(rho / (1.0 - rho)))


# --------------------------------------------------------------- experiments
def run_flux_sweep(cfg: ExperimentConfig, out, threads: int = 1) -> list[list[str]]:
    """Rows ``Omega_THz, beta_s, J_hat_per_s, J_hat_geo_per_s`` (Omega outer)."""
    baths, units = cfg.baths(), cfg.units()

    def one_omega(omega):
        sched = cfg.schedule(omega)
        j_geo = geometric_net_current(sched, baths, units)
        rows = []
        for beta in cfg.beta_s:
            rho0 = cfg.initial_population(beta, sched)
            rec = accumulate_flux(sched, baths, rho0, units, cfg.period_count)
            rows.append([_fmt(omega), _beta_label(cfg, beta, sched), _fmt(rec.J_hat), _fmt(j_geo)])
        return rows

    rows = [r for block in _ordered_map(one_omega, cfg.omegas(), threads) for r in block]
    _write_rows(out, ["Omega_THz", "beta_s", "J_hat_per_s", "J_hat_geo_per_s"], rows)
    return rows


def _single(cfg: ExperimentConfig):
    omegas = cfg.omegas()
    if len(omegas) != 1 or len(cfg.beta_s) != 1:
        raise ValidationError("omega_THz, beta_s: this experiment needs exactly one value of each")
    return omegas[0], cfg.beta_s[0]


def run_decompose(cfg: ExperimentConfig, out, threads: int = 1):
    omega, beta = _single(cfg)
    baths, units = cfg.baths(), cfg.units()
    sched = cfg.schedule(omega)
    rho0 = cfg.initial_population(beta, sched)
    dec = decompose(sched, baths, rho0, units, cfg.period_count)
    dec.to_csv(out)
    if cfg.trajectory_out:
        full = sched.repeat(cfg.period_count) if cfg.period_count > 1 else sched
        propagate_population(full, baths, rho0, units).to_csv(cfg.trajectory_out)
    return dec


def run_phi0_profile(cfg: ExperimentConfig, out, threads: int = 1) -> list[Path]:
    """One ``j,phi0_hat`` file per frequency; several frequencies get ``_<Omega>THz`` suffixes."""
    if len(cfg.beta_s) != 1:
        raise ValidationError("beta_s: phi0-profile needs exactly one value")
    beta = cfg.beta_s[0]
    baths, units = cfg.baths(), cfg.units()
    omegas = cfg.omegas()
    out = Path(out)
    if len(omegas) == 1:
        paths = [out]
    else:
        paths = [out.with_name(f"{out.stem}_{omega:g}THz{out.suffix}") for omega in omegas]

    def one(item):
        omega, path = item
        sched = cfg.schedule(omega)
        dec = decompose(sched, baths, cfg.initial_population(beta, sched), units, cfg.period_count)
        dec.profile_to_csv(path)
        return path

    return _ordered_map(one, list(zip(omegas, paths)), threads)


def run_lambda_trace(cfg: ExperimentConfig, out, threads: int = 1):
    traces = relative_error_trace(
        cfg.baths(), cfg.temperature_settings(), cfg.time_grid(), cfg.units(), threads=threads
    )
    traces_to_csv(traces, out)
    return traces


def run_geometric(cfg: ExperimentConfig, out, threads: int = 1) -> list[list[str]]:
    """Rows ``method,J1_R,J2_R,quad_err`` for the continuous forms and Riemann sums."""
    if cfg.schedule_csv:
        raise ValidationError("schedule_csv: geometric needs the sinusoidal protocol")
    omegas = cfg.omegas()
    if len(omegas) != 1:
        raise ValidationError("omega_THz: geometric needs exactly one value")
    baths, units = cfg.baths(), cfg.units()
    protocol = cfg.protocol(omegas[0])
    res = adiabatic_currents(protocol, baths, units)
    errs = res.quadrature_errors
    rows = [
        ["line", _fmt(res.J1_R), _fmt(res.J2_R_line), _fmt(max(errs["J1_R"], errs["J2_R_line"]))],
        ["surface", _fmt(res.J1_R), _fmt(res.J2_R_surface), _fmt(max(errs["J1_R"], errs["J2_R_surface"]))],
    ]

    def riemann(n):
        sched = discretize(protocol, n, cfg.sampling)
        g1 = dynamical_part(sched, baths, units)["R"] / sched.period
        g2 = geometric_part(sched, baths, units)["R"] / sched.period
        return [f"riemann_n{n}", _fmt(g1), _fmt(g2), ""]

    rows += _ordered_map(riemann, list(cfg.riemann_n), threads)
    _write_rows(out, ["method", "J1_R", "J2_R", "quad_err"], rows)
    return rows


EXPERIMENTS = {
    "flux-sweep": run_flux_sweep,
    "decompose": run_decompose,
    "phi0-profile": run_phi0_profile,
    "lambda-trace": run_lambda_trace,
    "geometric": run_geometric,
}


# ----------------------------------------------------------------------- cli
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qheatpump", description="Heat pumping through a two-level junction."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="INI file with an [experiment] section")
        p.add_argument("--out", help="output CSV (overrides 'out' in the config)")
        p.add_argument(
            "--threads", type=int, help=f"worker threads (default: ${THREADS_ENV} or 1)"
        )
    return parser


def _threads(arg) -> int:
    if arg is not None:
        value = arg
    else:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            value = int(raw)
        except ValueError:
            raise ValidationError(f"{THREADS_ENV}: expected an integer, got {raw!r}") from None
    if value < 1:
        raise ValidationError("threads: must be >= 1")
    return value


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = ExperimentConfig.from_file(args.config)
        out = args.out or cfg.out
        if not out:
            raise ValidationError("out: no output path given (use --out or 'out' in the config)")
        EXPERIMENTS[args.command](cfg, out, _threads(args.threads))
    except (ValidationError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
