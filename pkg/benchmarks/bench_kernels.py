"""Time the compiled and numpy kernels on the same inputs.

    python benchmarks/bench_kernels.py [--sizes 100 1000 4000] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from qheatpump import kernels, reference_baths, reference_protocol, discretize
from qheatpump.dynamics import schedule_rates
from qheatpump.units import DEFAULT_UNITS


def inputs(n):
    sched = discretize(reference_protocol(5e12), n)
    rates = schedule_rates(sched, reference_baths())
    dt = sched.delta_t * DEFAULT_UNITS.omega0_rad_per_s
    lam = np.asarray(rates.Lambda, dtype=float)
    rho_s = np.asarray(rates.rho_s, dtype=float)
    return np.asarray(rates.A_R, dtype=float), lam, rho_s, dt


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 1000, 4000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    print(f"default backend: {kernels.BACKEND}; available: {', '.join(backends)}")
    print(f"{'kernel':<18}{'n':>7}" + "".join(f"{b + ' [s]':>16}" for b in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        A, lam, rho_s, dt = inputs(n)
        cases = {
            "propagate": lambda b: kernels.propagate(lam, rho_s, dt, 0.7, backend=b),
            "nonadiabatic_sums": lambda b: kernels.nonadiabatic_sums(A, lam, rho_s, dt, 0.1, backend=b),
        }
        for name, call in cases.items():
            times = {b: best(lambda b=b: call(b), args.repeat) for b in backends}
            speed = times["python"] / times["cython"] if "cython" in times else float("nan")
            cols = "".join(f"{times[b]:>16.3e}" for b in backends)
            print(f"{name:<18}{n:>7}{cols}{speed:>9.1f}x")


if __name__ == "__main__":
    main()
