"""Compiled vs pure-Python radial kernels.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.  Prints the
per-call time of each kernel for both backends and the speed-up.
"""

import argparse
import timeit

from cmcgraph import _pycore

try:
    from cmcgraph import _core
except ImportError:
    _core = None

CASES = {
    "u_state(p=4, r=0.5)": lambda k: k.u_state(4, 0.5),
    "u_state(p=7, r=12)": lambda k: k.u_state(7, 12.0),
    "w_state(p=2, c=6, lor, r=3)": lambda k: k.w_state(2, 6.0, True, 3.0),
    "phi_value(p=2, c=2, rie, r=5)": lambda k: k.phi_value(2, 2.0, False, 5.0, 1e-12, 1_000_000),
    "phi_value(p=4, c=10, lor, r=3)": lambda k: k.phi_value(4, 10.0, True, 3.0, 1e-12, 1_000_000),
}


def per_call(fn, module, repeat):
    timer = timeit.Timer(lambda: fn(module))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _core is None:
        print("compiled extension not built; only the Python backend is timed")
    print(f"{'kernel':34s} {'python':>12s} {'cython':>12s} {'speed-up':>9s}")
    for name, fn in CASES.items():
        t_py = per_call(fn, _pycore, args.repeat)
        if _core is None:
            print(f"{name:34s} {t_py * 1e6:10.2f}us {'-':>12s} {'-':>9s}")
            continue
        t_cy = per_call(fn, _core, args.repeat)
        print(f"{name:34s} {t_py * 1e6:10.2f}us {t_cy * 1e6:10.2f}us {t_py / t_cy:8.1f}x")


if __name__ == "__main__":
    main()
