"""Time the census kernels: compiled core against the pure-Python fallback.

    python3 benchmarks/bench_census.py --q 7 25 27 101 --repeat 3
"""
import argparse
import time

from ellstat import kernels
from ellstat.arith import prime_power
from ellstat.ffield import make_field, tables_for


def run_backend(backend, T):
    start = time.perf_counter()
    orbs = backend.orbits(T)
    models = [o[:5] for o in orbs]
    inv = backend.invariants(T, models)
    return time.perf_counter() - start, orbs, inv


def best_of(backend, T, repeat):
    best = None
    for _ in range(repeat):
        elapsed, orbs, inv = run_backend(backend, T)
        best = elapsed if best is None else min(best, elapsed)
    return best, orbs, inv


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--q", type=int, nargs="+", default=[7, 13, 25, 27, 32, 101])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    if kernels.compiled_kernels is None:
        raise SystemExit("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`")

    print(f"{'q':>6} {'classes':>8} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for q in args.q:
        T = tables_for(make_field(*prime_power(q)))
        fast, orbs_c, inv_c = best_of(kernels.compiled_kernels, T, args.repeat)
        slow, orbs_p, inv_p = best_of(kernels.python_kernels, T, args.repeat)
        if orbs_c != orbs_p or inv_c != inv_p:
            raise SystemExit(f"q = {q}: backends disagree")
        print(f"{q:>6} {len(orbs_c):>8} {fast:>11.4f} {slow:>10.4f} {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
