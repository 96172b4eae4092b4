"""Time the compiled and pure-Python quadrature kernels on identical workloads.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--number N]
"""
import argparse
import timeit

from relfd import _pykernels
from relfd.oracle import _breakpoints
from relfd._pykernels import KIND_FD

try:
    from relfd import _ckernels
except ImportError:
    _ckernels = None

# (q, eta, beta, tol): one per regime the oracle sees in practice
CASES = [
    (0.75, -7.0, 10.5, 1e-13),
    (0.25, 5.0, 4 / 3, 1e-13),
    (1.5, 30.0, 10.5, 1e-13),
    (2.4, 4.5, 100.0, 1e-14),
    (-0.5, 2.0, 0.0, 1e-12),
]


def _pexp(q):
    if q < 0:
        return 1.0 / (q + 1.0)
    return 0.0 if q == int(q) else 4.0


def run(backend, case):
    q, eta, beta, tol = case
    return backend.integrate(KIND_FD, (q, eta, beta), _breakpoints(eta), _pexp(q), tol * 1e-300, tol, 4000)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=20)
    args = ap.parse_args()

    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.insert(0, ("cython", _ckernels))
    else:
        print("compiled kernel not built; timing the pure-Python backend only")

    print(f"{'q':>6} {'eta':>6} {'beta':>7} " + " ".join(f"{n + ' [ms]':>13}" for n, _ in backends)
          + ("   speedup  max|diff|" if len(backends) == 2 else ""))
    total = {n: 0.0 for n, _ in backends}
    for case in CASES:
        times, values = [], []
        for name, mod in backends:
            t = min(timeit.repeat(lambda: run(mod, case), repeat=args.repeat, number=args.number)) / args.number
            total[name] += t
            times.append(t)
            values.append(run(mod, case)[0])
        line = f"{case[0]:>6g} {case[1]:>6g} {case[2]:>7.4g} " + " ".join(f"{1e3 * t:>13.3f}" for t in times)
        if len(backends) == 2:
            line += f"   {times[1] / times[0]:>7.1f}x  {abs(values[0] - values[1]):.1e}"
        print(line)
    if len(backends) == 2:
        print(f"overall speedup: {total['python'] / total['cython']:.1f}x")


if __name__ == "__main__":
    main()
