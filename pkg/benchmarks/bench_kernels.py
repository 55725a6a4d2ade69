"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends run identical workloads; the script also checks that their
results agree before reporting timings.
"""

import argparse
import math
import timeit

from capillary2d import _kernels_py as py

try:
    from capillary2d import _kernels as cy
except ImportError:
    cy = None


def quadrature_workload(k):
    # displacement across a near-critical attracting curve, where the integrand peaks sharply
    total = 0.0
    for delta in (1e-2, 1e-4, 1e-6, 1e-8):
        total += k.integrate(k.XI_REGULAR, delta, 0.0, 0.0, -1.5, 1.5, 1e-12, 1e-12, 2000)[0]
    return total


def half_width_workload(k):
    total = 0.0
    for j in range(1, 40):
        psi0 = 0.04 * j
        s0 = -math.cos(psi0)
        total += k.integrate(k.XI0_PARTS, 2 * math.sin(0.5 * psi0) ** 2, 1 - s0, s0, 0.0, -s0,
                             1e-12, 1e-12, 2000)[0]
    return total


def arclength_workload(k):
    # nearly critical, so the curve runs about 11 units before turning vertical
    out = k.arclength_run(0.0, 1e-4, 0.0, 1.0, 0.0, 20.0, 1e-3, 1e-10, 1e-9, 0.05, 1_000_000)
    return out[2][-1]


WORKLOADS = [("adaptive Gauss-Kronrod, near-critical", quadrature_workload),
             ("repelling half widths, 39 values", half_width_workload),
             ("Dormand-Prince arclength run", arclength_workload)]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if cy is None:
        print("compiled extension not built; timing the Python fallback only")
    print(f"{'workload':42s} {'python':>11s} {'compiled':>11s} {'speed-up':>9s}")
    for name, fun in WORKLOADS:
        t_py = min(timeit.repeat(lambda: fun(py), number=1, repeat=args.repeat))
        if cy is None:
            print(f"{name:42s} {t_py * 1e3:9.2f}ms {'-':>11s} {'-':>9s}")
            continue
        a, b = fun(py), fun(cy)
        if not math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-13):
            raise SystemExit(f"backends disagree on {name}: {a!r} vs {b!r}")
        t_cy = min(timeit.repeat(lambda: fun(cy), number=1, repeat=args.repeat))
        print(f"{name:42s} {t_py * 1e3:9.2f}ms {t_cy * 1e3:9.2f}ms {t_py / t_cy:8.1f}x")


if __name__ == "__main__":
    main()
