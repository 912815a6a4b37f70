#!/usr/bin/env python3
"""Benchmark: compiled reduction kernel vs the pure-Python twin.

The hot loop is the elementary-divisor reduction over Z/ell^n of the
multiplication lattice of a distinguished polynomial (dimension ell^n).
This script times both backends on the matrix sizes the order tables
actually use and on a full parameter-fit workload, and verifies that the
two backends return identical results while measuring.

Usage: python benchmarks/bench_kernels.py
"""

import time

from iwalambda._kernels import BACKEND
from iwalambda._kernels._snf_py import snf_mod_valuations as py_kernel
from iwalambda.iwasawa import ElementaryModuleSpec, _mult_matrix_mod, fit_parameters, level_order_table

try:
    from iwalambda._kernels._snf_cy import snf_mod_valuations as cy_kernel
except ImportError:
    cy_kernel = None


def timeit(fn, *args, repeat=5):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_matrices():
    print(f"active backend: {BACKEND}")
    print()
    print(f"{'matrix':<22} {'python':>12} {'cython':>12} {'speedup':>9}")
    f = (3, 6, 3, 1)
    g = (5, 10, 1)
    for ell, n in ((3, 3), (3, 4), (3, 5), (5, 2), (5, 3)):
        poly = f if ell == 3 else g
        M = _mult_matrix_mod(poly, ell, n, ell**n)
        t_py, r_py = timeit(py_kernel, [row[:] for row in M], ell, n)
        label = f"ell={ell} n={n} ({ell**n}x{ell**n})"
        if cy_kernel is None:
            print(f"{label:<22} {t_py*1e3:>10.2f}ms {'-':>12} {'-':>9}")
            continue
        t_cy, r_cy = timeit(cy_kernel, [row[:] for row in M], ell, n)
        assert r_py == r_cy, "backends disagree"
        print(f"{label:<22} {t_py*1e3:>10.2f}ms {t_cy*1e3:>10.2f}ms {t_py/t_cy:>8.1f}x")


def bench_fit_workload():
    spec = ElementaryModuleSpec(3, rho=1, polys=((3, 6, 3, 1), (6, 1)), mus=(1, 2))

    def run():
        table = level_order_table(spec, 2, 5)
        return fit_parameters(table, 3)

    import iwalambda._kernels as kernels

    results = {}
    for name, impl in (("python", py_kernel), ("cython", cy_kernel)):
        if impl is None:
            continue
        kernels.snf_mod_valuations = impl
        # iwasawa binds the name at import; patch through the module
        import iwalambda.iwasawa as iw

        iw.snf_mod_valuations = impl
        t, fit = timeit(run, repeat=3)
        results[name] = (t, fit)
    print()
    print("full order-table + fit (levels 2..5, two polynomials):")
    for name, (t, fit) in results.items():
        print(f"  {name:<8} {t*1e3:8.1f}ms   fit = (rho={fit.rho}, mu={fit.mu}, lambda={fit.lam}, nu={fit.nu})")
    if len(results) == 2:
        print(f"  speedup  {results['python'][0]/results['cython'][0]:8.1f}x")


if __name__ == "__main__":
    bench_matrices()
    bench_fit_workload()
