"""Benchmark the compiled Smith-reduction kernel against the pure twin.

The workloads are the package's real hot paths; all of them reduce
sparse, small-entry integer matrices whose intermediates stay inside the
compiled kernel's 64-bit guard range:

* the evenness decision for the all-factors class over Z/8 x Z/8 (the
  largest linear system in the acceptance suite) and the full per-class
  kernel of A for the same group;
* the quadratic-functor coinvariants of ker d_2 for Z/8 x Z/2
  (a 992 x 496 relation matrix);
* the Z-exactness check of the Q16 resolution (regular-representation
  boundary matrices).

A final row feeds the dispatcher a dense random matrix: its
intermediate entries blow past the guard almost immediately, the
compiled kernel raises, and the call transparently reruns on the
big-int kernel, so both backends tie there by construction.

Run:  python benchmarks/bench_kernels.py
"""

import random
import time

import obstruction_lab.intlinalg as la
from obstruction_lab.amap import AContext, a_of_class, kernel_of_A
from obstruction_lab.chains import standard_resolution
from obstruction_lab.forms import decide_even
from obstruction_lab.gamma import gamma_coinvariants, kernel_d2_lattice
from obstruction_lab.groups import parse_group_spec


def _backends():
    return ["compiled", "pure"] if la.BACKEND == "compiled" else ["pure"]


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return time.perf_counter() - t0, out


def bench_evenness():
    g = parse_group_spec("Z/8 x Z/8")
    ctx = AContext.build(g)
    mask = 1 << ctx.resolution.labels[3].index((1, 2))
    L = a_of_class(ctx, mask)
    print("evenness over Z/8 x Z/8 (576 ring unknowns, ~380 x ~290 system):")
    for name in _backends():
        la.set_backend(name)
        t1, v = _timed(lambda: decide_even(L))
        t2, ker = _timed(lambda: kernel_of_A(g))
        print(
            f"  {name:8s}: one class ({v.status}) {t1:5.2f} s;  "
            f"all 15 classes (kernel {len(ker.kernel_masks)}) {t2:5.2f} s",
            flush=True,
        )


def bench_gamma():
    g = parse_group_spec("Z/8 x Z/2")
    res = standard_resolution(g, 3)
    print("quadratic-functor coinvariants for Z/8 x Z/2 "
          "(rank-31 lattice, 992 x 496 relations):")
    for name in _backends():
        la.set_backend(name)

        def work():
            lat = kernel_d2_lattice(res)
            return gamma_coinvariants(lat)

        t, dec = _timed(work)
        print(
            f"  {name:8s}: torsion {dec['torsion']!r} in {t:5.2f} s",
            flush=True,
        )


def bench_exactness():
    g = parse_group_spec("Q16")
    res = standard_resolution(g, 5)
    print("Z-exactness of the Q16 resolution (blocks up to 32 x 32 over Z[G]):")
    for name in _backends():
        la.set_backend(name)
        t, ok = _timed(res.verify_exactness)
        print(f"  {name:8s}: exact={ok} in {t:5.2f} s", flush=True)


def bench_dense_fallback():
    rng = random.Random(3)
    M = [[rng.randint(-9, 9) for _ in range(24)] for _ in range(24)]
    la.set_backend("auto")
    t, _ = _timed(lambda: la.snf_diagonal(M))
    print(
        "dense random 24x24 through the dispatcher (guard trips, big-int "
        f"rerun): {t*1000:.1f} ms"
    )


if __name__ == "__main__":
    print(f"available kernels: {', '.join(_backends())}")
    bench_evenness()
    bench_gamma()
    bench_exactness()
    bench_dense_fallback()
    la.set_backend("auto")
