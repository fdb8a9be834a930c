"""Compare the compiled GF(2) kernels against the pure-Python fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import random
import time

from icsie import _gf2pure as pure

try:
    from icsie import _gf2fast as fast
except ImportError:
    fast = None

from icsie import ProblemSpec, clique_graph, optimal_length


def timeit(fn, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def bench_kernel(name, make_args, call, reps):
    args = make_args()
    t_pure = timeit(lambda: call(pure, *args), reps)
    if fast is None:
        print(f"{name:22s} pure {t_pure * 1e6:9.1f} us   (compiled not built)")
        return
    t_fast = timeit(lambda: call(fast, *args), reps)
    print(f"{name:22s} pure {t_pure * 1e6:9.1f} us   compiled "
          f"{t_fast * 1e6:9.1f} us   speedup {t_pure / t_fast:6.1f}x")


def main():
    rng = random.Random(42)

    def rank_args():
        return ([rng.getrandbits(24) for _ in range(24)],)

    def mulvec_args():
        cols = [rng.getrandbits(20) for _ in range(16)]
        return (rng.getrandbits(20), cols)

    def failing_args():
        zs = [rng.getrandbits(16) for _ in range(2000)]
        cols = [rng.getrandbits(16) for _ in range(10)]
        return (zs, cols, 3)

    def span_args():
        basis = [rng.getrandbits(14) for _ in range(12)]
        fmasks = [1 << rng.randrange(14) for _ in range(8)]
        xmasks = [rng.getrandbits(14) for _ in range(8)]
        return (basis, fmasks, xmasks, [2] * 8)

    bench_kernel("gf2_rank", rank_args,
                 lambda m, rows: m.gf2_rank(rows), 2000)
    bench_kernel("gf2_mul_vec", mulvec_args,
                 lambda m, z, c: m.gf2_mul_vec(z, c), 5000)
    bench_kernel("gf2_first_failing", failing_args,
                 lambda m, z, c, k: m.gf2_first_failing(z, c, k), 200)
    bench_kernel("gf2_span_intersects", span_args,
                 lambda m, b, f, x, cp: m.gf2_span_intersects(b, f, x, cp), 50)

    # end-to-end: the clique-8 optimal-length search stresses the span walk
    import icsie.kernels as kernels
    spec = ProblemSpec(graph=clique_graph(8), q=2, delta_s=1)
    for label, module in (("compiled", fast), ("pure", pure)):
        if module is None:
            continue
        kernels.gf2_rank = module.gf2_rank
        kernels.gf2_mul_vec = module.gf2_mul_vec
        kernels.gf2_first_failing = module.gf2_first_failing
        kernels.gf2_span_intersects = module.gf2_span_intersects
        t0 = time.perf_counter()
        N, _ = optimal_length(spec)
        print(f"clique-8 search ({label:8s}) N={N}  "
              f"{time.perf_counter() - t0:6.2f} s")


if __name__ == "__main__":
    main()
