#!/usr/bin/env python3
"""numba vs numpy kernels: rref, ring multiplication and the full pipeline.

    python benchmarks/bench_kernels.py [--repeat 3]

Outputs of both backends are compared before timings are reported.
"""
import argparse
import time

import numpy as np

from mcc import kernels
from mcc._accel import HAVE_NUMBA
from mcc.gf import FieldSpec
from mcc.ideal import Code
from mcc.qring import RingSpec
from mcc.sepasdar import sepasdar_basis


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def random_codes(rng, field, rows, cols, density=0.4):
    vals = rng.integers(1, field.q, size=(rows, cols))
    return np.where(rng.random((rows, cols)) < density, vals, 0).astype(np.int64)


def cases(rng):
    for q in (2, 9):
        field = FieldSpec.of_order(q)
        for rows, cols in ((64, 64), (256, 256), (512, 1024)):
            M = random_codes(rng, field, rows, cols)
            yield f"rref GF({q}) {rows}x{cols}", lambda M=M, f=field: kernels.rref(M, f.tables)
        for rho in ((8, 8), (16, 16), (16, 8, 8)):
            spec = RingSpec(field, rho)
            f_, g_ = random_codes(rng, field, 2, spec.n)
            rho_arr = np.array(rho)
            yield (
                f"ring_mul GF({q}) rho={rho}",
                lambda f_=f_, g_=g_, s=spec, r=rho_arr: kernels.ring_mul(f_, g_, s.exps, r, s.strides, s.field.tables),
            )
        spec = RingSpec(field, (6, 6, 4))
        gens = [spec.random(rng, 0.3), spec.random(rng, 0.3)]

        def pipeline(spec=spec, gens=gens):
            basis = sepasdar_basis(Code(spec, gens))
            return np.stack([m.poly.coeffs for m in basis.members])

        yield f"pipeline GF({q}) rho=(6, 6, 4)", pipeline


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    # compile once so JIT time is not counted
    t0 = time.perf_counter()
    with kernels.use_backend("numba"):
        for _, fn in cases(np.random.default_rng(args.seed)):
            fn()
    print(f"numba warmup: {time.perf_counter() - t0:.2f}s\n")

    print(f"{'case':<36} {'numpy (s)':>10} {'numba (s)':>10} {'speedup':>8}  same")
    print("-" * 74)
    for name, fn in cases(np.random.default_rng(args.seed)):
        with kernels.use_backend("numpy"):
            t_np, out_np = best_of(fn, args.repeat)
        with kernels.use_backend("numba"):
            t_nb, out_nb = best_of(fn, args.repeat)
        a = out_np if isinstance(out_np, tuple) else (out_np,)
        b = out_nb if isinstance(out_nb, tuple) else (out_nb,)
        same = all(np.array_equal(x, y) for x, y in zip(a, b))
        print(f"{name:<36} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x  {'ok' if same else 'DIFF'}")


if __name__ == "__main__":
    main()
