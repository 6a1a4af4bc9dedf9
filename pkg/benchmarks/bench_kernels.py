"""Time the numba kernels against the pure-numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--n 200000] [--repeat 5]``.
Each backend is warmed once so numba compile time is excluded.
"""

import argparse
import timeit

import numpy as np

from vaguespace import kernels
from vaguespace.algebra import AlgebraTriple, TNorm
from vaguespace.expr import ElementaryAttributeSet, enumerate_exprs
from vaguespace.props import sample_degrees
from vaguespace.space import SpaceBatch

BACKENDS = {"numba": kernels.numba_backend, "numpy": kernels.numpy_backend}


def bench(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000, help="rows per kernel call")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    x, y = rng.uniform(size=args.n), rng.uniform(size=args.n)
    deg = rng.dirichlet(np.ones(4), size=args.n)
    neg = 1.0 - deg

    rows = []
    for fam in TNorm:
        for name, be in BACKENDS.items():
            rows.append((f"tnorm[{fam.value}]", name, bench(lambda: be.tnorm(fam.code, x, y), args.repeat)))
            rows.append((f"residuum[{fam.value}]", name, bench(lambda: be.residuum(fam.code, x, y), args.repeat)))
    for name, be in BACKENDS.items():
        rows.append(("axiom_flags[4 attrs]", name, bench(lambda: be.axiom_flags(2, 2, 0, deg, neg, 1e-9), args.repeat)))

    # end-to-end: whatever backend the package selected at import time
    alg = AlgebraTriple(TNorm.LUKASIEWICZ)
    omega = ElementaryAttributeSet(("a", "b", "c"))
    exprs = list(enumerate_exprs(omega, 2))

    def sampling():
        sample_degrees(np.random.default_rng(1), alg, 3, 2000)

    def batch_eval():
        b = SpaceBatch(omega, alg, sample_degrees(np.random.default_rng(1), alg, 3, 500).degrees)
        for e in exprs:
            b.evaluate(e)

    rows.append(("rejection sampling 2000", kernels.BACKEND, bench(sampling, args.repeat)))
    rows.append((f"batch eval 500 x {len(exprs)}", kernels.BACKEND, bench(batch_eval, 1)))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  backend  seconds")
    for label, name, t in rows:
        print(f"{label:<{width}}  {name:<7}  {t:.5f}")


if __name__ == "__main__":
    main()
