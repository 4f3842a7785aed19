"""Compare the compiled and numpy kernels on pipeline-sized inputs.

Usage: python benchmarks/bench_kernels.py [--n 30000] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from tsgauss import kernels


def cases(n, rng):
    x = rng.normal(size=n)
    z = rng.normal(size=(n, 4))
    w = rng.dirichlet(np.ones(60))
    u = rng.uniform(size=n)
    return {
        "acov(lag 16)": lambda k: k.acov(x, 16),
        "acov(lag 400)": lambda k: k.acov(x, 400),
        "lrv_bartlett(bw 16)": lambda k: k.lrv_bartlett(x, 16),
        "lrcov_bartlett(4 cols, bw 16)": lambda k: k.lrcov_bartlett(z, 16),
        "project(60 weights)": lambda k: k.project(x, w),
        "clayton_chain": lambda k: k.clayton_chain(0.5, u, 2.0),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=30000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    rng = np.random.default_rng(0)
    print(f"n={args.n}, backends: {', '.join(backends)}")
    print(f"{'kernel':32s}" + "".join(f"{b + ' ms':>12s}" for b in backends) + f"{'speedup':>10s}")
    for name, fn in cases(args.n, rng).items():
        times = {}
        for b in backends:
            impl = kernels.get_backend(b)
            times[b] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat)) * 1e3
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{name:32s}" + "".join(f"{times[b]:12.3f}" for b in backends) + f"{speed:10.1f}x")


if __name__ == "__main__":
    main()
