"""Compare the compiled and pure-Python jet kernels.

Usage: python benchmarks/bench_kernels.py [--order N] [--repeat R]

Each backend multiplies random dense jets with large-integer
coefficients and runs the same axpy workload; results are checked for
exact agreement before timings are reported.
"""

import argparse
import random
import timeit

from crnormal import _pykernels
from crnormal.kernels import tri_size


def random_jet(rng, order, density, bits):
    n = tri_size(order)
    re = [rng.getrandbits(bits) - (1 << (bits - 1)) if rng.random() < density else 0 for _ in range(n)]
    im = [rng.getrandbits(bits) - (1 << (bits - 1)) if rng.random() < density else 0 for _ in range(n)]
    return re, im


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--bits", type=int, default=96)
    ap.add_argument("--density", type=float, default=0.6)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    try:
        from crnormal import _ckernels
    except ImportError:
        print("compiled kernels unavailable; only the Python backend was timed")
        _ckernels = None

    rng = random.Random(args.seed)
    a = random_jet(rng, args.order, args.density, args.bits)
    b = random_jet(rng, args.order, args.density, args.bits)
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
        assert _ckernels.mul_trunc(*a, *b, args.order) == _pykernels.mul_trunc(*a, *b, args.order)
        assert _ckernels.axpy(*a, *b, 3, -7, 5) == _pykernels.axpy(*a, *b, 3, -7, 5)

    print(f"order={args.order} size={tri_size(args.order)} bits={args.bits} repeat={args.repeat}")
    base = {}
    for kernel in ("mul_trunc", "axpy"):
        for name, mod in backends.items():
            fn = getattr(mod, kernel)
            if kernel == "mul_trunc":
                call = lambda: fn(*a, *b, args.order)  # noqa: E731
            else:
                call = lambda: fn(*a, *b, 3, -7, 5)  # noqa: E731
            t = min(timeit.repeat(call, number=args.repeat, repeat=3)) / args.repeat
            base.setdefault(kernel, t)
            print(f"{kernel:10s} {name:7s} {t * 1e3:9.3f} ms  speedup x{base[kernel] / t:5.2f}")


if __name__ == "__main__":
    main()
