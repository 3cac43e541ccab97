"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from eulermahonian._kernels import compiled_backend, python_backend
from eulermahonian.colored_perm import GroupSpec
from eulermahonian.identities import group_arrays


def _random_poly(rng: random.Random, size: int, K: int) -> dict[int, int]:
    # grade in slot 0, two more variables in slots 1 and 2
    return {
        rng.randint(0, K) + (rng.randint(0, 8) << 24) + (rng.randint(0, 8) << 48): rng.randint(-9, 9) or 1
        for _ in range(size)
    }


def cases():
    rng = random.Random(20240601)
    a, b = _random_poly(rng, 400, 12), _random_poly(rng, 400, 12)
    p, m = _random_poly(rng, 300, 6), 1 + (1 << 24) + (1 << 48)
    letters, colors = group_arrays(GroupSpec(3, 5))
    return [
        ("mul_trunc 400x400 K=12", lambda be: be.mul_trunc(a, b, 0, 12)),
        ("geom_expand 300 terms K=40", lambda be: be.geom_expand(p, m, 0, 40)),
        ("wreath_statistics Z_3 wr S_5", lambda be: be.wreath_statistics(letters, colors, 3)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", python_backend)]
    if compiled_backend is not None:
        backends.append(("cython", compiled_backend))
    else:
        print("compiled backend not built; timing the Python backend only")
    print(f"{'kernel':32s}" + "".join(f"{name:>12s}" for name, _ in backends) + "     speedup")
    for label, fn in cases():
        times = []
        for _, be in backends:
            fn(be)  # warm up
            times.append(min(timeit.repeat(lambda: fn(be), number=1, repeat=args.repeat)))
        row = f"{label:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:8.1f}x"
        print(row)
        if len(backends) == 2:
            x, y = fn(python_backend), fn(compiled_backend)
            same = x.keys() == y.keys() and all(np.array_equal(x[k], y[k]) for k in x)
            assert same, f"backends disagree on {label}"


if __name__ == "__main__":
    main()
