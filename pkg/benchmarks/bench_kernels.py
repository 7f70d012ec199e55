"""Time the numba and numpy leakage kernels on the (5x5,2)^K scenarios.

    python3 benchmarks/bench_kernels.py [--batch 100] [--repeat 20]

Both kernels are called directly, so the ``IASWARM_DISABLE_NUMBA`` flag
only matters in that it removes the numba column.
"""
import argparse
import timeit

import numpy as np

from iaswarm import _accel, generate_channels, make_scenario
from iaswarm.kernels import leakage_batch_numba, leakage_batch_numpy, make_layout
from iaswarm.mimo import count_variables


def bench(K, batch, repeat):
    spec = make_scenario(K, 5, 5, 2)
    H = generate_channels(spec, 0)
    layout = make_layout(spec.M, spec.N, spec.d, H.H)
    X = np.random.default_rng(0).uniform(-1, 1, (batch, count_variables(spec)[1]))
    kernels = {"numpy": leakage_batch_numpy}
    if _accel.USE_NUMBA:
        kernels["numba"] = leakage_batch_numba
        leakage_batch_numba(X, layout)       # compile outside the timing
    times = {}
    for name, kern in kernels.items():
        t = min(timeit.repeat(lambda: kern(X, layout), number=1, repeat=repeat))
        times[name] = t / batch
    if "numba" in times:
        np.testing.assert_allclose(leakage_batch_numba(X, layout),
                                   leakage_batch_numpy(X, layout), rtol=1e-12)
    return spec, times


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=100)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    print(f"{'scenario':<12}{'numpy us/eval':>15}{'numba us/eval':>15}{'speedup':>10}")
    for K in (3, 7, 13):
        spec, t = bench(K, args.batch, args.repeat)
        nb = t.get("numba")
        print(f"{spec.label:<12}{1e6 * t['numpy']:>15.2f}"
              + (f"{1e6 * nb:>15.2f}{t['numpy'] / nb:>9.1f}x" if nb else f"{'n/a':>15}"))


if __name__ == "__main__":
    main()
