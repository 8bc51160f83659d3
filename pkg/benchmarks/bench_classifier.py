"""Benchmark the classifier kernels: numba against the numpy fallback.

Times the three hot paths behind classify(): the all-maps table scan,
the constrained permutation scan, and the full-pair power-map check.
Each kernel is run once for warmup (numba compiles there) and then
timed over --repeat runs, reporting the best wall time.

Usage:
    python3 benchmarks/bench_classifier.py
    python3 benchmarks/bench_classifier.py --repeat 5 --power-prime 10007
"""

import argparse
import time

from sdmaps._kernels import canonical_pairs, inverse_table, load_kernels


def best_of(func, repeat):
    func()  # warmup; numba compilation lands here
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        func()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_backend(backend, all_maps_p, constrained_p, power_p, power_k, repeat):
    name, kernels = load_kernels(backend)
    rows = []

    inv = inverse_table(all_maps_p)
    xs, ys, args = canonical_pairs(all_maps_p)
    rows.append((
        f"all-maps scan p={all_maps_p}",
        best_of(lambda: kernels.scan_all_maps(all_maps_p, inv, xs, ys, args), repeat),
    ))

    inv = inverse_table(constrained_p)
    xs, ys, args = canonical_pairs(constrained_p)
    rows.append((
        f"constrained scan p={constrained_p}",
        best_of(lambda: kernels.scan_constrained(constrained_p, inv, xs, ys, args), repeat),
    ))

    inv = inverse_table(power_p)
    rows.append((
        f"power check p={power_p} k={power_k}",
        best_of(lambda: kernels.first_violation_power(power_p, power_k, inv), repeat),
    ))
    return name, rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timed runs per kernel")
    parser.add_argument("--all-maps-prime", type=int, default=7)
    parser.add_argument("--constrained-prime", type=int, default=13)
    parser.add_argument("--power-prime", type=int, default=1009)
    parser.add_argument("--power-exponent", type=int, default=3)
    args = parser.parse_args(argv)

    results = {}
    for backend in ("numba", "numpy"):
        try:
            name, rows = bench_backend(
                backend,
                args.all_maps_prime,
                args.constrained_prime,
                args.power_prime,
                args.power_exponent,
                args.repeat,
            )
        except RuntimeError as exc:
            print(f"{backend}: unavailable ({exc})")
            continue
        results[name] = rows

    if not results:
        return 1
    labels = [label for label, _ in next(iter(results.values()))]
    width = max(len(label) for label in labels)
    header = f"{'kernel':<{width}}" + "".join(f"  {name:>12}" for name in results)
    print(header)
    print("-" * len(header))
    for i, label in enumerate(labels):
        cells = "".join(f"  {rows[i][1]:>11.4f}s" for rows in results.values())
        print(f"{label:<{width}}{cells}")
    if len(results) == 2:
        numba_rows, numpy_rows = results.values()
        print("-" * len(header))
        for i, label in enumerate(labels):
            ratio = numpy_rows[i][1] / max(numba_rows[i][1], 1e-12)
            print(f"{label:<{width}}  numpy/numba = {ratio:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
