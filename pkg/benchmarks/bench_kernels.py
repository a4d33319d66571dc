"""Compare the numba and numpy closure kernels on subgroup saturation.

Two measurements per group:

* ``kernel``: the raw closure kernel on every single-element extension of the
  trivial subgroup (the hot call pattern inside saturation).
* ``saturate``: the full one-element-extension fixpoint that enumerates every
  subgroup mask.

Run as ``python3 benchmarks/bench_kernels.py [--groups S3,S4,S5] [--repeats 5]``.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from francy_forge import _kernels, groups


def _seed_masks(n: int) -> list[np.ndarray]:
    seeds = []
    for g in range(1, n):
        mask = np.zeros(n, dtype=np.bool_)
        mask[0] = True
        mask[g] = True
        seeds.append(mask)
    return seeds


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_group(name: str, repeats: int) -> None:
    group = {
        "S3": lambda: groups.symmetric_group(3),
        "S4": lambda: groups.symmetric_group(4),
        "S5": lambda: groups.symmetric_group(5),
    }[name]()
    table, inv = groups._index_tables(group)
    seeds = _seed_masks(table.shape[0])

    backends = [("numpy", _kernels.closure_mask_numpy)]
    if _kernels.closure_mask_numba is not None:
        backends.insert(0, ("numba", _kernels.closure_mask_numba))

    # Correctness gate before timing: both backends must agree on every seed.
    reference = [_kernels.closure_mask_numpy(table, inv, s) for s in seeds]
    for label, fn in backends:
        for seed, expected in zip(seeds, reference):
            got = fn(table, inv, seed)
            assert np.array_equal(got, expected), f"{label} disagrees on {name}"

    results = {}
    for label, fn in backends:
        fn(table, inv, seeds[0])  # warm any jit compilation out of the timing
        kernel = _time(lambda: [fn(table, inv, s) for s in seeds], repeats)
        saturate = _time(
            lambda: groups._saturate_masks(table, inv, closure_fn=fn), repeats
        )
        count = len(groups._saturate_masks(table, inv, closure_fn=fn))
        results[label] = (kernel, saturate, count)

    counts = {c for _, _, c in results.values()}
    assert len(counts) == 1, f"backends found different subgroup counts: {counts}"

    print(f"\n{name}  (order {group.order}, {counts.pop()} subgroups)")
    print(f"  {'backend':<8} {'kernel':>12} {'saturate':>12}")
    for label, (kernel, saturate, _) in results.items():
        print(f"  {label:<8} {kernel * 1e3:>10.3f}ms {saturate * 1e3:>10.3f}ms")
    if len(results) == 2:
        ratio = results["numpy"][1] / results["numba"][1]
        print(f"  numba speedup on saturate: {ratio:.1f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--groups", default="S3,S4,S5",
                        help="comma-separated subset of S3,S4,S5")
    parser.add_argument("--repeats", type=int, default=5,
                        help="repeat count; best time is reported")
    args = parser.parse_args()

    print(f"active backend: {_kernels.kernel_backend()}")
    for name in args.groups.split(","):
        bench_group(name.strip().upper(), args.repeats)


if __name__ == "__main__":
    main()
