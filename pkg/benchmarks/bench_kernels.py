"""Compiled versus pure-Python kernels.

Times the hot loops of the exact search (interval recognition on adjacency
bitmasks and candidate-box filtering) in both implementations, checks that
they agree, and times one end-to-end boxicity search per backend in a
subprocess (the backend is chosen at import via ``BOXREP_PURE``).

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 0]
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from boxrep._accel import COMPILED, kernels, pure_kernels


def random_masks(rng: random.Random, count: int, n: int, p: float) -> list[list[int]]:
    out = []
    for _ in range(count):
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        out.append(adj)
    return out


def random_boxes(rng: random.Random, count: int, d: int, span: int) -> tuple[list[list[int]], list[list[int]]]:
    lo, hi = [], []
    for _ in range(count):
        a = [rng.randrange(span) for _ in range(d)]
        lo.append(a)
        hi.append([x + 1 + rng.randrange(span // 2) for x in a])
    return lo, hi


def bench(label: str, fn, repeat: int) -> float:
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<10} {best * 1e3:9.2f} ms")
    return best


END_TO_END = (
    "import time; from boxrep.graph import Graph; from boxrep.oracle import exact_boxicity; "
    "g = Graph.from_edges(8, [(i, j) for i in range(8) for j in range(i + 1, 8) if j != i + 4]); "
    "t = time.perf_counter(); r = exact_boxicity(g, 4); "
    "print(r.value, time.perf_counter() - t)"
)


def end_to_end(pure: bool) -> tuple[str, float]:
    env = dict(os.environ)
    env.pop("BOXREP_PURE", None)
    if pure:
        env["BOXREP_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, check=True, capture_output=True, text=True)
    value, secs = out.stdout.split()
    return value, float(secs)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    print(f"compiled kernels available: {COMPILED}")

    masks = random_masks(rng, 2000, 10, 0.85)
    want = [pure_kernels.is_interval_mask(a) for a in masks]
    assert [kernels.is_interval_mask(a) for a in masks] == want, "interval kernels disagree"
    print(f"is_interval_mask on {len(masks)} graphs, n=10 ({sum(want)} interval)")
    t_pure = bench("pure", lambda: [pure_kernels.is_interval_mask(a) for a in masks], args.repeat)
    t_fast = bench("selected", lambda: [kernels.is_interval_mask(a) for a in masks], args.repeat)
    print(f"  speedup    {t_pure / t_fast:9.1f}x")

    cand_lo, cand_hi = random_boxes(rng, 4000, 3, 20)
    placed_lo, placed_hi = random_boxes(rng, 12, 3, 20)
    wanted = [rng.random() < 0.5 for _ in placed_lo]
    for strict in (False, True):
        ref = pure_kernels.filter_boxes(cand_lo, cand_hi, placed_lo, placed_hi, wanted, strict)
        got = kernels.filter_boxes(cand_lo, cand_hi, placed_lo, placed_hi, wanted, strict)
        assert list(got) == ref, "filter kernels disagree"
    print(f"filter_boxes, {len(cand_lo)} candidates against {len(placed_lo)} placed boxes")
    t_pure = bench("pure", lambda: pure_kernels.filter_boxes(cand_lo, cand_hi, placed_lo, placed_hi, wanted, True), args.repeat)
    t_fast = bench("selected", lambda: kernels.filter_boxes(cand_lo, cand_hi, placed_lo, placed_hi, wanted, True), args.repeat)
    print(f"  speedup    {t_pure / t_fast:9.1f}x")

    print("exact_boxicity(K8 minus a perfect matching), one process per backend")
    results = {}
    for pure in (True, False):
        value, secs = end_to_end(pure)
        results[pure] = value
        print(f"  {'pure' if pure else 'default':<10} {secs * 1e3:9.2f} ms  boxicity={value}")
    assert results[True] == results[False], "backends disagree on boxicity"
    return 0


if __name__ == "__main__":
    sys.exit(main())
