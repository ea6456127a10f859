#!/usr/bin/env python3
"""Benchmark the compiled combination-search kernel against the pure
fallback on the workloads that dominate the exhaustive solvers.

Run:  python benchmarks/bench_search.py [--trials N]
"""

import argparse
import random
import sys
import time

sys.path.insert(0, "tests")

import oracles  # noqa: E402

from swapbribe import Rule, exact_oracle, random_x3c  # noqa: E402
from swapbribe.options import (  # noqa: E402
    mixed_option_sets,
    rule_mode,
    shift_option_sets,
    swap_option_sets,
)
from swapbribe.reductions import gen_x3c_3approval, gen_x3c_spav_mixed  # noqa: E402
from swapbribe.search import minimize  # noqa: E402

try:
    from swapbribe import _speedups  # noqa: F401
    HAVE_EXT = True
except ImportError:
    HAVE_EXT = False


def swap_workload(rng, trials):
    out = []
    for _ in range(trials):
        inst = oracles.random_swap_instance(
            rng, 5, 5, rule=rng.choice([Rule.plurality(), Rule.veto()]),
            forbidden_prob=0.0, budget=40)
        out.append((inst, swap_option_sets(inst)))
    return out


def shift_workload(rng, trials):
    out = []
    for _ in range(trials):
        inst = oracles.random_shift_instance(rng, 5, 6, rule=Rule.borda(),
                                             all_finite=True, budget=60)
        out.append((inst, shift_option_sets(inst)))
    return out


def maximin_workload(rng, trials):
    out = []
    for _ in range(trials):
        inst = oracles.random_shift_instance(rng, 5, 6, rule=Rule.maximin(),
                                             all_finite=True, budget=60)
        out.append((inst, shift_option_sets(inst)))
    return out


def mixed_workload(rng, trials):
    out = []
    for _ in range(max(1, trials // 4)):
        x3c = random_x3c(2, 4, rng)
        inst = gen_x3c_spav_mixed(x3c).instance
        out.append((inst, mixed_option_sets(inst)))
    return out


def run(workload, force_pure):
    start = time.perf_counter()
    results = []
    for inst, option_sets in workload:
        mode, eff_len, num, den = rule_mode(inst.rule, inst.m)
        results.append(minimize(option_sets, eff_len, inst.m, inst.budget,
                                inst.preferred, mode, num, den,
                                force_pure=force_pure))
    return time.perf_counter() - start, results


def bench_generator_solve(rng, trials):
    """End-to-end wide-field solve (mostly Python-side option building)."""
    instances = []
    for _ in range(max(1, trials // 8)):
        x3c = random_x3c(2, 4, rng)
        instances.append(gen_x3c_3approval(x3c).instance)
    start = time.perf_counter()
    for inst in instances:
        exact_oracle(inst)
    return time.perf_counter() - start, len(instances)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=40)
    args = parser.parse_args()

    print(f"compiled extension available: {HAVE_EXT}")
    workloads = [
        ("plurality/veto swap oracle (m=5, n=5)", swap_workload),
        ("borda shift oracle (m=5, n=6)", shift_workload),
        ("maximin shift oracle (m=5, n=6)", maximin_workload),
        ("sp-av mixed oracle (generated)", mixed_workload),
    ]
    print(f"{'workload':44} {'pure':>9} {'compiled':>9} {'speedup':>8}")
    for name, build in workloads:
        rng = random.Random(17)
        cases = build(rng, args.trials)
        pure_time, pure_results = run(cases, force_pure=True)
        if HAVE_EXT:
            fast_time, fast_results = run(cases, force_pure=False)
            assert pure_results == fast_results, "backends disagreed"
            print(f"{name:44} {pure_time:8.3f}s {fast_time:8.3f}s "
                  f"{pure_time / fast_time:7.1f}x")
        else:
            print(f"{name:44} {pure_time:8.3f}s {'-':>9} {'-':>8}")

    rng = random.Random(17)
    elapsed, count = bench_generator_solve(rng, args.trials)
    print(f"\n3-approval reduction end-to-end solve: {count} instances "
          f"in {elapsed:.3f}s (current backend)")


if __name__ == "__main__":
    main()
