"""Pure-Python option-combination search.

This is the fallback twin of the compiled `_speedups` extension; both
implement exactly the same search and must stay behaviorally identical.
Every voter contributes a list of priced options with additive effect
vectors; the search walks all combinations depth-first in option order,
prunes on the budget and on the best cost found, and returns the first
(hence lexicographically smallest) combination attaining the minimum cost
at which the preferred candidate wins.
"""

from __future__ import annotations

from .errors import CapacityError

MODE_SCORES = 0
MODE_MAXIMIN = 1
MODE_COPELAND = 2


def _wins(acc, m, p, mode, cop_num, cop_den) -> bool:
    if mode == MODE_SCORES:
        sp = acc[p]
        return all(sp >= v for v in acc)
    if m == 1:
        return True
    if mode == MODE_MAXIMIN:
        best_p = min(acc[p * m + j] for j in range(m) if j != p)
        for i in range(m):
            if i == p:
                continue
            si = min(acc[i * m + j] for j in range(m) if j != i)
            if si > best_p:
                return False
        return True
    # Copeland: scores scaled by the denominator of alpha.
    totals = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            a, b = acc[i * m + j], acc[j * m + i]
            if a > b:
                totals[i] += cop_den
            elif b > a:
                totals[j] += cop_den
            else:
                totals[i] += cop_num
                totals[j] += cop_num
    return all(totals[p] >= v for v in totals)


def search_best(costs, offsets, effects, eff_len, m, budget, p, mode,
                cop_num, cop_den, node_cap):
    """Minimize total option cost subject to the leaf winner check.

    Returns (best_cost, choices) or None; raises CapacityError when more
    than `node_cap` partial assignments get explored.
    """
    n = len(offsets) - 1
    for i in range(n):
        if offsets[i] >= offsets[i + 1]:
            return None
    suffix_min = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        cheapest = min(costs[o] for o in range(offsets[i], offsets[i + 1]))
        suffix_min[i] = cheapest + suffix_min[i + 1]

    acc = [0] * eff_len
    choice = [0] * n
    best_cost = -1
    best_choice = None
    nodes = 0

    def descend(depth, cost_so_far):
        nonlocal best_cost, best_choice, nodes
        if depth == n:
            if _wins(acc, m, p, mode, cop_num, cop_den):
                best_cost = cost_so_far
                best_choice = choice[:]
            return
        lo, hi = offsets[depth], offsets[depth + 1]
        tail = suffix_min[depth + 1]
        for o in range(lo, hi):
            c2 = cost_so_far + costs[o]
            if c2 + tail > budget:
                continue
            if best_cost >= 0 and c2 + tail >= best_cost:
                continue
            nodes += 1
            if nodes > node_cap:
                raise CapacityError(
                    f"combination search exceeded its node cap ({node_cap})"
                )
            base = o * eff_len
            for idx in range(eff_len):
                acc[idx] += effects[base + idx]
            choice[depth] = o - lo
            descend(depth + 1, c2)
            for idx in range(eff_len):
                acc[idx] -= effects[base + idx]

    descend(0, 0)
    if best_cost < 0:
        return None
    return best_cost, best_choice
